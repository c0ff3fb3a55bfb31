#include "codemix/cg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "codemix/inflect_hi.hpp"

namespace codemix {

using nlohmann::json;

int replacement_budget(CodeMixDegree cmd, int n) {
    if (n < 0) throw Error("replacement budget requires n >= 0");
    return static_cast<int>(std::floor(cmd.value() * n));
}

namespace {

bool score_before(const PlanDecision& a, const PlanDecision& b) {
    if (a.score != b.score) return a.score > b.score; // infinite sorts first
    return a.position < b.position;
}

std::string match_key(const std::string& word) {
    return to_lower(normalize_composed(word));
}

const std::string& anchor_word(const PlanDecision& d, AnchorSide side) {
    return side == AnchorSide::MatrixWord ? d.entry.matrix_word : d.entry.eng;
}

} // namespace

ReplacementPlan plan_replacements(const std::vector<ScoredEntry>& entries, CodeMixDegree cmd) {
    ReplacementPlan plan;
    plan.decisions.reserve(entries.size());
    for (const ScoredEntry& scored : entries) {
        PlanDecision d;
        d.entry = scored.entry;
        d.score = scored.score;
        d.position = scored.position;
        plan.decisions.push_back(std::move(d));
    }

    // Occurrence ordinals in sentence order: the k-th entry naming the same
    // matrix word binds its k-th occurrence.
    {
        std::vector<size_t> order(plan.decisions.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return plan.decisions[a].position < plan.decisions[b].position;
        });
        std::map<std::string, int> seen;
        for (size_t i : order) {
            plan.decisions[i].anchor = seen[match_key(plan.decisions[i].entry.matrix_word)]++;
        }
    }

    std::sort(plan.decisions.begin(), plan.decisions.end(), score_before);
    plan.budget = replacement_budget(cmd, static_cast<int>(plan.decisions.size()));

    if (cmd.value() > 0.0) {
        for (PlanDecision& d : plan.decisions) {
            if (d.score.is_infinite()) {
                d.replace = true;
                ++plan.n_replaced;
            } else if (plan.n_replaced < plan.budget) {
                d.replace = true;
                ++plan.n_replaced;
            } else {
                break;
            }
        }
    }
    return plan;
}

std::vector<ResolvedAnchor> resolve_anchors(const std::vector<std::string>& tokens,
                                            const ReplacementPlan& plan, AnchorSide side,
                                            std::vector<std::string>* warnings) {
    std::vector<std::string> cores;
    cores.reserve(tokens.size());
    for (const std::string& t : tokens) {
        cores.push_back(match_key(split_token_affixes(t).core));
    }
    std::vector<bool> bound(tokens.size(), false);

    // Process in sentence order so ordinal binding is stable.
    std::vector<size_t> order;
    for (size_t i = 0; i < plan.decisions.size(); ++i) {
        if (plan.decisions[i].replace) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return plan.decisions[a].position < plan.decisions[b].position;
    });

    std::map<std::string, int> english_ordinals;
    std::vector<ResolvedAnchor> anchors;
    for (size_t index : order) {
        const PlanDecision& d = plan.decisions[index];
        if (side == AnchorSide::MatrixWord && !d.entry.anchored) {
            if (warnings) {
                warnings->push_back("skipped unanchored entry: " + d.entry.eng);
            }
            continue;
        }
        std::vector<std::string> word_tokens;
        for (const std::string& t : split_whitespace(anchor_word(d, side))) {
            word_tokens.push_back(match_key(t));
        }
        if (word_tokens.empty()) continue;

        std::vector<size_t> occurrences;
        for (size_t i = 0; i + word_tokens.size() <= cores.size(); ++i) {
            bool match = true;
            for (size_t k = 0; k < word_tokens.size(); ++k) {
                if (cores[i + k] != word_tokens[k]) {
                    match = false;
                    break;
                }
            }
            if (match) occurrences.push_back(i);
        }

        auto is_free = [&](size_t start) {
            for (size_t k = 0; k < word_tokens.size(); ++k) {
                if (bound[start + k]) return false;
            }
            return true;
        };

        const int ordinal = side == AnchorSide::MatrixWord
                                ? d.anchor
                                : english_ordinals[match_key(d.entry.eng)]++;
        size_t chosen = occurrences.size();
        if (ordinal >= 0 && static_cast<size_t>(ordinal) < occurrences.size() &&
            is_free(occurrences[ordinal])) {
            chosen = static_cast<size_t>(ordinal);
        } else {
            for (size_t i = 0; i < occurrences.size(); ++i) {
                if (is_free(occurrences[i])) {
                    chosen = i;
                    break;
                }
            }
        }
        if (chosen == occurrences.size()) {
            if (warnings) {
                warnings->push_back("anchor not found for \"" + anchor_word(d, side) +
                                    "\"; entry skipped");
            }
            continue;
        }
        const size_t start = occurrences[chosen];
        for (size_t k = 0; k < word_tokens.size(); ++k) bound[start + k] = true;
        anchors.push_back({index, {start, word_tokens.size()}});
    }
    return anchors;
}

std::string substitute_spans(const std::string& sentence,
                             const std::vector<std::string>& tokens,
                             const std::vector<ResolvedAnchor>& anchors,
                             const std::vector<std::string>& replacements) {
    if (anchors.empty()) return sentence;
    std::vector<std::string> out = tokens;
    // Apply right-to-left so span erasure does not shift earlier indices.
    std::vector<size_t> order(anchors.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return anchors[a].span.first > anchors[b].span.first;
    });
    for (size_t i : order) {
        const TokenSpan span = anchors[i].span;
        const TokenAffixes first = split_token_affixes(out[span.first]);
        const TokenAffixes last = split_token_affixes(out[span.first + span.count - 1]);
        std::string replaced = first.leading + replacements[i] + last.trailing;
        out.erase(out.begin() + static_cast<long>(span.first + 1),
                  out.begin() + static_cast<long>(span.first + span.count));
        out[span.first] = std::move(replaced);
    }
    std::string joined;
    for (const std::string& t : out) {
        if (!joined.empty()) joined.push_back(' ');
        joined += t;
    }
    return joined;
}

namespace {

bool token_is_roman(const std::string& token) {
    for (char32_t cp : utf8::decode(token)) {
        if (!is_roman_cp(cp)) return false;
    }
    return true;
}

/// Transliterate only the matrix-script stretches of a mixed sentence;
/// embedded English words pass through verbatim.
std::string romanize_mixed(const std::string& mixed, const LanguagePair& pair,
                           const ProviderSet& providers) {
    const std::vector<std::string> tokens = split_whitespace(mixed);
    std::string out;
    std::vector<std::string> run;
    auto flush_run = [&] {
        if (run.empty()) return;
        std::string segment;
        for (const std::string& t : run) {
            if (!segment.empty()) segment.push_back(' ');
            segment += t;
        }
        run.clear();
        if (!out.empty()) out.push_back(' ');
        out += providers.transliterator->transliterate(segment, pair,
                                                       TranslitDirection::ToRoman);
    };
    for (const std::string& token : tokens) {
        if (token_is_roman(token)) {
            flush_run();
            if (!out.empty()) out.push_back(' ');
            out += token;
        } else {
            run.push_back(token);
        }
    }
    flush_run();
    return out;
}

std::vector<ScoredEntry> score_entries(const std::vector<WordEntry>& entries,
                                       const FrequencyVocab& vocab,
                                       const GenerateOptions& options) {
    std::vector<ScoredEntry> scored;
    scored.reserve(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
        ScoredEntry s;
        s.entry = entries[i];
        s.score = options.no_vocab
                      ? Score::infinite()
                      : score_entry(entries[i], vocab, options.score_base_form);
        s.position = static_cast<int>(i);
        scored.push_back(std::move(s));
    }
    return scored;
}

} // namespace

std::string apply_plan(const std::string& matrix_sentence, const ReplacementPlan& plan,
                       std::vector<std::string>* warnings) {
    const std::vector<std::string> tokens = split_whitespace(matrix_sentence);
    const std::vector<ResolvedAnchor> anchors =
        resolve_anchors(tokens, plan, AnchorSide::MatrixWord, warnings);
    std::vector<std::string> replacements;
    replacements.reserve(anchors.size());
    for (const ResolvedAnchor& a : anchors) {
        replacements.push_back(plan.decisions[a.decision_index].entry.eng);
    }
    return substitute_spans(matrix_sentence, tokens, anchors, replacements);
}

bool tag_allowed(std::string_view pos_tag, bool include_verbs) {
    static constexpr std::string_view kPrefixes[] = {"NN", "JJ", "RB", "CC", "UH"};
    for (std::string_view prefix : kPrefixes) {
        if (pos_tag.starts_with(prefix)) return true;
    }
    return include_verbs && pos_tag.starts_with("VB");
}

std::vector<WordEntry> filter_entries_by_tag(std::vector<WordEntry> entries,
                                             bool include_verbs) {
    std::erase_if(entries,
                  [&](const WordEntry& e) { return !tag_allowed(e.pos_tag, include_verbs); });
    return entries;
}

std::string best_variant(const WordEntry& entry, const FrequencyVocab& vocab) {
    if (entry.roman_variants.empty()) {
        throw Error("entry has no transliteration variants: " + entry.eng);
    }
    size_t best = 0;
    std::uint64_t best_count = vocab.count(preprocess(entry.roman_variants[0]).text);
    for (size_t i = 1; i < entry.roman_variants.size(); ++i) {
        const std::uint64_t count = vocab.count(preprocess(entry.roman_variants[i]).text);
        if (count > best_count) {
            best = i;
            best_count = count;
        }
    }
    return entry.roman_variants[best];
}

CodeMixedSentence generate(const std::string& english, const LanguagePair& pair,
                           CodeMixDegree cmd, const FrequencyVocab& vocab,
                           const ProviderSet& providers, const GenerateOptions& options) {
    if (english.empty()) throw EmptyInput("generate requires a non-empty sentence");

    BaseCreation base = providers.base_creator->base_create(english, pair, options.mode);
    std::vector<WordEntry> entries =
        options.mode == BaseCreationMode::HindiSpecific
            ? clean_entries(std::move(base.entries))
            : filter_entries_by_tag(std::move(base.entries), /*include_verbs=*/false);

    CodeMixedSentence result;
    result.pair = pair;
    result.cmd = cmd.value();
    result.matrix_sentence = base.matrix_sentence;
    result.plan = plan_replacements(score_entries(entries, vocab, options), cmd);

    const std::string mixed =
        options.mode == BaseCreationMode::HindiSpecific
            ? apply_hindi_inflection(base.matrix_sentence, result.plan,
                                     InflectionRuleTable::builtin(), &result.warnings)
            : apply_plan(base.matrix_sentence, result.plan, &result.warnings);

    result.text = pair.non_roman() ? romanize_mixed(mixed, pair, providers) : mixed;
    return result;
}

CodeMixedSentence generate_english_matrix(const std::string& english, const LanguagePair& pair,
                                          CodeMixDegree cmd, const FrequencyVocab& vocab,
                                          const ProviderSet& providers,
                                          const GenerateOptions& options) {
    if (english.empty()) throw EmptyInput("generate requires a non-empty sentence");

    BaseCreation base =
        providers.base_creator->base_create(english, pair, BaseCreationMode::Generic);
    std::vector<WordEntry> entries =
        filter_entries_by_tag(std::move(base.entries), /*include_verbs=*/false);

    CodeMixedSentence result;
    result.pair = pair;
    result.cmd = cmd.value();
    result.matrix_sentence = base.matrix_sentence;

    ReplacementPlan plan;
    for (ScoredEntry& s : score_entries(entries, vocab, options)) {
        PlanDecision d;
        d.entry = std::move(s.entry);
        d.score = s.score;
        d.position = s.position;
        plan.decisions.push_back(std::move(d));
    }
    plan.budget = replacement_budget(cmd, static_cast<int>(plan.decisions.size()));

    // Lowest scores first: a rare English word with a common matrix-language
    // counterpart is switched earliest. No infinite-first rule here;
    // infinite scores go last.
    std::vector<size_t> ascending(plan.decisions.size());
    std::iota(ascending.begin(), ascending.end(), 0);
    std::sort(ascending.begin(), ascending.end(), [&](size_t a, size_t b) {
        if (plan.decisions[a].score != plan.decisions[b].score) {
            return plan.decisions[a].score < plan.decisions[b].score;
        }
        return plan.decisions[a].position < plan.decisions[b].position;
    });
    for (int i = 0; i < plan.budget && i < static_cast<int>(ascending.size()); ++i) {
        plan.decisions[ascending[i]].replace = true;
        ++plan.n_replaced;
    }
    std::sort(plan.decisions.begin(), plan.decisions.end(), score_before);
    result.plan = plan;

    const std::vector<std::string> tokens = split_whitespace(english);
    const std::vector<ResolvedAnchor> anchors =
        resolve_anchors(tokens, result.plan, AnchorSide::EnglishWord, &result.warnings);
    std::vector<std::string> replacements;
    replacements.reserve(anchors.size());
    for (const ResolvedAnchor& a : anchors) {
        replacements.push_back(best_variant(result.plan.decisions[a.decision_index].entry, vocab));
    }
    result.text = substitute_spans(english, tokens, anchors, replacements);
    return result;
}

json generation_report(const std::string& input, const CodeMixedSentence& result) {
    json decisions = json::array();
    for (const PlanDecision& d : result.plan.decisions) {
        decisions.push_back({{"eng", d.entry.eng},
                             {"matrix_word", d.entry.matrix_word},
                             {"pos_tag", d.entry.pos_tag},
                             {"score", d.score.is_infinite() ? json("inf") : json(d.score.value)},
                             {"replace", d.replace},
                             {"position", d.position},
                             {"anchor", d.anchor},
                             {"anchored", d.entry.anchored}});
    }
    return {{"input", input},
            {"cmd", result.cmd},
            {"pair", result.pair.code()},
            {"matrix_sentence", result.matrix_sentence},
            {"decisions", decisions},
            {"output", result.text},
            {"budget", result.plan.budget},
            {"n_replaced", result.plan.n_replaced},
            {"warnings", result.warnings}};
}

} // namespace codemix
