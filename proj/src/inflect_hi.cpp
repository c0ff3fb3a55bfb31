#include "codemix/inflect_hi.hpp"

#include <algorithm>
#include <fstream>

namespace codemix {

using nlohmann::json;

namespace {

bool contains(const std::vector<std::string>& list, const std::string& value) {
    return std::find(list.begin(), list.end(), value) != list.end();
}

InflectionRuleTable make_builtin() {
    InflectionRuleTable t;
    t.version = 1;

    t.infinitive_suffixes = {"ना"};
    t.clause_end_markers = {"और", "।"};
    t.infinitive_end_added = "करना";

    t.participle_suffixes = {"ने", "नी", "ता", "ती", "ते", "ो"};
    t.participle_passive_stem = "हो";
    t.participle_active_stem = "कर";
    t.participle_bare_suffixes = {"ो"};

    t.bare_added = "कर";
    t.bare_skip_next = {"कर", "करें", "करता", "करती", "करते", "करो", "हुआ", "हुए", "हुई"};

    t.perfective_suffixes = {"ा", "े", "या"};
    t.perfective_skip_next = {"हुआ", "हुए"};
    t.perfective_passive = {{"ा", "हुआ"}, {"या", "हुआ"}, {"े", "हुए"}};
    t.perfective_passive_light_verbs = {"गया", "गई", "गए"};
    t.perfective_stem = "किय";
    t.perfective_irregular = {{"या", "किया"}};

    // The bare matra and its anusvara form both surface in imperatives
    // ("चुनें" against base "चुनना" leaves "ें").
    t.imperative_suffixes = {"ए", "े", "ें", "एं"};
    t.imperative_added = "करें";

    t.feminine_suffixes = {"ी", "ई"};
    t.feminine_skip_next = {"हुई", "की"};
    t.feminine_passive_added = "हुई";
    t.feminine_added = "की";

    t.stoplist = {"this", "is",   "a",    "am",   "on",  "in",  "are", "be",
                  "the",  "was", "were", "been", "have", "has", "had"};
    t.optional_stoplist = {"say", "said", "go", "went", "gone", "come", "came", "tell", "told"};
    return t;
}

std::string normalized_core(const std::string& token) {
    return normalize_composed(split_token_affixes(token).core);
}

} // namespace

const InflectionRuleTable& InflectionRuleTable::builtin() {
    static const InflectionRuleTable table = make_builtin();
    return table;
}

InflectionRuleTable InflectionRuleTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open inflection rule table: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw FormatError("inflection rule table is not valid JSON: " + std::string(e.what()));
    }
    return from_json(doc);
}

InflectionRuleTable InflectionRuleTable::from_json(const json& doc) {
    InflectionRuleTable t;
    try {
        t.version = doc.at("version").get<int>();
        const json& rules = doc.at("rules");

        const json& r1 = rules.at("infinitive");
        t.infinitive_suffixes = r1.at("suffixes").get<std::vector<std::string>>();
        t.clause_end_markers = r1.at("clause_end_markers").get<std::vector<std::string>>();
        t.infinitive_end_added = r1.at("added_at_clause_end").get<std::string>();

        const json& r2 = rules.at("participle");
        t.participle_suffixes = r2.at("suffixes").get<std::vector<std::string>>();
        t.participle_passive_stem = r2.at("passive_stem").get<std::string>();
        t.participle_active_stem = r2.at("active_stem").get<std::string>();
        t.participle_bare_suffixes = r2.at("bare_suffixes").get<std::vector<std::string>>();

        const json& r3 = rules.at("bare");
        t.bare_added = r3.at("added").get<std::string>();
        t.bare_skip_next = r3.at("skip_when_next").get<std::vector<std::string>>();

        const json& r4 = rules.at("perfective");
        t.perfective_suffixes = r4.at("suffixes").get<std::vector<std::string>>();
        t.perfective_skip_next = r4.at("skip_when_next").get<std::vector<std::string>>();
        t.perfective_passive =
            r4.at("passive_added").get<std::map<std::string, std::string>>();
        t.perfective_passive_light_verbs =
            r4.at("passive_light_verbs").get<std::vector<std::string>>();
        t.perfective_stem = r4.at("stem").get<std::string>();
        t.perfective_irregular =
            r4.at("irregular").get<std::map<std::string, std::string>>();

        const json& r5 = rules.at("imperative");
        t.imperative_suffixes = r5.at("suffixes").get<std::vector<std::string>>();
        t.imperative_added = r5.at("added").get<std::string>();

        const json& r6 = rules.at("feminine");
        t.feminine_suffixes = r6.at("suffixes").get<std::vector<std::string>>();
        t.feminine_skip_next = r6.at("skip_when_next").get<std::vector<std::string>>();
        t.feminine_passive_added = r6.at("passive_added").get<std::string>();
        t.feminine_added = r6.at("added").get<std::string>();

        t.stoplist = doc.at("cleaning").at("stoplist").get<std::vector<std::string>>();
        t.optional_stoplist =
            doc.at("cleaning").at("optional_stoplist").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw FormatError("inflection rule table is missing fields: " + std::string(e.what()));
    }
    return t;
}

json InflectionRuleTable::to_json() const {
    return {{"version", version},
            {"rules",
             {{"infinitive",
               {{"suffixes", infinitive_suffixes},
                {"clause_end_markers", clause_end_markers},
                {"added_at_clause_end", infinitive_end_added}}},
              {"participle",
               {{"suffixes", participle_suffixes},
                {"passive_stem", participle_passive_stem},
                {"active_stem", participle_active_stem},
                {"bare_suffixes", participle_bare_suffixes}}},
              {"bare", {{"added", bare_added}, {"skip_when_next", bare_skip_next}}},
              {"perfective",
               {{"suffixes", perfective_suffixes},
                {"skip_when_next", perfective_skip_next},
                {"passive_added", perfective_passive},
                {"passive_light_verbs", perfective_passive_light_verbs},
                {"stem", perfective_stem},
                {"irregular", perfective_irregular}}},
              {"imperative", {{"suffixes", imperative_suffixes}, {"added", imperative_added}}},
              {"feminine",
               {{"suffixes", feminine_suffixes},
                {"skip_when_next", feminine_skip_next},
                {"passive_added", feminine_passive_added},
                {"added", feminine_added}}}}},
            {"cleaning", {{"stoplist", stoplist}, {"optional_stoplist", optional_stoplist}}}};
}

std::vector<WordEntry> clean_entries(std::vector<WordEntry> entries, const CleanOptions& options,
                                     const InflectionRuleTable& rules) {
    std::erase_if(entries, [&](const WordEntry& e) {
        const std::string lowered = to_lower(e.eng);
        if (contains(rules.stoplist, lowered)) return true;
        if (options.remove_optional_words && contains(rules.optional_stoplist, lowered)) {
            return true;
        }
        return !tag_allowed(e.pos_tag, /*include_verbs=*/true);
    });
    return entries;
}

SuffixAnalysis analyze_suffix(const std::string& matrix_word, const std::string& base_matrix) {
    if (matrix_word.empty() || base_matrix.empty()) {
        throw EmptyInput("suffix analysis requires non-empty words");
    }
    const std::string word = normalize_composed(matrix_word);
    const std::string base = normalize_composed(base_matrix);
    static const std::string kInfinitiveMarker = "ना";

    SuffixAnalysis analysis;
    if (!base.ends_with(kInfinitiveMarker)) {
        analysis.base_ends_na = false;
        analysis.stem = base;
        return analysis;
    }
    analysis.base_ends_na = true;
    analysis.stem = base.substr(0, base.size() - kInfinitiveMarker.size());
    if (!word.starts_with(analysis.stem)) {
        throw StemMismatch("base stem \"" + analysis.stem + "\" is not a prefix of \"" + word +
                           "\"");
    }
    analysis.suffix = word.substr(analysis.stem.size());
    return analysis;
}

std::string added_word(const SuffixAnalysis& analysis, VerbVoice voice,
                       const std::optional<std::string>& next_word, bool at_sentence_end,
                       const InflectionRuleTable& rules) {
    if (!analysis.base_ends_na) return "";
    const std::string suffix = normalize_composed(analysis.suffix);
    const std::string next = next_word ? normalize_composed(*next_word) : std::string();
    const bool passive = voice == VerbVoice::Passive;

    // Rules are consulted in listed order; the first suffix set containing
    // the suffix wins.
    if (contains(rules.infinitive_suffixes, suffix)) {
        if (at_sentence_end || (!next.empty() && contains(rules.clause_end_markers, next))) {
            return rules.infinitive_end_added;
        }
        return "";
    }
    if (contains(rules.participle_suffixes, suffix)) {
        if (passive) {
            if (contains(rules.participle_bare_suffixes, suffix)) {
                return rules.participle_passive_stem;
            }
            return rules.participle_passive_stem + suffix;
        }
        return rules.participle_active_stem + suffix;
    }
    if (suffix.empty()) {
        if (!next.empty() && contains(rules.bare_skip_next, next)) return "";
        return rules.bare_added;
    }
    if (contains(rules.perfective_suffixes, suffix)) {
        if (!next.empty() && contains(rules.perfective_skip_next, next)) return "";
        auto composed = [&] {
            auto it = rules.perfective_irregular.find(suffix);
            return it != rules.perfective_irregular.end() ? it->second
                                                          : rules.perfective_stem + suffix;
        };
        if (passive) {
            if (!next.empty() && contains(rules.perfective_passive_light_verbs, next)) {
                return composed();
            }
            auto it = rules.perfective_passive.find(suffix);
            if (it != rules.perfective_passive.end()) return it->second;
        }
        return composed();
    }
    if (contains(rules.imperative_suffixes, suffix)) {
        return rules.imperative_added;
    }
    if (contains(rules.feminine_suffixes, suffix)) {
        if (!next.empty() && contains(rules.feminine_skip_next, next)) return "";
        if (passive) return rules.feminine_passive_added;
        return rules.feminine_added;
    }
    throw UnhandledSuffix("verb suffix outside every rule set: \"" + suffix + "\"");
}

std::string apply_hindi_inflection(const std::string& matrix_sentence,
                                   const ReplacementPlan& plan,
                                   const InflectionRuleTable& rules,
                                   std::vector<std::string>* warnings) {
    const std::vector<std::string> tokens = split_whitespace(matrix_sentence);
    const std::vector<ResolvedAnchor> anchors =
        resolve_anchors(tokens, plan, AnchorSide::MatrixWord, warnings);

    std::vector<std::string> replacements;
    replacements.reserve(anchors.size());
    for (const ResolvedAnchor& anchor : anchors) {
        const PlanDecision& d = plan.decisions[anchor.decision_index];
        if (!d.entry.is_verb() || !d.entry.base_matrix) {
            replacements.push_back(d.entry.eng);
            continue;
        }

        const size_t last_index = anchor.span.first + anchor.span.count - 1;
        const TokenAffixes own = split_token_affixes(tokens[last_index]);
        bool at_end = last_index + 1 >= tokens.size() ||
                      own.trailing.find("।") != std::string::npos;
        std::optional<std::string> next;
        if (last_index + 1 < tokens.size()) {
            const std::string core = normalized_core(tokens[last_index + 1]);
            if (core.empty()) {
                at_end = true; // a bare punctuation token closes the clause
            } else {
                next = core;
            }
        }

        std::string added;
        try {
            const SuffixAnalysis analysis =
                analyze_suffix(d.entry.matrix_word, *d.entry.base_matrix);
            added = added_word(analysis, *d.entry.verb_voice, next, at_end, rules);
            if (warnings && analysis.suffix == "े") {
                warnings->push_back("suffix \"े\" of \"" + d.entry.matrix_word +
                                    "\" matches two rule sets; resolved by rule order");
            }
        } catch (const UnhandledSuffix& e) {
            if (warnings) warnings->push_back(std::string(e.what()) + "; replaced bare");
        } catch (const StemMismatch& e) {
            if (warnings) warnings->push_back(std::string(e.what()) + "; replaced bare");
        }
        replacements.push_back(added.empty() ? d.entry.base_eng
                                             : d.entry.base_eng + " " + added);
    }
    return substitute_spans(matrix_sentence, tokens, anchors, replacements);
}

} // namespace codemix
