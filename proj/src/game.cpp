#include "codemix/game.hpp"

#include <cmath>
#include <fstream>

namespace codemix {

using nlohmann::json;

std::optional<std::string> HomonymDictionary::lookup(const std::string& token) const {
    auto it = entries.find(to_lower(normalize_composed(token)));
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

HomonymDictionary HomonymDictionary::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open homonym dictionary: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw FormatError("homonym dictionary is not valid JSON: " + std::string(e.what()));
    }
    HomonymDictionary dict;
    try {
        dict.pair = LanguagePair::parse(doc.at("pair").get<std::string>());
        for (const auto& [word, replacement] : doc.at("entries").items()) {
            const NormalizedSentence key = preprocess(word);
            if (key.tokens.size() != 1) {
                throw FormatError("homonym key is not a single token: " + word);
            }
            dict.entries[key.text] = normalize_composed(replacement.get<std::string>());
        }
    } catch (const json::exception& e) {
        throw FormatError("homonym dictionary is malformed: " + std::string(e.what()));
    }
    return dict;
}

void HomonymDictionary::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write homonym dictionary: " + path.string());
    json entries_doc = json::object();
    for (const auto& [word, replacement] : entries) entries_doc[word] = replacement;
    json doc = {{"pair", pair.code()}, {"entries", entries_doc}};
    out << doc.dump(2) << '\n';
}

HomonymDictionary HomonymDictionary::defaults_for(const LanguagePair& pair) {
    HomonymDictionary dict;
    dict.pair = pair;
    if (pair.matrix == "hi") dict.entries["par"] = "पर";
    if (pair.matrix == "es") dict.entries["soy"] = "am";
    return dict;
}

std::string to_string(Gate gate) {
    switch (gate) {
    case Gate::Ok: return "ok";
    case Gate::NonRoman: return "non_roman";
    case Gate::NotCodeMixed: return "not_code_mixed";
    }
    return "ok";
}

double GameTrace::display() const { return std::round(q * 100.0 * 100.0) / 100.0; }

PosTagAcquisition acquire_pos_tags(const NormalizedSentence& candidate,
                                   const LanguagePair& pair, const ProviderSet& providers) {
    PosTagAcquisition result;
    std::string round_trip;
    if (pair.non_roman()) {
        const std::string matrix_script = providers.transliterator->transliterate(
            candidate.text, pair, TranslitDirection::ToMatrixScript);
        round_trip = providers.translator->translate(matrix_script, pair.matrix, pair.embedded);
    } else {
        round_trip = providers.translator->translate(candidate.text, pair.matrix, pair.embedded);
    }
    const NormalizedSentence temp = preprocess(round_trip);
    result.temp_translation = temp.text;

    std::map<std::string, std::string> temp_tags;
    for (const auto& [token, tag] : providers.pos_tagger->pos_tag(temp.text)) {
        temp_tags.emplace(preprocess(token).text, tag); // first occurrence wins
    }
    for (const std::string& token : candidate.tokens) {
        auto it = temp_tags.find(token);
        if (it != temp_tags.end()) result.pos_map[token] = it->second;
    }
    return result;
}

WordReplacement replace_words(const NormalizedSentence& candidate,
                              const std::map<std::string, std::string>& pos_map,
                              const HomonymDictionary& homonyms, const LanguagePair& pair,
                              const ProviderSet& providers) {
    WordReplacement result;
    result.first_translation.reserve(candidate.tokens.size());
    for (const std::string& token : candidate.tokens) {
        // Homonyms resolve before language identification.
        if (auto replacement = homonyms.lookup(token)) {
            result.first_translation.push_back(*replacement);
            continue;
        }
        if (providers.lid->lid(token, pair) == LidLabel::English) {
            ++result.english_detected;
            auto tagged = pos_map.find(token);
            const std::string translated =
                tagged != pos_map.end()
                    ? providers.word_translator->translate_word_pos(token, tagged->second,
                                                                    pair.embedded, pair.matrix)
                    : providers.word_translator->translate_word(token, pair.embedded,
                                                                pair.matrix);
            result.first_translation.push_back(translated);
        } else {
            result.first_translation.push_back(token);
        }
    }
    return result;
}

std::string reconstruct(const std::vector<std::string>& first_translation,
                        const LanguagePair& pair, const ProviderSet& providers) {
    if (first_translation.empty()) {
        throw EmptyInput("reconstruction requires a non-empty token list");
    }
    std::string joined;
    for (const std::string& token : first_translation) {
        if (!joined.empty()) joined.push_back(' ');
        joined += token;
    }
    const NormalizedSentence mixed = preprocess(joined);
    std::string english;
    if (pair.non_roman()) {
        const std::string matrix_script = providers.transliterator->transliterate(
            mixed.text, pair, TranslitDirection::ToMatrixScript);
        english = providers.translator->translate(matrix_script, pair.matrix, pair.embedded);
    } else {
        english = providers.translator->translate(mixed.text, pair.matrix, pair.embedded);
    }
    return preprocess(english).text;
}

GameTrace evaluate(const std::string& reference, const std::string& candidate,
                   const LanguagePair& pair, const ProviderSet& providers,
                   const HomonymDictionary& homonyms, const GameOptions& options) {
    if (reference.empty() || candidate.empty()) {
        throw EmptyInput("evaluate requires non-empty reference and candidate");
    }
    GameTrace trace;
    trace.reference = preprocess(reference);
    trace.candidate = preprocess(candidate);
    if (trace.reference.empty() || trace.candidate.empty()) {
        throw EmptyInput("reference and candidate must contain words after normalization");
    }

    // Cheapest gate first: a candidate in the matrix script scores zero
    // before any provider is touched.
    if (has_non_roman(trace.candidate)) {
        trace.gate = Gate::NonRoman;
        trace.q = 0.0;
        return trace;
    }

    std::string stage = "acquire_pos_tags";
    try {
        PosTagAcquisition tags = acquire_pos_tags(trace.candidate, pair, providers);
        trace.temp_translation = std::move(tags.temp_translation);
        trace.pos_map = std::move(tags.pos_map);

        stage = "replace_words";
        WordReplacement replaced =
            replace_words(trace.candidate, trace.pos_map, homonyms, pair, providers);
        trace.first_translation = std::move(replaced.first_translation);
        trace.english_detected = replaced.english_detected;

        const int token_count = static_cast<int>(trace.candidate.tokens.size());
        if (options.gate_mode == GateMode::Strict &&
            !(trace.english_detected > 0 && trace.english_detected < token_count)) {
            trace.gate = Gate::NotCodeMixed;
            trace.q = 0.0;
            return trace;
        }

        stage = "reconstruct";
        trace.reconstruction = reconstruct(trace.first_translation, pair, providers);

        stage = "similarity";
        std::string compared = trace.reconstruction;
        if (options.similarity_arg == SimilarityArg::FirstTranslation) {
            std::string joined;
            for (const std::string& token : trace.first_translation) {
                if (!joined.empty()) joined.push_back(' ');
                joined += token;
            }
            compared = preprocess(joined).text;
        }
        const EmbeddingVector ref_vec = providers.embedder->embed(trace.reference.text);
        const EmbeddingVector cand_vec = providers.embedder->embed(compared);
        trace.q = cosine_similarity(ref_vec, cand_vec);
    } catch (const ProviderError& e) {
        throw EvaluationError(stage, trace, e.what());
    }
    return trace;
}

json trace_report(const GameTrace& trace) {
    return {{"reference", trace.reference.text},
            {"candidate", trace.candidate.text},
            {"temp_translation", trace.temp_translation},
            {"pos_map", trace.pos_map},
            {"first_translation", trace.first_translation},
            {"reconstruction", trace.reconstruction},
            {"english_detected", trace.english_detected},
            {"q", trace.q},
            {"display", trace.display()},
            {"gate", to_string(trace.gate)}};
}

} // namespace codemix
