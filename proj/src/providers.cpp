#include "codemix/providers.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

namespace codemix {

using nlohmann::json;

std::string to_string(VerbVoice voice) {
    switch (voice) {
    case VerbVoice::Active: return "ACTIVE";
    case VerbVoice::Passive: return "PASSIVE";
    case VerbVoice::NotVerb: return "NA";
    }
    return "NA";
}

VerbVoice verb_voice_from_string(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (upper == "ACTIVE") return VerbVoice::Active;
    if (upper == "PASSIVE") return VerbVoice::Passive;
    if (upper == "NA") return VerbVoice::NotVerb;
    throw SchemaError("unrecognized verb voice: " + std::string(text));
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("embedding dimensions differ: " + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()));
    }
    if (a.dim() == 0) throw DimensionMismatch("cannot compare empty embeddings");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < a.dim(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na == 0.0 || nb == 0.0) {
        throw DimensionMismatch("cannot compare zero-magnitude embeddings");
    }
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::string matrix_language_name(const std::string& code) {
    if (code == "hi") return "hindi";
    if (code == "bn") return "bengali";
    if (code == "fr") return "french";
    if (code == "es") return "spanish";
    return code;
}

namespace {

// Single-JSON-output template; the response needs no further extraction.
constexpr const char* kGenericTemplate = R"(For the given English sentence, do the following:
create this RFC8259 compliant json dictionary in the format {"%L_trans": <%L translation>,"Word_Dict":[{"eng":<eng word>,"base_eng":<base form of the english word>,"eng_pos_tag":<English PoS Tag>,"%L":<%L word>,"roman_%L": <three different spellings of roman transliteration for %L word>}]}
by doing PoS tagging of english sentence and then only choosing the words which are either Noun (NN), Adjective (JJ), Adverb (RB), CC, or Interjection (UH).
And then translating the english sentence into %N and then looking for the corresponding meaning of these english words in that. Also, for each %L word, transliterate it into three different spellings that can be seen in twitter.
The output should be RFC8259 compliant json dictionary without any additional words or description

english sentence : %S)";

constexpr const char* kAlternateTemplate = R"(For the given English sentence, do the following:

1. POS Tagging of the sentence
2. For the words which are either Noun (NN), Adjective (JJ), Adverb (RB), CC, or Interjection (UH), create a dictionary Imp_Eng
3. Translate the original English sentence into %N
4. From Imp_Eng, look for the corresponding meaning in %N and look them up in the %N sentence. Create a dictionary %L_eng_dict
5. Transliterate each %N word in %L_eng_dict in Roman in three ways or spellings and add that in the dictionary.
6. Format above as RFC8259 compliant json dictionary, in the format [{"eng": <eng_word>, "pos_tag": <PoS Tag>, "%L": <%L_word>, "roman_%L": <transliterations>}]

English sentence : %S)";

constexpr const char* kHindiSpecificTemplate = R"(For the given English sentence, do the following:
create this RFC8259 compliant json dictionary in the format {"hindi_trans": <hindi translation>,"Word_Dict":[{"eng":<eng word>,"base_eng":<base form of the english word>,"eng_pos_tag":<English PoS Tag>,"hindi":<hindi word>,"base_hin":<base form of the hindi word>,"hin_verb_type":<ACTIVE or PASSIVE or NA>,"roman_hindi": <three different spellings of roman transliteration for hindi word>}]}
by doing PoS tagging of english sentence and then only choosing the words which are either Verb, Noun (NN), Adjective (JJ), Adverb (RB), CC, or Interjection (UH).
And then translating the english sentence into Hindi and then looking for the corresponding meaning of these english words in that.
Also, for the english words that are verbs, check in the hindi sentence, if the respective hindi verb is active or passive, or if it isn't verb then 'NA'
The output should be RFC8259 compliant json dictionary without any additional words or description

english sentence : %S)";

std::string substitute(std::string text, std::string_view needle, std::string_view value) {
    size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), value);
        pos += value.size();
    }
    return text;
}

std::string capitalized(std::string word) {
    if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') word[0] -= 0x20;
    return word;
}

const json* find_field(const json& obj, const char* name) {
    auto it = obj.find(name);
    return it == obj.end() ? nullptr : &*it;
}

std::string require_string(const json& obj, const std::string& name) {
    auto it = obj.find(name);
    if (it == obj.end() || !it->is_string()) {
        throw SchemaError("missing or non-string field \"" + name + "\"");
    }
    return it->get<std::string>();
}

// Models sometimes wrap the JSON in a code fence or prose; extract the
// outermost object before parsing.
std::string extract_json_object(const std::string& raw) {
    const size_t begin = raw.find('{');
    const size_t end = raw.rfind('}');
    if (begin == std::string::npos || end == std::string::npos || end < begin) {
        throw SchemaError("no JSON object found in base-creation response");
    }
    return raw.substr(begin, end - begin + 1);
}

} // namespace

std::string base_creation_prompt(const std::string& english, const LanguagePair& pair,
                                 BaseCreationMode mode) {
    if (mode == BaseCreationMode::HindiSpecific) {
        if (pair.matrix != "hi") {
            throw Error("hindi-specific base creation requires the en-hi pair");
        }
        return substitute(kHindiSpecificTemplate, "%S", english);
    }
    const std::string name = matrix_language_name(pair.matrix);
    std::string prompt = substitute(kGenericTemplate, "%L", name);
    prompt = substitute(prompt, "%N", capitalized(name));
    return substitute(prompt, "%S", english);
}

std::string alternate_base_creation_prompt(const std::string& english,
                                           const LanguagePair& pair) {
    const std::string name = matrix_language_name(pair.matrix);
    std::string prompt = substitute(kAlternateTemplate, "%L", name);
    prompt = substitute(prompt, "%N", capitalized(name));
    return substitute(prompt, "%S", english);
}

BaseCreation parse_base_creation(const std::string& raw, const LanguagePair& pair,
                                 BaseCreationMode mode) {
    if (raw.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw EmptyResponse("base-creation response is empty");
    }
    json doc;
    try {
        doc = json::parse(extract_json_object(raw));
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("base-creation response is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("base-creation response is not a JSON object");

    const std::string lang = matrix_language_name(pair.matrix);
    const std::string trans_key = lang + "_trans";
    const std::string word_key = lang;
    const std::string roman_key = "roman_" + lang;

    BaseCreation base;
    base.matrix_sentence = normalize_composed(require_string(doc, trans_key));
    if (base.matrix_sentence.empty()) throw SchemaError("empty matrix translation");

    const json* word_dict = find_field(doc, "Word_Dict");
    if (word_dict == nullptr || !word_dict->is_array()) {
        throw SchemaError("missing or non-array field \"Word_Dict\"");
    }

    for (const json& item : *word_dict) {
        if (!item.is_object()) throw SchemaError("Word_Dict element is not an object");
        WordEntry entry;
        entry.eng = require_string(item, "eng");
        entry.base_eng = require_string(item, "base_eng");
        entry.pos_tag = require_string(item, "eng_pos_tag");
        entry.matrix_word = normalize_composed(require_string(item, word_key));
        if (entry.eng.empty() || entry.matrix_word.empty()) {
            throw SchemaError("empty word in Word_Dict entry");
        }

        const json* variants = find_field(item, roman_key.c_str());
        if (variants == nullptr || !variants->is_array() || variants->size() != 3) {
            throw SchemaError("field \"" + roman_key + "\" must be an array of 3 spellings");
        }
        for (const json& v : *variants) {
            if (!v.is_string()) throw SchemaError("transliteration variant is not a string");
            NormalizedSentence norm = preprocess(v.get<std::string>());
            if (norm.tokens.size() != 1) {
                throw SchemaError("transliteration variant is not a single word: " +
                                  v.get<std::string>());
            }
            entry.roman_variants.push_back(norm.text);
        }

        if (mode == BaseCreationMode::HindiSpecific) {
            entry.base_matrix = normalize_composed(require_string(item, "base_hin"));
            entry.verb_voice = verb_voice_from_string(require_string(item, "hin_verb_type"));
        }

        // A matrix word the model failed to ground in its own translation is
        // kept but flagged; the generation step skips it.
        entry.anchored = base.matrix_sentence.find(entry.matrix_word) != std::string::npos;
        base.entries.push_back(std::move(entry));
    }
    return base;
}

BaseCreation BaseCreator::base_create(const std::string& english, const LanguagePair& pair,
                                      BaseCreationMode mode) {
    if (english.empty()) throw EmptyInput("base_create requires a non-empty sentence");
    if (mode == BaseCreationMode::HindiSpecific && pair.matrix != "hi") {
        throw Error("hindi-specific base creation requires the en-hi pair");
    }
    try {
        return parse_base_creation(raw_response(english, pair, mode), pair, mode);
    } catch (const SchemaError&) {
        // One retry on a malformed response, then fail loudly.
        return parse_base_creation(raw_response(english, pair, mode), pair, mode);
    }
}

} // namespace codemix
