#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codemix/core.hpp"
#include "codemix/errors.hpp"

namespace codemix {

enum class VerbVoice { Active, Passive, NotVerb };

std::string to_string(VerbVoice voice);
VerbVoice verb_voice_from_string(std::string_view text);

/// One replaceable word from base creation: the English word, its tag, the
/// matrix-language word at the switch point, and that word's Roman spelling
/// variants. Verb metadata is present only for Hindi-specific base creation.
struct WordEntry {
    std::string eng;
    std::string base_eng;
    std::string pos_tag;
    std::string matrix_word;
    std::vector<std::string> roman_variants; // exactly 3, lowercase
    std::optional<std::string> base_matrix;
    std::optional<VerbVoice> verb_voice;
    bool anchored = true; // matrix_word was found in the matrix sentence

    bool is_verb() const {
        return verb_voice.has_value() && *verb_voice != VerbVoice::NotVerb;
    }
};

/// Matrix-language translation plus the replaceable-word list.
struct BaseCreation {
    std::string matrix_sentence;
    std::vector<WordEntry> entries;
};

enum class BaseCreationMode { Generic, HindiSpecific };
enum class TranslitDirection { ToMatrixScript, ToRoman };
enum class LidLabel { English, Matrix };

struct EmbeddingVector {
    std::vector<double> values;

    size_t dim() const { return values.size(); }
};

/// Cosine similarity in double precision, clamped to [-1, 1].
/// Throws DimensionMismatch when the vectors disagree on dimension.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

/// LLM-backed base creation. base_create() issues the prompt, parses the
/// JSON response strictly, and retries once on a malformed response.
class BaseCreator {
  public:
    virtual ~BaseCreator() = default;

    BaseCreation base_create(const std::string& english, const LanguagePair& pair,
                             BaseCreationMode mode);

    /// Raw model output for the base-creation prompt; cache decorators and
    /// backends override this.
    virtual std::string raw_response(const std::string& english, const LanguagePair& pair,
                                     BaseCreationMode mode) = 0;
};

/// Sentence-level translation.
class Translator {
  public:
    virtual ~Translator() = default;
    virtual std::string translate(const std::string& text, const std::string& src,
                                  const std::string& dst) = 0;
};

/// Single-word translation, with or without a part-of-speech hint.
class WordTranslator {
  public:
    virtual ~WordTranslator() = default;
    virtual std::string translate_word(const std::string& word, const std::string& src,
                                       const std::string& dst) = 0;
    virtual std::string translate_word_pos(const std::string& word, const std::string& pos,
                                           const std::string& src, const std::string& dst) = 0;
};

/// Script conversion between Roman and the matrix script. Only meaningful
/// for non-Roman pairs; callers skip it otherwise.
class Transliterator {
  public:
    virtual ~Transliterator() = default;
    virtual std::string transliterate(const std::string& text, const LanguagePair& pair,
                                      TranslitDirection direction) = 0;
};

/// Word-level language identification.
class LanguageIdentifier {
  public:
    virtual ~LanguageIdentifier() = default;
    virtual LidLabel lid(const std::string& word, const LanguagePair& pair) = 0;
};

class Embedder {
  public:
    virtual ~Embedder() = default;
    virtual EmbeddingVector embed(const std::string& sentence) = 0;
};

/// Part-of-speech tagging of an English sentence; returns (token, tag)
/// pairs in sentence order.
class PosTagger {
  public:
    virtual ~PosTagger() = default;
    virtual std::vector<std::pair<std::string, std::string>> pos_tag(
        const std::string& sentence) = 0;
};

/// The full provider bundle a pipeline consumes.
struct ProviderSet {
    std::shared_ptr<BaseCreator> base_creator;
    std::shared_ptr<Translator> translator;
    std::shared_ptr<WordTranslator> word_translator;
    std::shared_ptr<Transliterator> transliterator;
    std::shared_ptr<LanguageIdentifier> lid;
    std::shared_ptr<Embedder> embedder;
    std::shared_ptr<PosTagger> pos_tagger;
};

/// English name of a matrix language, as substituted into the prompt
/// templates ("hi" -> "hindi").
std::string matrix_language_name(const std::string& code);

/// The base-creation prompt for a sentence, with the matrix-language name
/// substituted into the template.
std::string base_creation_prompt(const std::string& english, const LanguagePair& pair,
                                 BaseCreationMode mode);

/// Alternate step-by-step prompt. Its output interleaves working steps with
/// the dictionary and needs extra extraction, so the single-JSON template
/// above is the default; this one is kept for models that answer it better.
std::string alternate_base_creation_prompt(const std::string& english,
                                           const LanguagePair& pair);

/// Strict parse of a base-creation model response. Throws SchemaError on
/// any deviation from the expected shape, EmptyResponse on blank output.
BaseCreation parse_base_creation(const std::string& raw, const LanguagePair& pair,
                                 BaseCreationMode mode);

} // namespace codemix
