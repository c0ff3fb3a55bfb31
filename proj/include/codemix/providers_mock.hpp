#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "codemix/providers.hpp"
#include "json.hpp"

namespace codemix {

/// Table-driven providers. Each mock is a pure function of its table:
/// identical inputs produce identical outputs across runs. Lookups miss
/// loudly (ProviderError) unless a fallback is configured.
class MockBaseCreator : public BaseCreator {
  public:
    void add(const std::string& english, const LanguagePair& pair, BaseCreationMode mode,
             std::string raw_json);
    std::string raw_response(const std::string& english, const LanguagePair& pair,
                             BaseCreationMode mode) override;

  private:
    std::map<std::string, std::string> responses_;
};

class MockTranslator : public Translator {
  public:
    explicit MockTranslator(bool identity_fallback = false)
        : identity_fallback_(identity_fallback) {}

    void add(const std::string& src, const std::string& dst, const std::string& text,
             std::string out);
    std::string translate(const std::string& text, const std::string& src,
                          const std::string& dst) override;

  private:
    std::map<std::string, std::string> table_;
    bool identity_fallback_;
};

class MockWordTranslator : public WordTranslator {
  public:
    explicit MockWordTranslator(bool identity_fallback = false)
        : identity_fallback_(identity_fallback) {}

    void add_word(const std::string& src, const std::string& dst, const std::string& word,
                  std::string out);
    void add_word_pos(const std::string& src, const std::string& dst, const std::string& word,
                      const std::string& pos, std::string out);
    std::string translate_word(const std::string& word, const std::string& src,
                               const std::string& dst) override;
    std::string translate_word_pos(const std::string& word, const std::string& pos,
                                   const std::string& src, const std::string& dst) override;

  private:
    std::map<std::string, std::string> word_table_;
    std::map<std::string, std::string> word_pos_table_;
    bool identity_fallback_;
};

/// Token-level transliteration tables per direction; full-string entries are
/// consulted first, then tokens map individually with unknown tokens passing
/// through unchanged. Token count is preserved by construction.
class MockTransliterator : public Transliterator {
  public:
    void add_word(TranslitDirection direction, const std::string& from, std::string to);
    void add_full(TranslitDirection direction, const std::string& from, std::string to);
    std::string transliterate(const std::string& text, const LanguagePair& pair,
                              TranslitDirection direction) override;

  private:
    std::map<std::string, std::string> to_matrix_words_;
    std::map<std::string, std::string> to_roman_words_;
    std::map<std::string, std::string> to_matrix_full_;
    std::map<std::string, std::string> to_roman_full_;
};

class MockLid : public LanguageIdentifier {
  public:
    explicit MockLid(LidLabel unknown_default = LidLabel::Matrix)
        : unknown_default_(unknown_default) {}

    void add_english(const std::string& word);
    void add_matrix(const std::string& word);
    LidLabel lid(const std::string& word, const LanguagePair& pair) override;

    int calls() const { return calls_.load(); }

  private:
    std::set<std::string> english_;
    std::set<std::string> matrix_;
    LidLabel unknown_default_;
    std::atomic<int> calls_{0};
};

/// Fixed vectors per sentence, with an optional deterministic hash-derived
/// fallback. The fallback is injective in practice: equal strings embed
/// identically, distinct strings almost surely do not.
class MockEmbedder : public Embedder {
  public:
    explicit MockEmbedder(size_t dim = 16, bool hash_fallback = true)
        : dim_(dim), hash_fallback_(hash_fallback) {}

    void add(const std::string& text, std::vector<double> values);
    EmbeddingVector embed(const std::string& sentence) override;

  private:
    size_t dim_;
    bool hash_fallback_;
    std::map<std::string, std::vector<double>> vectors_;
};

class MockPosTagger : public PosTagger {
  public:
    explicit MockPosTagger(std::optional<std::string> default_tag = "NN")
        : default_tag_(std::move(default_tag)) {}

    void add(const std::string& word, std::string tag);
    std::vector<std::pair<std::string, std::string>> pos_tag(
        const std::string& sentence) override;

  private:
    std::optional<std::string> default_tag_;
    std::map<std::string, std::string> tags_;
};

/// Shared call counter for the failing provider set.
using CallCounter = std::shared_ptr<std::atomic<int>>;

/// Providers that fail on first touch. Wrapping these under a replay cache
/// proves an execution path performed no transport calls.
ProviderSet make_failing_providers(CallCounter counter = nullptr);

/// Build a full mock provider set from a table document; see
/// docs in README for the table schema.
ProviderSet mock_providers_from_json(const nlohmann::json& tables);
ProviderSet mock_providers_from_file(const std::string& path);

} // namespace codemix
