#pragma once

#include <memory>
#include <string>

#include "codemix/providers.hpp"
#include "json.hpp"

namespace codemix {

/// Connection settings for one HTTP backend. Generation parameters are
/// pinned (temperature 0) so responses stay reproducible.
struct HttpBackendConfig {
    std::string endpoint; // full URL, e.g. "http://host:8080/v1/chat/completions"
    std::string model;
    std::string auth_env;        // environment variable holding the bearer token
    int max_in_flight = 4;       // concurrent request cap
    int max_retries = 2;         // extra attempts on transport errors and 5xx
    int retry_backoff_ms = 200;  // doubled per retry
    int timeout_s = 60;
    double temperature = 0.0;
};

/// Shared HTTP channel: connection reuse, auth header, in-flight limit,
/// retry with exponential backoff. Safe for concurrent callers.
class HttpTransport {
  public:
    explicit HttpTransport(const HttpBackendConfig& config);
    ~HttpTransport();

    HttpTransport(const HttpTransport&) = delete;
    HttpTransport& operator=(const HttpTransport&) = delete;

    /// POST a JSON body to the configured endpoint path; returns the parsed
    /// JSON response. Throws ProviderError on failure.
    nlohmann::json post_json(const nlohmann::json& body);

    const HttpBackendConfig& config() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// OpenAI-style chat-completions client used for the LLM-backed tasks.
class ChatCompletionClient {
  public:
    explicit ChatCompletionClient(std::shared_ptr<HttpTransport> transport)
        : transport_(std::move(transport)) {}

    /// Single-turn completion; returns the assistant message content.
    std::string complete(const std::string& prompt);

  private:
    std::shared_ptr<HttpTransport> transport_;
};

// LLM-backed providers (base creation, word LID, word translation).
class HttpChatBaseCreator : public BaseCreator {
  public:
    explicit HttpChatBaseCreator(std::shared_ptr<HttpTransport> transport)
        : client_(std::move(transport)) {}
    std::string raw_response(const std::string& english, const LanguagePair& pair,
                             BaseCreationMode mode) override;

  private:
    ChatCompletionClient client_;
};

class HttpChatLid : public LanguageIdentifier {
  public:
    explicit HttpChatLid(std::shared_ptr<HttpTransport> transport)
        : client_(std::move(transport)) {}
    LidLabel lid(const std::string& word, const LanguagePair& pair) override;

  private:
    ChatCompletionClient client_;
};

class HttpChatWordTranslator : public WordTranslator {
  public:
    explicit HttpChatWordTranslator(std::shared_ptr<HttpTransport> transport)
        : client_(std::move(transport)) {}
    std::string translate_word(const std::string& word, const std::string& src,
                               const std::string& dst) override;
    std::string translate_word_pos(const std::string& word, const std::string& pos,
                                   const std::string& src, const std::string& dst) override;

  private:
    ChatCompletionClient client_;
};

class HttpChatTranslator : public Translator {
  public:
    explicit HttpChatTranslator(std::shared_ptr<HttpTransport> transport)
        : client_(std::move(transport)) {}
    std::string translate(const std::string& text, const std::string& src,
                          const std::string& dst) override;

  private:
    ChatCompletionClient client_;
};

// Plain JSON-service providers (translation, transliteration, embeddings,
// tagging). The request document matches the cache's canonical request
// shape; the service answers with the matching response document.
class HttpJsonTranslator : public Translator {
  public:
    explicit HttpJsonTranslator(std::shared_ptr<HttpTransport> transport)
        : transport_(std::move(transport)) {}
    std::string translate(const std::string& text, const std::string& src,
                          const std::string& dst) override;

  private:
    std::shared_ptr<HttpTransport> transport_;
};

class HttpJsonTransliterator : public Transliterator {
  public:
    explicit HttpJsonTransliterator(std::shared_ptr<HttpTransport> transport)
        : transport_(std::move(transport)) {}
    std::string transliterate(const std::string& text, const LanguagePair& pair,
                              TranslitDirection direction) override;

  private:
    std::shared_ptr<HttpTransport> transport_;
};

class HttpJsonEmbedder : public Embedder {
  public:
    explicit HttpJsonEmbedder(std::shared_ptr<HttpTransport> transport)
        : transport_(std::move(transport)) {}
    EmbeddingVector embed(const std::string& sentence) override;

  private:
    std::shared_ptr<HttpTransport> transport_;
};

class HttpJsonPosTagger : public PosTagger {
  public:
    explicit HttpJsonPosTagger(std::shared_ptr<HttpTransport> transport)
        : transport_(std::move(transport)) {}
    std::vector<std::pair<std::string, std::string>> pos_tag(
        const std::string& sentence) override;

  private:
    std::shared_ptr<HttpTransport> transport_;
};

} // namespace codemix
