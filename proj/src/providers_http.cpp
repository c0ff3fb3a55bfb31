#include "codemix/providers_http.hpp"

#include <chrono>
#include <cstdlib>
#include <mutex>
#include <condition_variable>
#include <thread>

#include "httplib.h"

namespace codemix {

using nlohmann::json;

namespace {

struct ParsedUrl {
    std::string base; // scheme://host[:port]
    std::string path;
};

ParsedUrl parse_url(const std::string& url) {
    const size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ProviderError("endpoint URL must include a scheme: " + url);
    }
    const size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

// Bounded in-flight counter; a dynamic limit keeps it config-driven.
class InFlightLimit {
  public:
    explicit InFlightLimit(int limit) : limit_(limit > 0 ? limit : 1) {}

    void acquire() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return active_ < limit_; });
        ++active_;
    }

    void release() {
        {
            std::lock_guard lock(mutex_);
            --active_;
        }
        cv_.notify_one();
    }

  private:
    std::mutex mutex_;
    std::condition_variable cv_;
    int limit_;
    int active_ = 0;
};

} // namespace

struct HttpTransport::Impl {
    HttpBackendConfig config;
    ParsedUrl url;
    std::unique_ptr<httplib::Client> client;
    InFlightLimit in_flight;

    explicit Impl(const HttpBackendConfig& cfg)
        : config(cfg), url(parse_url(cfg.endpoint)), in_flight(cfg.max_in_flight) {
        client = std::make_unique<httplib::Client>(url.base);
        client->set_connection_timeout(config.timeout_s);
        client->set_read_timeout(config.timeout_s);
        client->set_write_timeout(config.timeout_s);
        if (!config.auth_env.empty()) {
            const char* token = std::getenv(config.auth_env.c_str());
            if (token != nullptr && *token != '\0') {
                client->set_default_headers(
                    {{"Authorization", std::string("Bearer ") + token}});
            }
        }
    }
};

HttpTransport::HttpTransport(const HttpBackendConfig& config)
    : impl_(std::make_unique<Impl>(config)) {}

HttpTransport::~HttpTransport() = default;

const HttpBackendConfig& HttpTransport::config() const { return impl_->config; }

json HttpTransport::post_json(const json& body) {
    const std::string payload = body.dump();
    impl_->in_flight.acquire();
    struct Release {
        InFlightLimit& limit;
        ~Release() { limit.release(); }
    } release{impl_->in_flight};

    std::string last_error;
    for (int attempt = 0; attempt <= impl_->config.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(
                impl_->config.retry_backoff_ms << (attempt - 1)));
        }
        httplib::Result res =
            impl_->client->Post(impl_->url.path, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue; // retryable
        }
        if (res->status >= 500) {
            last_error = "server error: HTTP " + std::to_string(res->status);
            continue; // retryable
        }
        if (res->status < 200 || res->status >= 300) {
            throw ProviderError("HTTP " + std::to_string(res->status) + " from " +
                                impl_->config.endpoint + ": " + res->body);
        }
        try {
            return json::parse(res->body);
        } catch (const json::parse_error& e) {
            throw ProviderError("non-JSON response from " + impl_->config.endpoint + ": " +
                                e.what());
        }
    }
    throw ProviderError("request to " + impl_->config.endpoint +
                        " failed after retries: " + last_error);
}

std::string ChatCompletionClient::complete(const std::string& prompt) {
    const HttpBackendConfig& config = transport_->config();
    const json body = {{"model", config.model},
                       {"temperature", config.temperature},
                       {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})}};
    const json response = transport_->post_json(body);
    try {
        const json& choices = response.at("choices");
        if (choices.empty()) throw EmptyResponse("chat completion returned no choices");
        const std::string content =
            choices.at(0).at("message").at("content").get<std::string>();
        if (content.find_first_not_of(" \t\r\n") == std::string::npos) {
            throw EmptyResponse("chat completion returned empty content");
        }
        return content;
    } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed chat completion response: ") + e.what());
    }
}

std::string HttpChatBaseCreator::raw_response(const std::string& english,
                                              const LanguagePair& pair, BaseCreationMode mode) {
    return client_.complete(base_creation_prompt(english, pair, mode));
}

LidLabel HttpChatLid::lid(const std::string& word, const LanguagePair& pair) {
    const std::string prompt =
        "The word \"" + word + "\" appears in a code-mixed English-" +
        matrix_language_name(pair.matrix) +
        " sentence written in the Roman script. Decide which language the word belongs to. "
        "Reply with exactly one word: english or " +
        matrix_language_name(pair.matrix) + ".";
    const std::string answer = to_lower(client_.complete(prompt));
    if (answer.find("english") != std::string::npos) return LidLabel::English;
    return LidLabel::Matrix;
}

std::string HttpChatWordTranslator::translate_word(const std::string& word,
                                                   const std::string& src,
                                                   const std::string& dst) {
    const std::string prompt = "Translate the single " + matrix_language_name(src) + " word \"" +
                               word + "\" into " + matrix_language_name(dst) +
                               ". Reply with only the translated word.";
    const NormalizedSentence answer = preprocess(client_.complete(prompt));
    if (answer.empty()) throw EmptyResponse("word translation came back empty");
    return answer.tokens.front();
}

std::string HttpChatWordTranslator::translate_word_pos(const std::string& word,
                                                       const std::string& pos,
                                                       const std::string& src,
                                                       const std::string& dst) {
    const std::string prompt = "Translate the single " + matrix_language_name(src) + " word \"" +
                               word + "\" into " + matrix_language_name(dst) +
                               ". The word is used as the part of speech \"" + pos +
                               "\". Reply with only the translated word.";
    const NormalizedSentence answer = preprocess(client_.complete(prompt));
    if (answer.empty()) throw EmptyResponse("word translation came back empty");
    return answer.tokens.front();
}

std::string HttpChatTranslator::translate(const std::string& text, const std::string& src,
                                          const std::string& dst) {
    if (src == dst) throw Error("translate requires src != dst");
    if (text.empty()) throw EmptyResponse("translate requires non-empty input");
    const std::string prompt = "Translate the following " + matrix_language_name(src) +
                               " sentence into " + matrix_language_name(dst) +
                               ". Reply with only the translation.\n\n" + text;
    return client_.complete(prompt);
}

std::string HttpJsonTranslator::translate(const std::string& text, const std::string& src,
                                          const std::string& dst) {
    if (src == dst) throw Error("translate requires src != dst");
    if (text.empty()) throw EmptyResponse("translate requires non-empty input");
    const json response =
        transport_->post_json({{"op", "translate"}, {"text", text}, {"src", src}, {"dst", dst}});
    try {
        const std::string out = response.at("text").get<std::string>();
        if (out.empty()) throw EmptyResponse("translation service returned empty text");
        return out;
    } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed translation response: ") + e.what());
    }
}

std::string HttpJsonTransliterator::transliterate(const std::string& text,
                                                  const LanguagePair& pair,
                                                  TranslitDirection direction) {
    if (!pair.non_roman()) {
        throw Error("transliteration requested for a Roman-script pair: " + pair.code());
    }
    const json response = transport_->post_json(
        {{"op", "transliterate"},
         {"text", text},
         {"pair", pair.code()},
         {"direction",
          direction == TranslitDirection::ToMatrixScript ? "to_matrix_script" : "to_roman"}});
    try {
        return response.at("text").get<std::string>();
    } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed transliteration response: ") + e.what());
    }
}

EmbeddingVector HttpJsonEmbedder::embed(const std::string& sentence) {
    const json response = transport_->post_json({{"op", "embed"}, {"text", sentence}});
    try {
        EmbeddingVector v{response.at("values").get<std::vector<double>>()};
        if (v.dim() == 0) throw EmptyResponse("embedding service returned an empty vector");
        return v;
    } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed embedding response: ") + e.what());
    }
}

std::vector<std::pair<std::string, std::string>> HttpJsonPosTagger::pos_tag(
    const std::string& sentence) {
    const json response = transport_->post_json({{"op", "pos_tag"}, {"text", sentence}});
    std::vector<std::pair<std::string, std::string>> out;
    try {
        for (const json& row : response.at("tags")) {
            out.emplace_back(row.at(0).get<std::string>(), row.at(1).get<std::string>());
        }
    } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed tagging response: ") + e.what());
    }
    return out;
}

} // namespace codemix
