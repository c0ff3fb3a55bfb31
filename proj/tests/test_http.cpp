// HTTP provider tests against a loopback server.

#include <atomic>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "codemix/providers_http.hpp"
#include "doctest.h"

using namespace codemix;
using nlohmann::json;

namespace {

/// Loopback JSON service covering the chat and plain-JSON protocols.
class TestServer {
  public:
    TestServer() {
        server_.Post("/chat", [this](const httplib::Request& req, httplib::Response& res) {
            ++requests_;
            last_auth_ = req.get_header_value("Authorization");
            const json body = json::parse(req.body);
            last_model_ = body.value("model", "");
            const std::string prompt =
                body.at("messages").at(0).at("content").get<std::string>();
            std::string content = "unknown";
            if (prompt.find("english sentence :") != std::string::npos) {
                content = R"({"hindi_trans":"यह","Word_Dict":[]})";
            } else if (prompt.find("Decide which language") != std::string::npos) {
                content = prompt.find("\"fact\"") != std::string::npos ? "english" : "hindi";
            } else if (prompt.find("Translate the single") != std::string::npos) {
                content = "तथ्य";
            } else if (prompt.find("Translate the following") != std::string::npos) {
                content = "this fact is based on possibility";
            }
            const json reply = {
                {"choices",
                 json::array({json{{"message", json{{"role", "assistant"},
                                                    {"content", content}}}}})}};
            res.set_content(reply.dump(), "application/json");
        });
        server_.Post("/flaky", [this](const httplib::Request&, httplib::Response& res) {
            ++requests_;
            if (requests_.load() < 3) {
                res.status = 503;
                res.set_content("busy", "text/plain");
                return;
            }
            res.set_content(R"({"text":"recovered"})", "application/json");
        });
        server_.Post("/json", [this](const httplib::Request& req, httplib::Response& res) {
            ++requests_;
            const json body = json::parse(req.body);
            const std::string op = body.value("op", "");
            json reply;
            if (op == "translate") {
                reply = {{"text", "translated:" + body.at("text").get<std::string>()}};
            } else if (op == "transliterate") {
                reply = {{"text", "यह"}};
            } else if (op == "embed") {
                reply = {{"values", {1.0, 0.0, 0.0}}};
            } else if (op == "pos_tag") {
                reply = {{"tags", json::array({json::array({"fact", "NN"})})}};
            }
            res.set_content(reply.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~TestServer() {
        server_.stop();
        thread_.join();
    }

    std::string url(const std::string& path) const {
        return "http://127.0.0.1:" + std::to_string(port_) + path;
    }

    int requests() const { return requests_.load(); }
    std::string last_auth() const { return last_auth_; }
    std::string last_model() const { return last_model_; }

  private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> requests_{0};
    std::string last_auth_;
    std::string last_model_;
};

HttpBackendConfig config_for(const TestServer& server, const std::string& path) {
    HttpBackendConfig config;
    config.endpoint = server.url(path);
    config.model = "test-model";
    config.max_retries = 3;
    config.retry_backoff_ms = 1;
    config.timeout_s = 5;
    return config;
}

} // namespace

TEST_CASE("chat-backed providers issue prompts and parse replies") {
    TestServer server;
    auto transport = std::make_shared<HttpTransport>(config_for(server, "/chat"));

    HttpChatBaseCreator base(transport);
    const BaseCreation creation =
        base.base_create("This.", LanguagePair::of("hi"), BaseCreationMode::Generic);
    CHECK(creation.matrix_sentence == "यह");
    CHECK(server.last_model() == "test-model");

    HttpChatLid lid(transport);
    CHECK(lid.lid("fact", LanguagePair::of("hi")) == LidLabel::English);
    CHECK(lid.lid("yeh", LanguagePair::of("hi")) == LidLabel::Matrix);

    HttpChatWordTranslator words(transport);
    CHECK(words.translate_word_pos("fact", "NN", "en", "hi") == "तथ्य");

    HttpChatTranslator translator(transport);
    CHECK(translator.translate("यह तथ्य", "hi", "en") == "this fact is based on possibility");
}

TEST_CASE("auth header comes from the configured environment variable") {
    TestServer server;
    HttpBackendConfig config = config_for(server, "/chat");
    config.auth_env = "CODEMIX_TEST_TOKEN";
    setenv("CODEMIX_TEST_TOKEN", "sekrit", 1);
    auto transport = std::make_shared<HttpTransport>(config);
    HttpChatLid lid(transport);
    lid.lid("fact", LanguagePair::of("hi"));
    CHECK(server.last_auth() == "Bearer sekrit");
    unsetenv("CODEMIX_TEST_TOKEN");
}

TEST_CASE("transient server errors are retried with backoff") {
    TestServer server;
    auto transport = std::make_shared<HttpTransport>(config_for(server, "/flaky"));
    const json response = transport->post_json({{"op", "anything"}});
    CHECK(response.at("text") == "recovered");
    CHECK(server.requests() == 3);
}

TEST_CASE("json-service providers cover the remaining tasks") {
    TestServer server;
    auto transport = std::make_shared<HttpTransport>(config_for(server, "/json"));

    HttpJsonTranslator translator(transport);
    CHECK(translator.translate("पानी", "hi", "en") == "translated:पानी");

    HttpJsonTransliterator translit(transport);
    CHECK(translit.transliterate("yeh", LanguagePair::of("hi"),
                                 TranslitDirection::ToMatrixScript) == "यह");
    CHECK_THROWS_AS(translit.transliterate("x", LanguagePair::of("fr"),
                                           TranslitDirection::ToRoman),
                    Error);

    HttpJsonEmbedder embedder(transport);
    CHECK(embedder.embed("x").dim() == 3);

    HttpJsonPosTagger tagger(transport);
    const auto tags = tagger.pos_tag("fact");
    REQUIRE(tags.size() == 1);
    CHECK(tags[0].first == "fact");
    CHECK(tags[0].second == "NN");
}

TEST_CASE("unreachable endpoints fail with ProviderError after retries") {
    HttpBackendConfig config;
    config.endpoint = "http://127.0.0.1:1/never";
    config.max_retries = 1;
    config.retry_backoff_ms = 1;
    config.timeout_s = 1;
    HttpTransport transport(config);
    CHECK_THROWS_AS(transport.post_json({{"op", "x"}}), ProviderError);
}
