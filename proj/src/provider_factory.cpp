#include "codemix/provider_factory.hpp"

#include <fstream>

#include "codemix/providers_http.hpp"
#include "codemix/providers_mock.hpp"

namespace codemix {

using nlohmann::json;

ProviderConfig ProviderConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open provider config: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw FormatError("provider config is not valid JSON: " + std::string(e.what()));
    }
    return from_json(doc, path.has_parent_path() ? path.parent_path() : ".");
}

ProviderConfig ProviderConfig::from_json(const json& doc,
                                         const std::filesystem::path& base_dir) {
    ProviderConfig config;
    config.base_dir_ = base_dir;
    if (!doc.is_object() || !doc.contains("tasks") || !doc.at("tasks").is_object()) {
        throw FormatError("provider config must contain a \"tasks\" object");
    }
    for (const auto& [task, pairs] : doc.at("tasks").items()) {
        if (!pairs.is_object()) {
            throw FormatError("provider config task \"" + task + "\" must map pairs to backends");
        }
        for (const auto& [pair_key, backend] : pairs.items()) {
            config.tasks_[task][pair_key] = backend;
        }
    }
    return config;
}

const json& ProviderConfig::lookup(const std::string& task, const LanguagePair& pair) const {
    auto task_it = tasks_.find(task);
    if (task_it != tasks_.end()) {
        auto exact = task_it->second.find(pair.code());
        if (exact != task_it->second.end()) return exact->second;
        auto fallback = task_it->second.find("*");
        if (fallback != task_it->second.end()) return fallback->second;
    }
    throw FormatError("provider config has no backend for task \"" + task + "\" and pair " +
                      pair.code());
}

RunMode run_mode_from_string(std::string_view name) {
    if (name == "record") return RunMode::Record;
    if (name == "replay") return RunMode::Replay;
    if (name == "live") return RunMode::Live;
    throw FormatError("unknown run mode: " + std::string(name) +
                      " (expected record, replay, or live)");
}

namespace {

/// Builds one task slot at a time, sharing transports per endpoint and mock
/// provider sets per tables file.
class Builder {
  public:
    Builder(const ProviderConfig& config, const LanguagePair& pair)
        : config_(config), pair_(pair) {}

    ProviderSet build() {
        ProviderSet set;
        set.base_creator = base_creator();
        set.translator = translator();
        set.word_translator = word_translator();
        set.transliterator = transliterator();
        set.lid = lid();
        set.embedder = embedder();
        set.pos_tagger = pos_tagger();
        return set;
    }

  private:
    const json& backend(const std::string& task) { return config_.lookup(task, pair_); }

    std::string kind(const json& b) {
        if (!b.contains("backend") || !b.at("backend").is_string()) {
            throw FormatError("backend entry missing \"backend\" kind");
        }
        return b.at("backend").get<std::string>();
    }

    std::shared_ptr<HttpTransport> transport(const json& b) {
        HttpBackendConfig http;
        http.endpoint = b.value("endpoint", "");
        if (http.endpoint.empty()) {
            throw FormatError("HTTP backend requires an \"endpoint\"");
        }
        http.model = b.value("model", "");
        http.auth_env = b.value("auth_env", "");
        http.max_in_flight = b.value("rate_limit", 4);
        http.max_retries = b.value("max_retries", 2);
        http.retry_backoff_ms = b.value("retry_backoff_ms", 200);
        http.timeout_s = b.value("timeout_s", 60);
        http.temperature = b.value("temperature", 0.0);
        const std::string key = http.endpoint + "|" + http.model + "|" + http.auth_env;
        auto it = transports_.find(key);
        if (it != transports_.end()) return it->second;
        auto created = std::make_shared<HttpTransport>(http);
        transports_[key] = created;
        return created;
    }

    const ProviderSet& mocks(const json& b) {
        std::filesystem::path tables = b.value("tables", "");
        if (tables.empty()) throw FormatError("mock backend requires a \"tables\" path");
        if (tables.is_relative()) tables = config_.base_dir() / tables;
        const std::string key = tables.string();
        auto it = mock_sets_.find(key);
        if (it == mock_sets_.end()) {
            it = mock_sets_.emplace(key, mock_providers_from_file(key)).first;
        }
        return it->second;
    }

    ProviderSet& failing() {
        if (!failing_) failing_ = make_failing_providers();
        return *failing_;
    }

    std::shared_ptr<BaseCreator> base_creator() {
        const json& b = backend("base_create");
        const std::string k = kind(b);
        if (k == "openai_chat") return std::make_shared<HttpChatBaseCreator>(transport(b));
        if (k == "mock") return mocks(b).base_creator;
        if (k == "failing") return failing().base_creator;
        throw FormatError("task base_create cannot use backend \"" + k + "\"");
    }

    std::shared_ptr<Translator> translator() {
        const json& b = backend("translate");
        const std::string k = kind(b);
        if (k == "openai_chat") return std::make_shared<HttpChatTranslator>(transport(b));
        if (k == "http_json") return std::make_shared<HttpJsonTranslator>(transport(b));
        if (k == "mock") return mocks(b).translator;
        if (k == "failing") return failing().translator;
        throw FormatError("task translate cannot use backend \"" + k + "\"");
    }

    std::shared_ptr<WordTranslator> word_translator() {
        const json& b = backend("word_translate");
        const std::string k = kind(b);
        if (k == "openai_chat") return std::make_shared<HttpChatWordTranslator>(transport(b));
        if (k == "mock") return mocks(b).word_translator;
        if (k == "failing") return failing().word_translator;
        throw FormatError("task word_translate cannot use backend \"" + k + "\"");
    }

    std::shared_ptr<Transliterator> transliterator() {
        const json& b = backend("transliterate");
        const std::string k = kind(b);
        if (k == "http_json") return std::make_shared<HttpJsonTransliterator>(transport(b));
        if (k == "mock") return mocks(b).transliterator;
        if (k == "failing") return failing().transliterator;
        throw FormatError("task transliterate cannot use backend \"" + k + "\"");
    }

    std::shared_ptr<LanguageIdentifier> lid() {
        const json& b = backend("lid");
        const std::string k = kind(b);
        if (k == "openai_chat") return std::make_shared<HttpChatLid>(transport(b));
        if (k == "mock") return mocks(b).lid;
        if (k == "failing") return failing().lid;
        throw FormatError("task lid cannot use backend \"" + k + "\"");
    }

    std::shared_ptr<Embedder> embedder() {
        const json& b = backend("embed");
        const std::string k = kind(b);
        if (k == "http_json") return std::make_shared<HttpJsonEmbedder>(transport(b));
        if (k == "hash_embed") {
            return std::make_shared<MockEmbedder>(b.value("dim", 64), /*hash_fallback=*/true);
        }
        if (k == "mock") return mocks(b).embedder;
        if (k == "failing") return failing().embedder;
        throw FormatError("task embed cannot use backend \"" + k + "\"");
    }

    std::shared_ptr<PosTagger> pos_tagger() {
        const json& b = backend("pos_tag");
        const std::string k = kind(b);
        if (k == "http_json") return std::make_shared<HttpJsonPosTagger>(transport(b));
        if (k == "mock") return mocks(b).pos_tagger;
        if (k == "failing") return failing().pos_tagger;
        throw FormatError("task pos_tag cannot use backend \"" + k + "\"");
    }

    const ProviderConfig& config_;
    const LanguagePair& pair_;
    std::map<std::string, std::shared_ptr<HttpTransport>> transports_;
    std::map<std::string, ProviderSet> mock_sets_;
    std::optional<ProviderSet> failing_;
};

} // namespace

ProviderSet make_providers(const ProviderConfig& config, const LanguagePair& pair, RunMode mode,
                           const std::optional<std::filesystem::path>& cache_path) {
    switch (mode) {
    case RunMode::Replay: {
        if (!cache_path) throw FormatError("replay mode requires a cache file");
        auto store = RecordStore::open_replay(*cache_path);
        // Failing transports underneath: replay must never reach the network.
        return cached_providers(make_failing_providers(), store, CacheMode::Replay);
    }
    case RunMode::Record: {
        if (!cache_path) throw FormatError("record mode requires a cache file");
        auto store = RecordStore::open_record(*cache_path);
        // Backend settings ride along on every record for audit. Auth stays
        // out of cache files entirely, including the variable name.
        std::map<std::string, json> audit;
        for (const char* task : {"base_create", "translate", "word_translate", "transliterate",
                                 "lid", "embed", "pos_tag"}) {
            json backend = config.lookup(task, pair);
            backend.erase("auth_env");
            audit[task] = std::move(backend);
        }
        return cached_providers(Builder(config, pair).build(), store, CacheMode::Record,
                                std::move(audit));
    }
    case RunMode::Live:
        return Builder(config, pair).build();
    }
    throw Error("unreachable run mode");
}

} // namespace codemix
