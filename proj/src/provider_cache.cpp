#include "codemix/provider_cache.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace codemix {

using nlohmann::json;

// ---------------------------------------------------------------------------
// SHA-256 (FIPS 180-4), used for stable cache keys across runs and platforms.
// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::uint32_t, 64> kSha256K = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

inline std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

struct Sha256 {
    std::array<std::uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                      0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::array<std::uint8_t, 64> block{};
    size_t block_fill = 0;
    std::uint64_t total_bits = 0;

    void process(const std::uint8_t* p) {
        std::array<std::uint32_t, 64> w{};
        for (int i = 0; i < 16; ++i) {
            w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
                   (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
        }
        for (int i = 16; i < 64; ++i) {
            const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        auto [a, b, c, d, e, f, g, hh] = h;
        for (int i = 0; i < 64; ++i) {
            const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            const std::uint32_t ch = (e & f) ^ (~e & g);
            const std::uint32_t t1 = hh + s1 + ch + kSha256K[i] + w[i];
            const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            const std::uint32_t t2 = s0 + maj;
            hh = g;
            g = f;
            f = e;
            e = d + t1;
            d = c;
            c = b;
            b = a;
            a = t1 + t2;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
        h[5] += f;
        h[6] += g;
        h[7] += hh;
    }

    void update(const void* data, size_t len) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        total_bits += std::uint64_t(len) * 8;
        while (len > 0) {
            const size_t take = std::min(len, block.size() - block_fill);
            std::memcpy(block.data() + block_fill, p, take);
            block_fill += take;
            p += take;
            len -= take;
            if (block_fill == block.size()) {
                process(block.data());
                block_fill = 0;
            }
        }
    }

    std::string finish() {
        const std::uint64_t bits = total_bits;
        const std::uint8_t pad = 0x80;
        update(&pad, 1);
        const std::uint8_t zero = 0;
        while (block_fill != 56) update(&zero, 1);
        std::array<std::uint8_t, 8> len_be;
        for (int i = 0; i < 8; ++i) len_be[i] = std::uint8_t(bits >> (56 - 8 * i));
        update(len_be.data(), len_be.size());

        static const char* hex = "0123456789abcdef";
        std::string out;
        out.reserve(64);
        for (std::uint32_t word : h) {
            for (int shift = 28; shift >= 0; shift -= 4) {
                out.push_back(hex[(word >> shift) & 0xF]);
            }
        }
        return out;
    }
};

json canonicalize_value(const json& value) {
    switch (value.type()) {
    case json::value_t::string:
        return normalize_composed(value.get<std::string>());
    case json::value_t::array: {
        json out = json::array();
        for (const json& item : value) out.push_back(canonicalize_value(item));
        return out;
    }
    case json::value_t::object: {
        json out = json::object(); // nlohmann objects iterate in sorted key order
        for (auto it = value.begin(); it != value.end(); ++it) {
            out[it.key()] = canonicalize_value(it.value());
        }
        return out;
    }
    default:
        return value;
    }
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

std::string sha256_hex(std::string_view data) {
    Sha256 hasher;
    hasher.update(data.data(), data.size());
    return hasher.finish();
}

json RecordStore::canonicalize(const json& request) { return canonicalize_value(request); }

std::string RecordStore::request_hash(const std::string& provider_id,
                                      const json& canonical_request) {
    return sha256_hex(provider_id + "\n" + canonical_request.dump());
}

std::shared_ptr<RecordStore> RecordStore::open_replay(const std::filesystem::path& path) {
    auto store = std::shared_ptr<RecordStore>(new RecordStore());
    store->load(path, /*must_exist=*/true);
    return store;
}

std::shared_ptr<RecordStore> RecordStore::open_record(const std::filesystem::path& path) {
    auto store = std::shared_ptr<RecordStore>(new RecordStore());
    store->writable_ = true;
    if (std::filesystem::exists(path)) {
        store->load(path, /*must_exist=*/false);
    } else {
        store->path_ = path;
    }
    return store;
}

void RecordStore::load(const std::filesystem::path& path, bool must_exist) {
    path_ = path;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (must_exist) throw IoError("replay cache file does not exist: " + path.string());
        return;
    }
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::parse_error& e) {
            throw FormatError("cache file line " + std::to_string(line_no) +
                              " is not valid JSON: " + e.what());
        }
        ProviderRecord record;
        record.provider_id = doc.at("provider_id").get<std::string>();
        record.request = doc.at("request");
        record.response = doc.at("response");
        record.timestamp = doc.value("timestamp", "");
        record.config = doc.value("config", json(nullptr));

        // The hash is derivable; recompute it so hand-authored fixtures may
        // omit it, and verify it when present.
        const json canonical = canonicalize(record.request);
        const std::string expected = request_hash(record.provider_id, canonical);
        if (doc.contains("request_hash") &&
            doc.at("request_hash").get<std::string>() != expected) {
            throw FormatError("cache file line " + std::to_string(line_no) +
                              " request_hash does not match its request");
        }
        record.request_hash = expected;
        responses_[record.request_hash] = record.response;
        records_.push_back(std::move(record));
    }
}

std::optional<json> RecordStore::lookup(const std::string& provider_id,
                                        const json& request) const {
    const std::string hash = request_hash(provider_id, canonicalize(request));
    std::lock_guard lock(mutex_);
    auto it = responses_.find(hash);
    if (it == responses_.end()) return std::nullopt;
    return it->second;
}

void RecordStore::append(const std::string& provider_id, const json& request,
                         const json& response, json config) {
    if (!writable_) throw IoError("record store opened in replay mode is read-only");
    ProviderRecord record;
    record.provider_id = provider_id;
    record.request = canonicalize(request);
    record.response = canonicalize(response);
    record.timestamp = iso8601_now();
    record.config = std::move(config);
    record.request_hash = request_hash(provider_id, record.request);

    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw IoError("cannot append to cache file: " + path_.string());
    json doc = {{"provider_id", record.provider_id},
                {"request_hash", record.request_hash},
                {"request", record.request},
                {"response", record.response},
                {"timestamp", record.timestamp}};
    if (!record.config.is_null()) doc["config"] = record.config;
    out << doc.dump() << '\n';
    if (!out) throw IoError("failed writing cache file: " + path_.string());
    responses_[record.request_hash] = record.response;
    records_.push_back(std::move(record));
}

size_t RecordStore::size() const {
    std::lock_guard lock(mutex_);
    return records_.size();
}

std::vector<ProviderRecord> RecordStore::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

// ---------------------------------------------------------------------------
// Caching decorators
// ---------------------------------------------------------------------------

namespace {

class CacheLayer {
  public:
    CacheLayer(std::shared_ptr<RecordStore> store, CacheMode mode, json audit)
        : store_(std::move(store)), mode_(mode), audit_(std::move(audit)) {}

  protected:
    /// Serve from cache in replay mode, or forward and record otherwise.
    template <typename Fetch>
    json exchange(const std::string& provider_id, const json& request, Fetch&& fetch) {
        if (mode_ == CacheMode::Replay) {
            auto hit = store_->lookup(provider_id, request);
            if (!hit) {
                throw CacheMiss("replay cache has no record for " + provider_id +
                                " request: " + request.dump());
            }
            return *hit;
        }
        json response = fetch();
        store_->append(provider_id, request, response, audit_);
        return response;
    }

  private:
    std::shared_ptr<RecordStore> store_;
    CacheMode mode_;
    json audit_;
};

std::string direction_tag(TranslitDirection d) {
    return d == TranslitDirection::ToMatrixScript ? "to_matrix_script" : "to_roman";
}

class CachedBaseCreator : public BaseCreator, CacheLayer {
  public:
    CachedBaseCreator(std::shared_ptr<BaseCreator> inner, std::shared_ptr<RecordStore> store,
                      CacheMode mode, json audit)
        : CacheLayer(std::move(store), mode, std::move(audit)), inner_(std::move(inner)) {}

    std::string raw_response(const std::string& english, const LanguagePair& pair,
                             BaseCreationMode mode) override {
        const json request = {
            {"op", "base_create"},
            {"english", english},
            {"pair", pair.code()},
            {"mode", mode == BaseCreationMode::Generic ? "generic" : "hindi_specific"}};
        return exchange("base_create", request, [&] {
                   return json{{"text", inner_->raw_response(english, pair, mode)}};
               })
            .at("text")
            .get<std::string>();
    }

  private:
    std::shared_ptr<BaseCreator> inner_;
};

class CachedTranslator : public Translator, CacheLayer {
  public:
    CachedTranslator(std::shared_ptr<Translator> inner, std::shared_ptr<RecordStore> store,
                     CacheMode mode, json audit)
        : CacheLayer(std::move(store), mode, std::move(audit)), inner_(std::move(inner)) {}

    std::string translate(const std::string& text, const std::string& src,
                          const std::string& dst) override {
        const json request = {{"op", "translate"}, {"text", text}, {"src", src}, {"dst", dst}};
        return exchange("translate", request,
                        [&] { return json{{"text", inner_->translate(text, src, dst)}}; })
            .at("text")
            .get<std::string>();
    }

  private:
    std::shared_ptr<Translator> inner_;
};

class CachedWordTranslator : public WordTranslator, CacheLayer {
  public:
    CachedWordTranslator(std::shared_ptr<WordTranslator> inner,
                         std::shared_ptr<RecordStore> store, CacheMode mode, json audit)
        : CacheLayer(std::move(store), mode, std::move(audit)), inner_(std::move(inner)) {}

    std::string translate_word(const std::string& word, const std::string& src,
                               const std::string& dst) override {
        const json request = {
            {"op", "translate_word"}, {"word", word}, {"src", src}, {"dst", dst}};
        return exchange("word_translate", request,
                        [&] { return json{{"text", inner_->translate_word(word, src, dst)}}; })
            .at("text")
            .get<std::string>();
    }

    std::string translate_word_pos(const std::string& word, const std::string& pos,
                                   const std::string& src, const std::string& dst) override {
        const json request = {{"op", "translate_word_pos"},
                              {"word", word},
                              {"pos", pos},
                              {"src", src},
                              {"dst", dst}};
        return exchange("word_translate", request,
                        [&] {
                            return json{{"text", inner_->translate_word_pos(word, pos, src, dst)}};
                        })
            .at("text")
            .get<std::string>();
    }

  private:
    std::shared_ptr<WordTranslator> inner_;
};

class CachedTransliterator : public Transliterator, CacheLayer {
  public:
    CachedTransliterator(std::shared_ptr<Transliterator> inner,
                         std::shared_ptr<RecordStore> store, CacheMode mode, json audit)
        : CacheLayer(std::move(store), mode, std::move(audit)), inner_(std::move(inner)) {}

    std::string transliterate(const std::string& text, const LanguagePair& pair,
                              TranslitDirection direction) override {
        const json request = {{"op", "transliterate"},
                              {"text", text},
                              {"pair", pair.code()},
                              {"direction", direction_tag(direction)}};
        return exchange("transliterate", request,
                        [&] {
                            return json{{"text", inner_->transliterate(text, pair, direction)}};
                        })
            .at("text")
            .get<std::string>();
    }

  private:
    std::shared_ptr<Transliterator> inner_;
};

class CachedLid : public LanguageIdentifier, CacheLayer {
  public:
    CachedLid(std::shared_ptr<LanguageIdentifier> inner, std::shared_ptr<RecordStore> store,
              CacheMode mode, json audit)
        : CacheLayer(std::move(store), mode, std::move(audit)), inner_(std::move(inner)) {}

    LidLabel lid(const std::string& word, const LanguagePair& pair) override {
        const json request = {{"op", "lid"}, {"word", word}, {"pair", pair.code()}};
        const json response = exchange("lid", request, [&] {
            return json{
                {"label", inner_->lid(word, pair) == LidLabel::English ? "english" : "matrix"}};
        });
        const std::string label = response.at("label").get<std::string>();
        if (label == "english") return LidLabel::English;
        if (label == "matrix") return LidLabel::Matrix;
        throw FormatError("cached lid response has unknown label: " + label);
    }

  private:
    std::shared_ptr<LanguageIdentifier> inner_;
};

class CachedEmbedder : public Embedder, CacheLayer {
  public:
    CachedEmbedder(std::shared_ptr<Embedder> inner, std::shared_ptr<RecordStore> store,
                   CacheMode mode, json audit)
        : CacheLayer(std::move(store), mode, std::move(audit)), inner_(std::move(inner)) {}

    EmbeddingVector embed(const std::string& sentence) override {
        const json request = {{"op", "embed"}, {"text", sentence}};
        const json response = exchange("embed", request, [&] {
            return json{{"values", inner_->embed(sentence).values}};
        });
        return {response.at("values").get<std::vector<double>>()};
    }

  private:
    std::shared_ptr<Embedder> inner_;
};

class CachedPosTagger : public PosTagger, CacheLayer {
  public:
    CachedPosTagger(std::shared_ptr<PosTagger> inner, std::shared_ptr<RecordStore> store,
                    CacheMode mode, json audit)
        : CacheLayer(std::move(store), mode, std::move(audit)), inner_(std::move(inner)) {}

    std::vector<std::pair<std::string, std::string>> pos_tag(
        const std::string& sentence) override {
        const json request = {{"op", "pos_tag"}, {"text", sentence}};
        const json response = exchange("pos_tag", request, [&] {
            json tags = json::array();
            for (const auto& [token, tag] : inner_->pos_tag(sentence)) {
                tags.push_back(json::array({token, tag}));
            }
            return json{{"tags", tags}};
        });
        std::vector<std::pair<std::string, std::string>> out;
        for (const json& row : response.at("tags")) {
            out.emplace_back(row.at(0).get<std::string>(), row.at(1).get<std::string>());
        }
        return out;
    }

  private:
    std::shared_ptr<PosTagger> inner_;
};

} // namespace

ProviderSet cached_providers(const ProviderSet& inner, std::shared_ptr<RecordStore> store,
                             CacheMode mode, std::map<std::string, json> audit_configs) {
    auto audit = [&](const char* provider_id) -> json {
        auto it = audit_configs.find(provider_id);
        return it == audit_configs.end() ? json(nullptr) : it->second;
    };
    ProviderSet set;
    set.base_creator = std::make_shared<CachedBaseCreator>(inner.base_creator, store, mode,
                                                           audit("base_create"));
    set.translator =
        std::make_shared<CachedTranslator>(inner.translator, store, mode, audit("translate"));
    set.word_translator = std::make_shared<CachedWordTranslator>(inner.word_translator, store,
                                                                 mode, audit("word_translate"));
    set.transliterator = std::make_shared<CachedTransliterator>(inner.transliterator, store,
                                                                mode, audit("transliterate"));
    set.lid = std::make_shared<CachedLid>(inner.lid, store, mode, audit("lid"));
    set.embedder = std::make_shared<CachedEmbedder>(inner.embedder, store, mode, audit("embed"));
    set.pos_tagger =
        std::make_shared<CachedPosTagger>(inner.pos_tagger, store, mode, audit("pos_tag"));
    return set;
}

} // namespace codemix
