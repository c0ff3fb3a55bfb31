#include "codemix/providers_mock.hpp"

#include <cmath>
#include <fstream>

namespace codemix {

using nlohmann::json;

namespace {

constexpr char kSep = '\x1f';

std::string mode_tag(BaseCreationMode mode) {
    return mode == BaseCreationMode::Generic ? "generic" : "hindi_specific";
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

void MockBaseCreator::add(const std::string& english, const LanguagePair& pair,
                          BaseCreationMode mode, std::string raw_json) {
    responses_[english + kSep + pair.code() + kSep + mode_tag(mode)] = std::move(raw_json);
}

std::string MockBaseCreator::raw_response(const std::string& english, const LanguagePair& pair,
                                          BaseCreationMode mode) {
    auto it = responses_.find(english + kSep + pair.code() + kSep + mode_tag(mode));
    if (it == responses_.end()) {
        throw ProviderError("mock base creation has no entry for: " + english);
    }
    return it->second;
}

void MockTranslator::add(const std::string& src, const std::string& dst,
                         const std::string& text, std::string out) {
    table_[src + kSep + dst + kSep + normalize_composed(text)] = std::move(out);
}

std::string MockTranslator::translate(const std::string& text, const std::string& src,
                                      const std::string& dst) {
    if (src == dst) throw Error("translate requires src != dst");
    if (text.empty()) throw EmptyResponse("translate requires non-empty input");
    auto it = table_.find(src + kSep + dst + kSep + normalize_composed(text));
    if (it == table_.end()) {
        if (identity_fallback_) return text;
        throw ProviderError("mock translation has no entry for (" + src + "->" + dst +
                            "): " + text);
    }
    if (it->second.empty()) throw EmptyResponse("mock translation table maps to empty output");
    return it->second;
}

void MockWordTranslator::add_word(const std::string& src, const std::string& dst,
                                  const std::string& word, std::string out) {
    word_table_[src + kSep + dst + kSep + normalize_composed(word)] = std::move(out);
}

void MockWordTranslator::add_word_pos(const std::string& src, const std::string& dst,
                                      const std::string& word, const std::string& pos,
                                      std::string out) {
    word_pos_table_[src + kSep + dst + kSep + normalize_composed(word) + kSep + pos] =
        std::move(out);
}

std::string MockWordTranslator::translate_word(const std::string& word, const std::string& src,
                                               const std::string& dst) {
    auto it = word_table_.find(src + kSep + dst + kSep + normalize_composed(word));
    if (it == word_table_.end()) {
        if (identity_fallback_) return word;
        throw ProviderError("mock word translation has no entry for: " + word);
    }
    if (it->second.empty()) throw EmptyResponse("mock word translation maps to empty output");
    return it->second;
}

std::string MockWordTranslator::translate_word_pos(const std::string& word,
                                                   const std::string& pos,
                                                   const std::string& src,
                                                   const std::string& dst) {
    auto it = word_pos_table_.find(src + kSep + dst + kSep + normalize_composed(word) + kSep + pos);
    if (it != word_pos_table_.end()) {
        if (it->second.empty()) throw EmptyResponse("mock word translation maps to empty output");
        return it->second;
    }
    return translate_word(word, src, dst);
}

void MockTransliterator::add_word(TranslitDirection direction, const std::string& from,
                                  std::string to) {
    auto& table =
        direction == TranslitDirection::ToMatrixScript ? to_matrix_words_ : to_roman_words_;
    table[normalize_composed(from)] = std::move(to);
}

void MockTransliterator::add_full(TranslitDirection direction, const std::string& from,
                                  std::string to) {
    auto& table =
        direction == TranslitDirection::ToMatrixScript ? to_matrix_full_ : to_roman_full_;
    table[normalize_composed(from)] = std::move(to);
}

std::string MockTransliterator::transliterate(const std::string& text, const LanguagePair& pair,
                                              TranslitDirection direction) {
    if (!pair.non_roman()) {
        throw Error("transliteration requested for a Roman-script pair: " + pair.code());
    }
    const std::string normalized = normalize_composed(text);
    const auto& full =
        direction == TranslitDirection::ToMatrixScript ? to_matrix_full_ : to_roman_full_;
    if (auto it = full.find(normalized); it != full.end()) return it->second;

    const auto& words =
        direction == TranslitDirection::ToMatrixScript ? to_matrix_words_ : to_roman_words_;
    std::string out;
    for (const std::string& token : split_whitespace(normalized)) {
        if (!out.empty()) out.push_back(' ');
        auto it = words.find(token);
        out += it == words.end() ? token : it->second;
    }
    return out;
}

void MockLid::add_english(const std::string& word) {
    english_.insert(normalize_composed(word));
}

void MockLid::add_matrix(const std::string& word) {
    matrix_.insert(normalize_composed(word));
}

LidLabel MockLid::lid(const std::string& word, const LanguagePair&) {
    calls_.fetch_add(1);
    const std::string normalized = normalize_composed(word);
    if (english_.contains(normalized)) return LidLabel::English;
    if (matrix_.contains(normalized)) return LidLabel::Matrix;
    return unknown_default_;
}

void MockEmbedder::add(const std::string& text, std::vector<double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw ProviderError("mock embedding has non-finite value");
    }
    vectors_[normalize_composed(text)] = std::move(values);
}

EmbeddingVector MockEmbedder::embed(const std::string& sentence) {
    const std::string normalized = normalize_composed(sentence);
    if (auto it = vectors_.find(normalized); it != vectors_.end()) {
        return {it->second};
    }
    if (!hash_fallback_) {
        throw ProviderError("mock embedder has no vector for: " + sentence);
    }
    // Pseudo-random unit vector derived from the text; stable across runs
    // and platforms.
    EmbeddingVector v;
    v.values.reserve(dim_);
    double norm = 0.0;
    for (size_t i = 0; i < dim_; ++i) {
        const std::uint64_t h = fnv1a64(normalized, 0x9e3779b97f4a7c15ULL * (i + 1));
        const double x = (static_cast<double>(h >> 11) /
                          static_cast<double>(1ULL << 53)) * 2.0 - 1.0;
        v.values.push_back(x);
        norm += x * x;
    }
    norm = std::sqrt(norm);
    for (double& x : v.values) x /= norm;
    return v;
}

void MockPosTagger::add(const std::string& word, std::string tag) {
    tags_[normalize_composed(word)] = std::move(tag);
}

std::vector<std::pair<std::string, std::string>> MockPosTagger::pos_tag(
    const std::string& sentence) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const std::string& token : split_whitespace(normalize_composed(sentence))) {
        auto it = tags_.find(token);
        if (it != tags_.end()) {
            out.emplace_back(token, it->second);
        } else if (default_tag_) {
            out.emplace_back(token, *default_tag_);
        }
    }
    return out;
}

namespace {

[[noreturn]] void fail_transport(const CallCounter& counter, const char* what) {
    if (counter) counter->fetch_add(1);
    throw ProviderError(std::string("transport disabled: ") + what);
}

class FailingBaseCreator : public BaseCreator {
  public:
    explicit FailingBaseCreator(CallCounter c) : counter_(std::move(c)) {}
    std::string raw_response(const std::string&, const LanguagePair&,
                             BaseCreationMode) override {
        fail_transport(counter_, "base_create");
    }

  private:
    CallCounter counter_;
};

class FailingTranslator : public Translator {
  public:
    explicit FailingTranslator(CallCounter c) : counter_(std::move(c)) {}
    std::string translate(const std::string&, const std::string&, const std::string&) override {
        fail_transport(counter_, "translate");
    }

  private:
    CallCounter counter_;
};

class FailingWordTranslator : public WordTranslator {
  public:
    explicit FailingWordTranslator(CallCounter c) : counter_(std::move(c)) {}
    std::string translate_word(const std::string&, const std::string&,
                               const std::string&) override {
        fail_transport(counter_, "translate_word");
    }
    std::string translate_word_pos(const std::string&, const std::string&, const std::string&,
                                   const std::string&) override {
        fail_transport(counter_, "translate_word_pos");
    }

  private:
    CallCounter counter_;
};

class FailingTransliterator : public Transliterator {
  public:
    explicit FailingTransliterator(CallCounter c) : counter_(std::move(c)) {}
    std::string transliterate(const std::string&, const LanguagePair&,
                              TranslitDirection) override {
        fail_transport(counter_, "transliterate");
    }

  private:
    CallCounter counter_;
};

class FailingLid : public LanguageIdentifier {
  public:
    explicit FailingLid(CallCounter c) : counter_(std::move(c)) {}
    LidLabel lid(const std::string&, const LanguagePair&) override {
        fail_transport(counter_, "lid");
    }

  private:
    CallCounter counter_;
};

class FailingEmbedder : public Embedder {
  public:
    explicit FailingEmbedder(CallCounter c) : counter_(std::move(c)) {}
    EmbeddingVector embed(const std::string&) override { fail_transport(counter_, "embed"); }

  private:
    CallCounter counter_;
};

class FailingPosTagger : public PosTagger {
  public:
    explicit FailingPosTagger(CallCounter c) : counter_(std::move(c)) {}
    std::vector<std::pair<std::string, std::string>> pos_tag(const std::string&) override {
        fail_transport(counter_, "pos_tag");
    }

  private:
    CallCounter counter_;
};

} // namespace

ProviderSet make_failing_providers(CallCounter counter) {
    ProviderSet set;
    set.base_creator = std::make_shared<FailingBaseCreator>(counter);
    set.translator = std::make_shared<FailingTranslator>(counter);
    set.word_translator = std::make_shared<FailingWordTranslator>(counter);
    set.transliterator = std::make_shared<FailingTransliterator>(counter);
    set.lid = std::make_shared<FailingLid>(counter);
    set.embedder = std::make_shared<FailingEmbedder>(counter);
    set.pos_tagger = std::make_shared<FailingPosTagger>(counter);
    return set;
}

ProviderSet mock_providers_from_json(const json& tables) {
    auto base = std::make_shared<MockBaseCreator>();
    if (tables.contains("base_create")) {
        for (const json& row : tables.at("base_create")) {
            const auto pair = LanguagePair::parse(row.at("pair").get<std::string>());
            const auto mode = row.value("mode", "generic") == "hindi_specific"
                                  ? BaseCreationMode::HindiSpecific
                                  : BaseCreationMode::Generic;
            const json& response = row.at("response");
            base->add(row.at("english").get<std::string>(), pair, mode,
                      response.is_string() ? response.get<std::string>() : response.dump());
        }
    }

    auto translator =
        std::make_shared<MockTranslator>(tables.value("translate_identity_fallback", false));
    if (tables.contains("translate")) {
        for (const json& row : tables.at("translate")) {
            translator->add(row.at("src").get<std::string>(), row.at("dst").get<std::string>(),
                            row.at("text").get<std::string>(), row.at("out").get<std::string>());
        }
    }

    auto words = std::make_shared<MockWordTranslator>(
        tables.value("translate_word_identity_fallback", false));
    if (tables.contains("translate_word")) {
        for (const json& row : tables.at("translate_word")) {
            words->add_word(row.at("src").get<std::string>(), row.at("dst").get<std::string>(),
                            row.at("word").get<std::string>(), row.at("out").get<std::string>());
        }
    }
    if (tables.contains("translate_word_pos")) {
        for (const json& row : tables.at("translate_word_pos")) {
            words->add_word_pos(row.at("src").get<std::string>(),
                                row.at("dst").get<std::string>(),
                                row.at("word").get<std::string>(),
                                row.at("pos").get<std::string>(),
                                row.at("out").get<std::string>());
        }
    }

    auto translit = std::make_shared<MockTransliterator>();
    if (tables.contains("transliterate")) {
        const json& t = tables.at("transliterate");
        auto load = [&](const char* key, TranslitDirection dir, bool full) {
            if (!t.contains(key)) return;
            for (const json& row : t.at(key)) {
                if (full) {
                    translit->add_full(dir, row.at("from").get<std::string>(),
                                       row.at("to").get<std::string>());
                } else {
                    translit->add_word(dir, row.at("from").get<std::string>(),
                                       row.at("to").get<std::string>());
                }
            }
        };
        load("to_matrix_script", TranslitDirection::ToMatrixScript, false);
        load("to_roman", TranslitDirection::ToRoman, false);
        load("full_to_matrix_script", TranslitDirection::ToMatrixScript, true);
        load("full_to_roman", TranslitDirection::ToRoman, true);
    }

    LidLabel unknown = LidLabel::Matrix;
    if (tables.contains("lid") && tables.at("lid").value("default", "matrix") == "english") {
        unknown = LidLabel::English;
    }
    auto lid = std::make_shared<MockLid>(unknown);
    if (tables.contains("lid")) {
        const json& l = tables.at("lid");
        for (const json& w : l.value("english", json::array())) {
            lid->add_english(w.get<std::string>());
        }
        for (const json& w : l.value("matrix", json::array())) {
            lid->add_matrix(w.get<std::string>());
        }
    }

    size_t dim = 16;
    bool hash_fallback = true;
    if (tables.contains("embed")) {
        dim = tables.at("embed").value("dim", 16);
        hash_fallback = tables.at("embed").value("hash_fallback", true);
    }
    auto embedder = std::make_shared<MockEmbedder>(dim, hash_fallback);
    if (tables.contains("embed")) {
        for (const json& row : tables.at("embed").value("vectors", json::array())) {
            embedder->add(row.at("text").get<std::string>(),
                          row.at("values").get<std::vector<double>>());
        }
    }

    std::optional<std::string> default_tag = "NN";
    if (tables.contains("pos_tag") && tables.at("pos_tag").contains("default")) {
        const json& d = tables.at("pos_tag").at("default");
        default_tag = d.is_null() ? std::nullopt : std::optional<std::string>(d.get<std::string>());
    }
    auto tagger = std::make_shared<MockPosTagger>(default_tag);
    if (tables.contains("pos_tag")) {
        for (const json& row : tables.at("pos_tag").value("tags", json::array())) {
            tagger->add(row.at("word").get<std::string>(), row.at("tag").get<std::string>());
        }
    }

    ProviderSet set;
    set.base_creator = std::move(base);
    set.translator = std::move(translator);
    set.word_translator = std::move(words);
    set.transliterator = std::move(translit);
    set.lid = std::move(lid);
    set.embedder = std::move(embedder);
    set.pos_tagger = std::move(tagger);
    return set;
}

ProviderSet mock_providers_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mock provider tables: " + path);
    json tables;
    try {
        in >> tables;
    } catch (const json::parse_error& e) {
        throw FormatError("mock provider tables are not valid JSON: " + std::string(e.what()));
    }
    return mock_providers_from_json(tables);
}

} // namespace codemix
