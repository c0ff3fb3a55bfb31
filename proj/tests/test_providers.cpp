#include "codemix/providers.hpp"

#include "codemix/providers_mock.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace codemix;

TEST_CASE("base creation prompt substitutes the matrix language") {
    const std::string hi =
        base_creation_prompt("The questions are of four types.", LanguagePair::of("hi"),
                             BaseCreationMode::Generic);
    CHECK(hi.find("hindi_trans") != std::string::npos);
    CHECK(hi.find("roman_hindi") != std::string::npos);
    CHECK(hi.find("english sentence : The questions are of four types.") != std::string::npos);

    const std::string fr = base_creation_prompt("Hello.", LanguagePair::of("fr"),
                                                BaseCreationMode::Generic);
    CHECK(fr.find("french_trans") != std::string::npos);
    CHECK(fr.find("roman_french") != std::string::npos);
    CHECK(fr.find("into French") != std::string::npos);

    const std::string hi_specific =
        base_creation_prompt("He plays.", LanguagePair::of("hi"), BaseCreationMode::HindiSpecific);
    CHECK(hi_specific.find("base_hin") != std::string::npos);
    CHECK(hi_specific.find("hin_verb_type") != std::string::npos);
    CHECK_THROWS_AS(base_creation_prompt("x", LanguagePair::of("bn"),
                                         BaseCreationMode::HindiSpecific),
                    Error);
}

TEST_CASE("base creation response parses into entries") {
    const BaseCreation base = parse_base_creation(
        testsupport::four_types_base_json(), LanguagePair::of("hi"), BaseCreationMode::Generic);
    CHECK(base.matrix_sentence == testsupport::kFourTypesMatrix);
    REQUIRE(base.entries.size() == 3);
    CHECK(base.entries[0].eng == "questions");
    CHECK(base.entries[0].matrix_word == "प्रश्न");
    CHECK(base.entries[0].roman_variants ==
          std::vector<std::string>{"prashan", "prashn", "prashna"});
    CHECK(base.entries[1].eng == "four");
    CHECK(base.entries[2].eng == "types");
    for (const WordEntry& e : base.entries) {
        CHECK(e.anchored);
        CHECK_FALSE(e.verb_voice.has_value());
        CHECK_FALSE(e.base_matrix.has_value());
    }
}

TEST_CASE("base creation tolerates a code fence around the JSON") {
    const std::string wrapped =
        "Here you go:\n```json\n" + testsupport::four_types_base_json() + "\n```";
    const BaseCreation base =
        parse_base_creation(wrapped, LanguagePair::of("hi"), BaseCreationMode::Generic);
    CHECK(base.entries.size() == 3);
}

TEST_CASE("schema violations are rejected") {
    const LanguagePair hi = LanguagePair::of("hi");
    CHECK_THROWS_AS(parse_base_creation("", hi, BaseCreationMode::Generic), EmptyResponse);
    CHECK_THROWS_AS(parse_base_creation("no json here", hi, BaseCreationMode::Generic),
                    SchemaError);
    // Missing roman_hindi.
    CHECK_THROWS_AS(parse_base_creation(
                        R"({"hindi_trans":"यह","Word_Dict":[{"eng":"a","base_eng":"a","eng_pos_tag":"NN","hindi":"यह"}]})",
                        hi, BaseCreationMode::Generic),
                    SchemaError);
    // Two variants instead of three; no silent padding.
    CHECK_THROWS_AS(parse_base_creation(
                        R"({"hindi_trans":"यह","Word_Dict":[{"eng":"a","base_eng":"a","eng_pos_tag":"NN","hindi":"यह","roman_hindi":["ye","yeh"]}]})",
                        hi, BaseCreationMode::Generic),
                    SchemaError);
    // Missing translation key.
    CHECK_THROWS_AS(parse_base_creation(R"({"Word_Dict":[]})", hi, BaseCreationMode::Generic),
                    SchemaError);
    // Hindi-specific mode requires verb metadata.
    CHECK_THROWS_AS(parse_base_creation(testsupport::four_types_base_json(), hi,
                                        BaseCreationMode::HindiSpecific),
                    SchemaError);
}

TEST_CASE("hindi-specific parse keeps verb metadata") {
    const std::string raw =
        R"({"hindi_trans":"वह खेलता है","Word_Dict":[{"eng":"plays","base_eng":"play","eng_pos_tag":"VBZ","hindi":"खेलता","base_hin":"खेलना","hin_verb_type":"ACTIVE","roman_hindi":["khelta","kheltaa","khelata"]}]})";
    const BaseCreation base =
        parse_base_creation(raw, LanguagePair::of("hi"), BaseCreationMode::HindiSpecific);
    REQUIRE(base.entries.size() == 1);
    CHECK(base.entries[0].base_matrix == "खेलना");
    CHECK(base.entries[0].verb_voice == VerbVoice::Active);
    CHECK(base.entries[0].is_verb());
}

TEST_CASE("variants are normalized to lowercase single words") {
    const std::string raw =
        R"({"hindi_trans":"यह","Word_Dict":[{"eng":"this","base_eng":"this","eng_pos_tag":"NN","hindi":"यह","roman_hindi":["Yeh","YE","yah."]}]})";
    const BaseCreation base =
        parse_base_creation(raw, LanguagePair::of("hi"), BaseCreationMode::Generic);
    CHECK(base.entries[0].roman_variants == std::vector<std::string>{"yeh", "ye", "yah"});
}

TEST_CASE("unanchored entries are flagged, not dropped") {
    const std::string raw =
        R"({"hindi_trans":"प्रश्न चार","Word_Dict":[{"eng":"types","base_eng":"type","eng_pos_tag":"NNS","hindi":"प्रकार","roman_hindi":["prakar","prakaar","parkar"]}]})";
    const BaseCreation base =
        parse_base_creation(raw, LanguagePair::of("hi"), BaseCreationMode::Generic);
    REQUIRE(base.entries.size() == 1);
    CHECK_FALSE(base.entries[0].anchored);
}

namespace {

/// Returns a broken response on the first call, then a valid one.
class FlakyBaseCreator : public BaseCreator {
  public:
    std::string raw_response(const std::string&, const LanguagePair&,
                             BaseCreationMode) override {
        ++calls;
        if (calls == 1) return "{\"oops\": true}";
        return testsupport::four_types_base_json();
    }
    int calls = 0;
};

class AlwaysBrokenBaseCreator : public BaseCreator {
  public:
    std::string raw_response(const std::string&, const LanguagePair&,
                             BaseCreationMode) override {
        ++calls;
        return "not json at all";
    }
    int calls = 0;
};

} // namespace

TEST_CASE("base_create retries once on a malformed response") {
    FlakyBaseCreator flaky;
    const BaseCreation base = flaky.base_create(testsupport::kFourTypesEnglish,
                                                LanguagePair::of("hi"),
                                                BaseCreationMode::Generic);
    CHECK(flaky.calls == 2);
    CHECK(base.entries.size() == 3);

    AlwaysBrokenBaseCreator broken;
    CHECK_THROWS_AS(broken.base_create("x", LanguagePair::of("hi"), BaseCreationMode::Generic),
                    SchemaError);
    CHECK(broken.calls == 2);
}

TEST_CASE("cosine similarity basics") {
    const EmbeddingVector x{{1.0, 0.0, 0.0}};
    const EmbeddingVector y{{0.0, 1.0, 0.0}};
    const EmbeddingVector nx{{-2.0, 0.0, 0.0}};
    CHECK(cosine_similarity(x, x) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(cosine_similarity(x, y) == doctest::Approx(0.0));
    CHECK(cosine_similarity(x, nx) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(cosine_similarity(x, EmbeddingVector{{1.0, 2.0}}), DimensionMismatch);
}

TEST_CASE("cosine similarity is symmetric, bounded, and scale-invariant") {
    MockEmbedder embedder(12);
    for (const char* a : {"one sentence", "another sentence", "a third one"}) {
        for (const char* b : {"one sentence", "completely different"}) {
            const EmbeddingVector va = embedder.embed(a);
            const EmbeddingVector vb = embedder.embed(b);
            const double ab = cosine_similarity(va, vb);
            CHECK(ab == doctest::Approx(cosine_similarity(vb, va)).epsilon(1e-12));
            CHECK(ab >= -1.0);
            CHECK(ab <= 1.0);
            EmbeddingVector scaled = vb;
            for (double& v : scaled.values) v *= 7.25;
            CHECK(ab == doctest::Approx(cosine_similarity(va, scaled)).epsilon(1e-9));
        }
    }
}

TEST_CASE("the alternate prompt is available but distinct") {
    const std::string prompt =
        alternate_base_creation_prompt("Hello there.", LanguagePair::of("hi"));
    CHECK(prompt.find("POS Tagging of the sentence") != std::string::npos);
    CHECK(prompt.find("Imp_Eng") != std::string::npos);
    CHECK(prompt.find("roman_hindi") != std::string::npos);
    CHECK(prompt.find("English sentence : Hello there.") != std::string::npos);
    CHECK(prompt != base_creation_prompt("Hello there.", LanguagePair::of("hi"),
                                         BaseCreationMode::Generic));
}

TEST_CASE("a word's translation can differ by part of speech") {
    MockWordTranslator words;
    words.add_word_pos("en", "hi", "rose", "NN", "गुलाब");
    words.add_word_pos("en", "hi", "rose", "VBD", "उठा");
    CHECK(words.translate_word_pos("rose", "NN", "en", "hi") !=
          words.translate_word_pos("rose", "VBD", "en", "hi"));
}

TEST_CASE("mock translator is a pure table lookup") {
    MockTranslator t;
    t.add("fr", "en", "bonjour", "hello");
    CHECK(t.translate("bonjour", "fr", "en") == "hello");
    CHECK(t.translate("bonjour", "fr", "en") == "hello");
    CHECK_THROWS_AS(t.translate("salut", "fr", "en"), ProviderError);
    CHECK_THROWS_AS(t.translate("", "fr", "en"), EmptyResponse);
    CHECK_THROWS_AS(t.translate("x", "en", "en"), Error);
}

TEST_CASE("mock transliterator round-trips its table") {
    MockTransliterator t;
    const std::vector<std::pair<std::string, std::string>> table = {
        {"yeh", "यह"}, {"tathya", "तथ्य"}, {"hai", "है"}};
    for (const auto& [roman, deva] : table) {
        t.add_word(TranslitDirection::ToMatrixScript, roman, deva);
        t.add_word(TranslitDirection::ToRoman, deva, roman);
    }
    const LanguagePair hi = LanguagePair::of("hi");
    const std::string roman = "yeh tathya hai";
    const std::string deva = t.transliterate(roman, hi, TranslitDirection::ToMatrixScript);
    CHECK(deva == "यह तथ्य है");
    CHECK(t.transliterate(deva, hi, TranslitDirection::ToRoman) == roman);
    // Token count is preserved even for unknown words.
    CHECK(t.transliterate("yeh unknown hai", hi, TranslitDirection::ToMatrixScript) ==
          "यह unknown है");
    CHECK_THROWS_AS(t.transliterate("x", LanguagePair::of("es"),
                                    TranslitDirection::ToRoman),
                    Error);
}

TEST_CASE("mock lid consults its lexicons") {
    MockLid lid(LidLabel::Matrix);
    lid.add_english("fact");
    lid.add_matrix("yeh");
    const LanguagePair hi = LanguagePair::of("hi");
    CHECK(lid.lid("fact", hi) == LidLabel::English);
    CHECK(lid.lid("yeh", hi) == LidLabel::Matrix);
    CHECK(lid.lid("unknownword", hi) == LidLabel::Matrix);
    CHECK(lid.calls() == 3);
}

TEST_CASE("hash-fallback embeddings are deterministic and distinct") {
    MockEmbedder a(16), b(16);
    const EmbeddingVector v1 = a.embed("this fact is based on possibility");
    const EmbeddingVector v2 = b.embed("this fact is based on possibility");
    CHECK(v1.values == v2.values);
    CHECK(cosine_similarity(v1, v2) == doctest::Approx(1.0).epsilon(1e-9));
    const EmbeddingVector other = a.embed("a completely different sentence");
    CHECK(cosine_similarity(v1, other) < 0.9);
}

TEST_CASE("failing providers throw and count") {
    auto counter = std::make_shared<std::atomic<int>>(0);
    ProviderSet set = make_failing_providers(counter);
    CHECK_THROWS_AS(set.translator->translate("x", "en", "hi"), ProviderError);
    CHECK_THROWS_AS(set.embedder->embed("x"), ProviderError);
    CHECK(counter->load() == 2);
}

TEST_CASE("mock provider set builds from a table document") {
    const nlohmann::json tables = {
        {"translate", {{{"src", "fr"}, {"dst", "en"}, {"text", "bonjour"}, {"out", "hello"}}}},
        {"lid", {{"english", {"fact"}}, {"matrix", {"yeh"}}, {"default", "matrix"}}},
        {"embed", {{"dim", 8}, {"hash_fallback", true}}},
        {"pos_tag", {{"tags", {{{"word", "fact"}, {"tag", "NN"}}}}}},
    };
    ProviderSet set = mock_providers_from_json(tables);
    CHECK(set.translator->translate("bonjour", "fr", "en") == "hello");
    CHECK(set.lid->lid("fact", LanguagePair::of("hi")) == LidLabel::English);
    CHECK(set.embedder->embed("x").dim() == 8);
    const auto tags = set.pos_tagger->pos_tag("the fact");
    REQUIRE(tags.size() == 2);
    CHECK(tags[1].second == "NN");
}
