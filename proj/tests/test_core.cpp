#include "codemix/core.hpp"

#include <random>

#include "doctest.h"

using namespace codemix;

TEST_CASE("preprocess lowercases and strips punctuation") {
    CHECK(preprocess("This fact is based on possibility.").text ==
          "this fact is based on possibility");
    CHECK(preprocess("").text == "");
    CHECK(preprocess("¡Hola,   AMIGO!").text == "hola amigo");
}

TEST_CASE("preprocess collapses whitespace and keeps token order") {
    const NormalizedSentence s = preprocess("  a \t b  c  ");
    CHECK(s.text == "a b c");
    CHECK(s.tokens == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("preprocess keeps Devanagari words and strips the danda") {
    const NormalizedSentence s = preprocess("प्रश्न चार प्रकार के होते हैं।");
    CHECK(s.tokens.size() == 6);
    CHECK(s.tokens.back() == "हैं");
}

TEST_CASE("preprocess handles accented Latin") {
    CHECK(preprocess("Está DESTINADO").text == "está destinado");
    // Decomposed input composes to the same bytes as precomposed input.
    CHECK(preprocess("café").text == preprocess("café").text);
}

TEST_CASE("preprocess is idempotent") {
    const char* samples[] = {
        "This fact is based on possibility.",
        "¡Hola,   AMIGO!",
        "प्रश्न चार प्रकार के होते हैं।",
        "Yeh fact possibility par based hai.",
        "le moment de truth approche!!",
        "Esto will become claro shortly en el IGC",
        "   ",
        "don't stop—now… (ever)",
    };
    for (const char* raw : samples) {
        const NormalizedSentence once = preprocess(raw);
        const NormalizedSentence twice = preprocess(once.text);
        CHECK(once.text == twice.text);
        CHECK(once.tokens == twice.tokens);
    }
}

TEST_CASE("preprocess idempotence holds on random printable strings") {
    std::mt19937 rng(20240917);
    const std::u32string alphabet = U"abcXYZ¡!.,—देहैñé 09\t…";
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<size_t> len(0, 40);
    for (int i = 0; i < 500; ++i) {
        std::u32string raw;
        const size_t n = len(rng);
        for (size_t k = 0; k < n; ++k) raw.push_back(alphabet[pick(rng)]);
        const std::string utf = utf8::encode(raw);
        const NormalizedSentence once = preprocess(utf);
        CHECK(preprocess(once.text).text == once.text);
        CHECK((once.tokens.empty() == once.text.empty()));
    }
}

TEST_CASE("tokenize splits on whitespace") {
    CHECK(tokenize(preprocess("questions chaar types ke hote hain")) ==
          std::vector<std::string>{"questions", "chaar", "types", "ke", "hote", "hain"});
    CHECK(tokenize(preprocess("")).empty());
    CHECK(tokenize(preprocess("a  b")) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("has_non_roman flags non-Latin scripts only") {
    CHECK_FALSE(has_non_roman(preprocess("yeh fact possibility par based hai")));
    CHECK(has_non_roman(preprocess("यह fact")));
    CHECK_FALSE(has_non_roman(preprocess("café report")));
    CHECK_FALSE(has_non_roman(preprocess("ça va très bien 123")));
    CHECK(has_non_roman(preprocess("kintu এটা feel")));
    CHECK(has_non_roman(preprocess("продолжение story")));
}

TEST_CASE("has_non_roman ignores case changes and punctuation") {
    const char* samples[] = {"Yeh fact!", "यह, fact.", "Café—Report", "a b c"};
    for (const char* raw : samples) {
        const bool base = has_non_roman(preprocess(raw));
        std::string shouty(raw);
        for (char& c : shouty) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        CHECK(has_non_roman(preprocess(shouty + "!!!")) == base);
        CHECK(has_non_roman(preprocess(std::string("¿") + raw + "?")) == base);
    }
}

TEST_CASE("split_token_affixes keeps outer punctuation") {
    const TokenAffixes parts = split_token_affixes("¿cómo?");
    CHECK(parts.leading == "¿");
    CHECK(parts.core == "cómo");
    CHECK(parts.trailing == "?");

    const TokenAffixes danda = split_token_affixes("हैं।");
    CHECK(danda.core == "हैं");
    CHECK(danda.trailing == "।");

    CHECK(split_token_affixes("...").core == "");
    CHECK(split_token_affixes("plain").core == "plain");
}

TEST_CASE("language pair registry") {
    CHECK(LanguagePair::of("hi").non_roman());
    CHECK(LanguagePair::of("bn").non_roman());
    CHECK_FALSE(LanguagePair::of("fr").non_roman());
    CHECK_FALSE(LanguagePair::of("es").non_roman());
    CHECK(LanguagePair::parse("en-hi").code() == "en-hi");
    CHECK_THROWS_AS(LanguagePair::parse("hi-en"), FormatError);
    CHECK_THROWS_AS(LanguagePair::of("xx"), FormatError);
    CHECK_THROWS_AS(LanguagePair::custom("en", Script::Roman), FormatError);
    CHECK(LanguagePair::custom("ta", Script::NonRoman).code() == "en-ta");
}

TEST_CASE("utf8 validation") {
    CHECK(utf8::valid("plain ascii"));
    CHECK(utf8::valid("यह तथ्य"));
    CHECK_FALSE(utf8::valid("bad \xFF byte"));
    CHECK_FALSE(utf8::valid("truncated \xE0\xA4"));
    // Overlong encoding of '/' must be rejected.
    CHECK_FALSE(utf8::valid(std::string("\xC0\xAF")));
}

TEST_CASE("to_lower handles Latin-1 and extended Latin") {
    CHECK(to_lower("ÉTÉ") == "été");
    CHECK(to_lower("ÑOÑO") == "ñoño");
    CHECK(to_lower("ŒUVRE") == "œuvre");
    CHECK(to_lower("यह") == "यह");
}
