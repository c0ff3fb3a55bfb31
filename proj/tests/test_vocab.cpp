#include "codemix/vocab.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

using namespace codemix;

namespace {

WordEntry entry_with(std::string eng, std::vector<std::string> variants) {
    WordEntry e;
    e.eng = std::move(eng);
    e.base_eng = e.eng;
    e.pos_tag = "NN";
    e.matrix_word = "शब्द";
    e.roman_variants = std::move(variants);
    return e;
}

FrequencyVocab vocab_from(std::initializer_list<std::pair<const char*, std::uint64_t>> counts) {
    FrequencyVocab v;
    v.pair = LanguagePair::of("hi");
    for (const auto& [token, count] : counts) {
        v.counts[token] = count;
        v.total_tokens += count;
    }
    return v;
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("build_vocab counts token occurrences") {
    std::istringstream corpus("pani pani water\n");
    const FrequencyVocab v = build_vocab(corpus, LanguagePair::of("hi"));
    CHECK(v.count("pani") == 2);
    CHECK(v.count("water") == 1);
    CHECK(v.total_tokens == 3);
}

TEST_CASE("build_vocab on an empty stream") {
    std::istringstream corpus("");
    const FrequencyVocab v = build_vocab(corpus, LanguagePair::of("hi"));
    CHECK(v.counts.empty());
    CHECK(v.total_tokens == 0);
}

TEST_CASE("build_vocab normalizes before counting") {
    std::istringstream corpus("Pani, paani!\n");
    const FrequencyVocab v = build_vocab(corpus, LanguagePair::of("hi"));
    CHECK(v.count("pani") == 1);
    CHECK(v.count("paani") == 1);
    CHECK(v.total_tokens == 2);
}

TEST_CASE("build_vocab skips non-utf8 lines and reports them") {
    std::istringstream corpus("good line\nbad \xFF\xFE line\nanother fine\n");
    VocabBuildStats stats;
    const FrequencyVocab v = build_vocab(corpus, LanguagePair::of("hi"), &stats);
    CHECK(stats.lines == 3);
    CHECK(stats.skipped_non_utf8 == 1);
    CHECK(v.count("good") == 1);
    CHECK(v.count("bad") == 0);
    CHECK(v.count("another") == 1);
}

TEST_CASE("score_entry matches the frequency-ratio table") {
    const FrequencyVocab v = vocab_from({{"impossible", 15},
                                         {"asambhav", 1},
                                         {"water", 28},
                                         {"pani", 89},
                                         {"paani", 101}});
    const Score impossible =
        score_entry(entry_with("impossible", {"asambhav", "asambhab", "asmbhav"}), v);
    CHECK_FALSE(impossible.is_infinite());
    CHECK(impossible.value == doctest::Approx(15.0).epsilon(1e-12));

    const Score water = score_entry(entry_with("water", {"pani", "paani", "panee"}), v);
    CHECK(water.value == doctest::Approx(28.0 / 190.0).epsilon(1e-12));
}

TEST_CASE("score is infinite when no variant occurs") {
    const FrequencyVocab v = vocab_from({{"water", 28}});
    const Score s = score_entry(entry_with("water", {"pani", "paani", "panee"}), v);
    CHECK(s.is_infinite());
}

TEST_CASE("duplicate variants count once") {
    const FrequencyVocab v = vocab_from({{"water", 10}, {"pani", 5}});
    const Score s = score_entry(entry_with("water", {"pani", "pani", "pani"}), v);
    CHECK(s.value == doctest::Approx(10.0 / 5.0));
}

TEST_CASE("lemma lookup for the English count is opt-in") {
    const FrequencyVocab v = vocab_from({{"question", 40}, {"questions", 6}, {"prashan", 2}});
    WordEntry e = entry_with("questions", {"prashan", "prashn", "prashna"});
    e.base_eng = "question";
    CHECK(score_entry(e, v).value == doctest::Approx(3.0));                       // surface
    CHECK(score_entry(e, v, /*lookup_base_form=*/true).value == doctest::Approx(20.0));
}

TEST_CASE("case differences in entries are normalized for lookup") {
    const FrequencyVocab v = vocab_from({{"water", 10}, {"pani", 5}});
    const Score s = score_entry(entry_with("Water", {"Pani", "PAANI", "panee"}), v);
    CHECK(s.value == doctest::Approx(2.0));
}

TEST_CASE("score ordering: infinite above every finite value") {
    CHECK(Score::infinite() > Score::finite(1e18));
    CHECK(Score::finite(2.0) > Score::finite(1.0));
    CHECK(Score::infinite() == Score::infinite());
}

TEST_CASE("score is monotone in counts") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<std::uint64_t> count(0, 50);
    for (int trial = 0; trial < 200; ++trial) {
        FrequencyVocab v;
        v.pair = LanguagePair::of("hi");
        v.counts["water"] = count(rng);
        v.counts["pani"] = count(rng) + 1; // keep the score finite
        v.counts["paani"] = count(rng);
        v.total_tokens = v.counts["water"] + v.counts["pani"] + v.counts["paani"];

        const WordEntry e = entry_with("water", {"pani", "paani", "panee"});
        const Score base = score_entry(e, v);

        FrequencyVocab more_en = v;
        more_en.counts["water"] += 7;
        CHECK(score_entry(e, more_en).value >= base.value);

        FrequencyVocab more_hi = v;
        more_hi.counts["paani"] += 7;
        CHECK(score_entry(e, more_hi).value <= base.value);
    }
}

TEST_CASE("scaling every count preserves finite scores and the infinite set") {
    const WordEntry finite_entry = entry_with("water", {"pani", "paani", "panee"});
    const WordEntry infinite_entry = entry_with("sky", {"aasman", "asman", "aasmaan"});
    FrequencyVocab v = vocab_from({{"water", 28}, {"pani", 89}, {"sky", 4}});

    FrequencyVocab scaled = v;
    for (auto& [token, count] : scaled.counts) count *= 13;
    scaled.total_tokens = v.total_tokens * 13;

    CHECK(score_entry(finite_entry, v).value ==
          doctest::Approx(score_entry(finite_entry, scaled).value).epsilon(1e-12));
    CHECK(score_entry(infinite_entry, v).is_infinite());
    CHECK(score_entry(infinite_entry, scaled).is_infinite());
}

TEST_CASE("vocab over concatenated corpora equals merged per-corpus counts") {
    std::istringstream a("pani water\npani\n");
    std::istringstream b("water chai\n");
    std::istringstream both("pani water\npani\nwater chai\n");
    const LanguagePair pair = LanguagePair::of("hi");
    const FrequencyVocab merged = merge_vocabs(build_vocab(a, pair), build_vocab(b, pair));
    const FrequencyVocab direct = build_vocab(both, pair);
    CHECK(merged.total_tokens == direct.total_tokens);
    CHECK(merged.counts.size() == direct.counts.size());
    for (const auto& [token, count] : direct.counts) {
        CHECK(merged.count(token) == count);
    }
}

TEST_CASE("save/load round trip preserves counts exactly") {
    std::istringstream corpus("yeh pani bahut thanda hai\npani ki bottle\n");
    const FrequencyVocab v = build_vocab(corpus, LanguagePair::of("hi"));
    const auto path = temp_file("codemix_vocab_roundtrip.jsonl");
    save_vocab(v, path);
    const FrequencyVocab loaded = load_vocab(path);
    CHECK(loaded.pair == v.pair);
    CHECK(loaded.total_tokens == v.total_tokens);
    CHECK(loaded.counts.size() == v.counts.size());
    for (const auto& [token, count] : v.counts) {
        CHECK(loaded.count(token) == count);
    }
    std::filesystem::remove(path);
}

TEST_CASE("load rejects negative counts") {
    const auto path = temp_file("codemix_vocab_negative.jsonl");
    {
        std::ofstream out(path);
        out << R"({"pair":"en-hi","total_tokens":1})" << "\n";
        out << R"({"token":"pani","count":-1})" << "\n";
    }
    CHECK_THROWS_AS(load_vocab(path), FormatError);
    std::filesystem::remove(path);
}

TEST_CASE("load rejects a header/count mismatch") {
    const auto path = temp_file("codemix_vocab_mismatch.jsonl");
    {
        std::ofstream out(path);
        out << R"({"pair":"en-hi","total_tokens":5})" << "\n";
        out << R"({"token":"pani","count":1})" << "\n";
    }
    CHECK_THROWS_AS(load_vocab(path), FormatError);
    std::filesystem::remove(path);
}

TEST_CASE("load of an empty file yields an empty vocab") {
    const auto path = temp_file("codemix_vocab_empty.jsonl");
    { std::ofstream out(path); }
    const FrequencyVocab v = load_vocab(path);
    CHECK(v.counts.empty());
    CHECK(v.total_tokens == 0);
    std::filesystem::remove(path);
}

TEST_CASE("save is deterministic") {
    std::istringstream corpus("b a c a\n");
    const FrequencyVocab v = build_vocab(corpus, LanguagePair::of("hi"));
    const auto path1 = temp_file("codemix_vocab_det1.jsonl");
    const auto path2 = temp_file("codemix_vocab_det2.jsonl");
    save_vocab(v, path1);
    save_vocab(v, path2);
    std::ifstream f1(path1, std::ios::binary), f2(path2, std::ios::binary);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().find("\"token\":\"a\"") < s1.str().find("\"token\":\"b\""));
    std::filesystem::remove(path1);
    std::filesystem::remove(path2);
}
