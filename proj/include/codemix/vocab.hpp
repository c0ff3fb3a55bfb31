#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <unordered_map>

#include "codemix/core.hpp"
#include "codemix/providers.hpp"

namespace codemix {

/// Token frequency table built from a real-world code-mixed corpus.
struct FrequencyVocab {
    LanguagePair pair;
    std::unordered_map<std::string, std::uint64_t> counts;
    std::uint64_t total_tokens = 0;

    std::uint64_t count(const std::string& normalized_token) const {
        auto it = counts.find(normalized_token);
        return it == counts.end() ? 0 : it->second;
    }
};

struct VocabBuildStats {
    std::uint64_t lines = 0;
    std::uint64_t skipped_non_utf8 = 0;
};

/// Count token occurrences over a one-utterance-per-line corpus. Lines are
/// preprocessed before counting; non-UTF-8 lines are skipped and counted in
/// stats.
FrequencyVocab build_vocab(std::istream& corpus, const LanguagePair& pair,
                           VocabBuildStats* stats = nullptr);

/// Merge per-shard counts; pairs must agree.
FrequencyVocab merge_vocabs(const FrequencyVocab& a, const FrequencyVocab& b);

/// Replacement priority for a word: the English count divided by the summed
/// counts of the matrix word's spelling variants. Infinite when no variant
/// occurs in the corpus, and infinite sorts above every finite score.
struct Score {
    double value = 0.0;

    static Score infinite() { return {std::numeric_limits<double>::infinity()}; }
    static Score finite(double v) { return {v}; }
    bool is_infinite() const { return std::isinf(value); }

    auto operator<=>(const Score&) const = default;
};

/// The English count uses the surface word; looking up the lemma instead is
/// opt-in.
Score score_entry(const WordEntry& entry, const FrequencyVocab& vocab,
                  bool lookup_base_form = false);

/// Vocab file format: one JSON header line {"pair","total_tokens"} followed
/// by one {"token","count"} line per token, sorted by token bytes.
void save_vocab(const FrequencyVocab& vocab, const std::filesystem::path& path);
FrequencyVocab load_vocab(const std::filesystem::path& path);

} // namespace codemix
