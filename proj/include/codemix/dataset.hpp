#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "codemix/core.hpp"

namespace codemix {

/// One parallel record: an English sentence and its gold-standard
/// code-mixed counterpart.
struct DatasetRecord {
    std::string id;
    LanguagePair pair;
    std::string english;
    std::string codemixed;
    std::string source; // gupta2020 | twitter-corrected | other
};

struct DatasetViolation {
    size_t line = 0;
    std::string message;
};

/// Parse a JSONL dataset stream. Schema violations are collected per line;
/// valid records are still returned.
std::vector<DatasetRecord> load_dataset(std::istream& in,
                                        std::vector<DatasetViolation>* violations = nullptr);

struct DatasetStats {
    std::map<std::string, size_t> per_pair;
    size_t total = 0;
    size_t duplicates = 0; // identical (pair, english, codemixed) triples
};

DatasetStats dataset_stats(const std::vector<DatasetRecord>& records);

} // namespace codemix
