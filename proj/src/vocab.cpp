#include "codemix/vocab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <vector>

#include "json.hpp"

namespace codemix {

using nlohmann::json;

FrequencyVocab build_vocab(std::istream& corpus, const LanguagePair& pair,
                           VocabBuildStats* stats) {
    FrequencyVocab vocab;
    vocab.pair = pair;
    std::string line;
    while (std::getline(corpus, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (stats) ++stats->lines;
        if (!utf8::valid(line)) {
            if (stats) ++stats->skipped_non_utf8;
            continue;
        }
        for (std::string& token : preprocess(line).tokens) {
            ++vocab.counts[std::move(token)];
            ++vocab.total_tokens;
        }
    }
    if (corpus.bad()) throw IoError("failed reading corpus stream");
    return vocab;
}

FrequencyVocab merge_vocabs(const FrequencyVocab& a, const FrequencyVocab& b) {
    if (a.pair != b.pair) throw FormatError("cannot merge vocabularies of different pairs");
    FrequencyVocab merged = a;
    for (const auto& [token, count] : b.counts) {
        merged.counts[token] += count;
    }
    merged.total_tokens += b.total_tokens;
    return merged;
}

Score score_entry(const WordEntry& entry, const FrequencyVocab& vocab,
                  bool lookup_base_form) {
    const NormalizedSentence eng =
        preprocess(lookup_base_form && !entry.base_eng.empty() ? entry.base_eng : entry.eng);
    const std::uint64_t f_en = vocab.count(eng.text);

    // A model occasionally repeats a spelling; count each distinct variant once.
    std::set<std::string> variants;
    for (const std::string& v : entry.roman_variants) {
        variants.insert(preprocess(v).text);
    }
    std::uint64_t f_x = 0;
    for (const std::string& v : variants) {
        f_x += vocab.count(v);
    }
    if (f_x == 0) return Score::infinite();
    return Score::finite(static_cast<double>(f_en) / static_cast<double>(f_x));
}

void save_vocab(const FrequencyVocab& vocab, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open vocab file for writing: " + path.string());

    json header = {{"pair", vocab.pair.code()}, {"total_tokens", vocab.total_tokens}};
    out << header.dump() << '\n';

    std::vector<const std::pair<const std::string, std::uint64_t>*> sorted;
    sorted.reserve(vocab.counts.size());
    for (const auto& kv : vocab.counts) sorted.push_back(&kv);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    for (const auto* kv : sorted) {
        json row = {{"token", kv->first}, {"count", kv->second}};
        out << row.dump() << '\n';
    }
    if (!out) throw IoError("failed writing vocab file: " + path.string());
}

FrequencyVocab load_vocab(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open vocab file: " + path.string());

    FrequencyVocab vocab;
    std::string line;
    bool have_header = false;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::parse_error& e) {
            throw FormatError("vocab file line " + std::to_string(line_no) +
                              " is not valid JSON: " + e.what());
        }
        if (!have_header) {
            if (!doc.contains("pair") || !doc.contains("total_tokens")) {
                throw FormatError("vocab file missing header line");
            }
            vocab.pair = LanguagePair::parse(doc.at("pair").get<std::string>());
            if (!doc.at("total_tokens").is_number_unsigned()) {
                throw FormatError("vocab header total_tokens must be a non-negative integer");
            }
            vocab.total_tokens = doc.at("total_tokens").get<std::uint64_t>();
            have_header = true;
            continue;
        }
        if (!doc.contains("token") || !doc.contains("count")) {
            throw FormatError("vocab file line " + std::to_string(line_no) +
                              " missing token or count");
        }
        if (!doc.at("count").is_number_unsigned()) {
            throw FormatError("vocab file line " + std::to_string(line_no) +
                              " has a negative or non-integer count");
        }
        vocab.counts[doc.at("token").get<std::string>()] += doc.at("count").get<std::uint64_t>();
    }
    if (in.bad()) throw IoError("failed reading vocab file: " + path.string());

    std::uint64_t sum = 0;
    for (const auto& [_, count] : vocab.counts) sum += count;
    if (have_header && sum != vocab.total_tokens) {
        throw FormatError("vocab counts sum to " + std::to_string(sum) +
                          " but header declares " + std::to_string(vocab.total_tokens));
    }
    if (!have_header) vocab.total_tokens = 0;
    return vocab;
}

} // namespace codemix
