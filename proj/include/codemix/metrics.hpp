#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "codemix/errors.hpp"

namespace codemix {

enum class Smoothing { None, Add1, Epsilon };

/// Sentence-level BLEU with modified n-gram precision and brevity penalty.
/// The n-gram order is capped at 4 and reduced to the hypothesis length for
/// short sentences, so an exact match always scores 1.
struct BleuScore {
    double value = 0.0;
    std::array<double, 4> precisions{}; // unused orders stay 0
    double brevity_penalty = 1.0;
    int effective_order = 0;
};

BleuScore sentence_bleu(const std::vector<std::string>& reference,
                        const std::vector<std::string>& hypothesis,
                        Smoothing smoothing = Smoothing::Add1);

/// One English sentence's reference set and hypothesis set for best-pair
/// corpus BLEU.
struct BleuGroup {
    std::vector<std::vector<std::string>> references;
    std::vector<std::vector<std::string>> hypotheses;
};

/// Per group, select the (reference, hypothesis) pair with the highest
/// sentence BLEU, then compute corpus BLEU over the selected pairs with
/// pooled n-gram statistics and pooled brevity penalty.
double corpus_bleu_best_pair(const std::vector<BleuGroup>& groups,
                             Smoothing smoothing = Smoothing::Add1);

/// Selected pair indices, exposed for auditing the best-pair choice.
struct PairSelection {
    size_t reference_index = 0;
    size_t hypothesis_index = 0;
    double bleu = 0.0;
};

std::vector<PairSelection> select_best_pairs(const std::vector<BleuGroup>& groups,
                                             Smoothing smoothing = Smoothing::Add1);

enum class StddevMode { Population, Sample };

struct GroupStats {
    std::vector<double> scores;
    double mean = 0.0;
    double stddev = 0.0;
};

GroupStats group_stddev(const std::vector<double>& scores,
                        StddevMode mode = StddevMode::Population);

/// Per-metric robustness summary over aligned score groups.
struct MetricReport {
    std::string metric;
    std::vector<GroupStats> groups;
    double average_stddev = 0.0;
    double average_score = 0.0;
};

std::vector<MetricReport> compare_metrics(
    const std::map<std::string, std::vector<std::vector<double>>>& groups_per_metric,
    StddevMode mode = StddevMode::Population);

} // namespace codemix
