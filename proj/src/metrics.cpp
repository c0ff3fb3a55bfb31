#include "codemix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace codemix {

namespace {

constexpr int kMaxOrder = 4;
constexpr double kEpsilonSmoothing = 0.1;

using NgramCounts = std::unordered_map<std::string, std::uint64_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int n) {
    NgramCounts counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key;
        for (int k = 0; k < n; ++k) {
            if (k) key.push_back('\x1f'); // unit separator keeps tokens distinct
            key += tokens[i + k];
        }
        ++counts[key];
    }
    return counts;
}

struct OrderStats {
    std::uint64_t matched = 0; // clipped matches
    std::uint64_t total = 0;   // hypothesis n-grams
};

OrderStats clipped_matches(const std::vector<std::string>& reference,
                           const std::vector<std::string>& hypothesis, int n) {
    OrderStats stats;
    NgramCounts hyp = count_ngrams(hypothesis, n);
    if (hyp.empty()) return stats;
    NgramCounts ref = count_ngrams(reference, n);
    for (const auto& [gram, count] : hyp) {
        stats.total += count;
        auto it = ref.find(gram);
        if (it != ref.end()) stats.matched += std::min(count, it->second);
    }
    return stats;
}

double smoothed_precision(const OrderStats& stats, int order, Smoothing smoothing) {
    const double num = static_cast<double>(stats.matched);
    const double den = static_cast<double>(std::max<std::uint64_t>(stats.total, 1));
    switch (smoothing) {
    case Smoothing::None:
        return num / den;
    case Smoothing::Add1:
        if (order >= 2) return (num + 1.0) / (den + 1.0);
        return num / den;
    case Smoothing::Epsilon:
        if (stats.matched == 0) return kEpsilonSmoothing / den;
        return num / den;
    }
    return num / den;
}

double brevity_penalty(std::uint64_t reference_len, std::uint64_t hypothesis_len) {
    if (hypothesis_len >= reference_len) return 1.0;
    return std::exp(1.0 - static_cast<double>(reference_len) /
                              static_cast<double>(hypothesis_len));
}

BleuScore combine(const std::array<OrderStats, kMaxOrder>& stats, int orders,
                  std::uint64_t ref_len, std::uint64_t hyp_len, Smoothing smoothing) {
    BleuScore score;
    score.effective_order = orders;
    score.brevity_penalty = brevity_penalty(ref_len, hyp_len);
    double log_sum = 0.0;
    bool zero = false;
    for (int n = 1; n <= orders; ++n) {
        double p = smoothed_precision(stats[n - 1], n, smoothing);
        score.precisions[n - 1] = p;
        if (p <= 0.0) {
            zero = true;
        } else {
            log_sum += std::log(p);
        }
    }
    score.value = zero ? 0.0 : score.brevity_penalty * std::exp(log_sum / orders);
    return score;
}

} // namespace

BleuScore sentence_bleu(const std::vector<std::string>& reference,
                        const std::vector<std::string>& hypothesis,
                        Smoothing smoothing) {
    if (reference.empty() || hypothesis.empty()) {
        throw EmptyInput("sentence_bleu requires non-empty token lists");
    }
    const int orders = std::min<int>(kMaxOrder, static_cast<int>(hypothesis.size()));
    std::array<OrderStats, kMaxOrder> stats{};
    for (int n = 1; n <= orders; ++n) {
        stats[n - 1] = clipped_matches(reference, hypothesis, n);
    }
    return combine(stats, orders, reference.size(), hypothesis.size(), smoothing);
}

std::vector<PairSelection> select_best_pairs(const std::vector<BleuGroup>& groups,
                                             Smoothing smoothing) {
    std::vector<PairSelection> selections;
    selections.reserve(groups.size());
    for (const auto& group : groups) {
        if (group.references.empty() || group.hypotheses.empty()) {
            throw EmptyInput("best-pair selection requires references and hypotheses");
        }
        PairSelection best;
        best.bleu = -1.0;
        for (size_t r = 0; r < group.references.size(); ++r) {
            for (size_t h = 0; h < group.hypotheses.size(); ++h) {
                double bleu =
                    sentence_bleu(group.references[r], group.hypotheses[h], smoothing).value;
                if (bleu > best.bleu) {
                    best = {r, h, bleu};
                }
            }
        }
        selections.push_back(best);
    }
    return selections;
}

double corpus_bleu_best_pair(const std::vector<BleuGroup>& groups, Smoothing smoothing) {
    if (groups.empty()) throw EmptyInput("corpus BLEU requires at least one group");
    const std::vector<PairSelection> selections = select_best_pairs(groups, smoothing);

    std::array<OrderStats, kMaxOrder> pooled{};
    std::uint64_t ref_len = 0;
    std::uint64_t hyp_len = 0;
    std::uint64_t shortest_hyp = UINT64_MAX;
    for (size_t g = 0; g < groups.size(); ++g) {
        const auto& ref = groups[g].references[selections[g].reference_index];
        const auto& hyp = groups[g].hypotheses[selections[g].hypothesis_index];
        ref_len += ref.size();
        hyp_len += hyp.size();
        shortest_hyp = std::min<std::uint64_t>(shortest_hyp, hyp.size());
        for (int n = 1; n <= kMaxOrder; ++n) {
            OrderStats s = clipped_matches(ref, hyp, n);
            pooled[n - 1].matched += s.matched;
            pooled[n - 1].total += s.total;
        }
    }
    const int orders = std::min<int>(kMaxOrder, static_cast<int>(shortest_hyp));
    return combine(pooled, std::max(orders, 1), ref_len, hyp_len, smoothing).value;
}

GroupStats group_stddev(const std::vector<double>& scores, StddevMode mode) {
    if (scores.empty()) throw InsufficientData("group statistics require at least one score");
    if (mode == StddevMode::Sample && scores.size() < 2) {
        throw InsufficientData("sample standard deviation requires at least two scores");
    }
    GroupStats stats;
    stats.scores = scores;
    double sum = 0.0;
    for (double s : scores) sum += s;
    stats.mean = sum / static_cast<double>(scores.size());
    double sq = 0.0;
    for (double s : scores) {
        const double d = s - stats.mean;
        sq += d * d;
    }
    const double denom = mode == StddevMode::Population
                             ? static_cast<double>(scores.size())
                             : static_cast<double>(scores.size() - 1);
    stats.stddev = std::sqrt(sq / denom);
    return stats;
}

std::vector<MetricReport> compare_metrics(
    const std::map<std::string, std::vector<std::vector<double>>>& groups_per_metric,
    StddevMode mode) {
    std::vector<MetricReport> reports;
    for (const auto& [metric, groups] : groups_per_metric) {
        MetricReport report;
        report.metric = metric;
        double stddev_sum = 0.0;
        double score_sum = 0.0;
        size_t score_count = 0;
        for (const auto& group : groups) {
            GroupStats stats = group_stddev(group, mode);
            stddev_sum += stats.stddev;
            for (double s : group) {
                score_sum += s;
                ++score_count;
            }
            report.groups.push_back(std::move(stats));
        }
        report.average_stddev =
            report.groups.empty() ? 0.0 : stddev_sum / static_cast<double>(report.groups.size());
        report.average_score = score_count == 0 ? 0.0 : score_sum / static_cast<double>(score_count);
        reports.push_back(std::move(report));
    }
    return reports;
}

} // namespace codemix
