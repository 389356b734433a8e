#include "bsid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bsid/errors.hpp"

namespace bsid {

double auc_rank(const std::vector<int>& labels, const std::vector<double>& scores) {
    const std::size_t n = labels.size();
    std::size_t n_pos = 0;
    for (int y : labels) n_pos += static_cast<std::size_t>(y);
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw DataError("auc_rank: needs at least one positive and one negative label");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Tied scores share the mean of their positional ranks (1-based).
    double positive_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double mean_rank = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]]) positive_rank_sum += mean_rank;
        }
        i = j + 1;
    }
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

FoldMetrics compute_metrics(const std::vector<int>& labels, const std::vector<double>& scores,
                            double threshold) {
    if (labels.size() != scores.size()) {
        throw ShapeError("compute_metrics: " + std::to_string(labels.size()) + " labels vs " +
                         std::to_string(scores.size()) + " scores");
    }
    FoldMetrics m;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool predicted = scores[i] >= threshold;
        if (labels[i]) {
            predicted ? ++m.confusion.tp : ++m.confusion.fn;
        } else {
            predicted ? ++m.confusion.fp : ++m.confusion.tn;
        }
    }
    const auto& c = m.confusion;
    const double n = static_cast<double>(c.total());
    m.accuracy = 100.0 * static_cast<double>(c.tp + c.tn) / n;
    m.precision = c.tp + c.fp == 0
                      ? 0.0
                      : 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    m.recall = c.tp + c.fn == 0
                   ? 0.0
                   : 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    m.f1 = m.precision + m.recall == 0.0
               ? 0.0
               : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    m.auc = 100.0 * auc_rank(labels, scores);
    return m;
}

double all_negative_baseline(const Dataset& ds) {
    if (ds.row_count() == 0) throw DataError("all_negative_baseline: empty dataset");
    const double prevalence =
        static_cast<double>(ds.positive_count()) / static_cast<double>(ds.row_count());
    return 100.0 * (1.0 - prevalence);
}

MetricSummary summarize(const std::vector<double>& values) {
    MetricSummary s;
    if (values.empty()) return s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

}  // namespace bsid
