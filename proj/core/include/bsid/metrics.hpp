#pragma once

#include <string>
#include <vector>

#include "bsid/dataset.hpp"

namespace bsid {

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
};

// Percent-scale metrics for one validation fold.
struct FoldMetrics {
    ConfusionMatrix confusion;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double auc = 0.0;
};

// Positive-class metrics at the given score threshold; AUC by the rank
// statistic with ties sharing their mean rank. Requires at least one positive
// and one negative label.
FoldMetrics compute_metrics(const std::vector<int>& labels, const std::vector<double>& scores,
                            double threshold);

// Rank-statistic AUC in [0,1].
double auc_rank(const std::vector<int>& labels, const std::vector<double>& scores);

// Percent accuracy of the constant negative predictor: 100 * (1 - prevalence).
double all_negative_baseline(const Dataset& ds);

struct MetricSummary {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation over folds
};

MetricSummary summarize(const std::vector<double>& values);

}  // namespace bsid
