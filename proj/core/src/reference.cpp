#include "bsid/reference.hpp"

namespace bsid {

const std::vector<ReferenceRow>& reference_results() {
    static const std::vector<ReferenceRow> rows = {
        {Variant::Original, Family::Poisson, 74.93, 3.20, 19.14, 1.67, 14.51, 2.08, 16.51, 2.54, 50.94, 4.12},
        {Variant::Original, Family::NaiveBayes, 56.74, 4.06, 18.95, 2.98, 46.77, 2.70, 26.97, 4.03, 52.78, 3.85},
        {Variant::Original, Family::GaussianProcess, 69.14, 2.81, 15.27, 3.02, 17.74, 3.22, 16.41, 3.14, 48.73, 2.67},
        {Variant::Original, Family::Knn, 68.31, 2.85, 14.66, 2.33, 27.74, 3.18, 16.05, 2.63, 48.23, 2.98},
        {Variant::Original, Family::LinearSvm, 68.04, 3.12, 14.28, 1.98, 0.16, 0.89, 0.28, 1.06, 49.80, 2.77},
        {Variant::Original, Family::DecisionTree, 76.03, 2.72, 30.15, 2.09, 30.64, 2.78, 30.41, 2.63, 58.01, 3.12},
        {Variant::Original, Family::RandomForest, 80.71, 1.94, 40.01, 2.48, 25.81, 2.09, 31.37, 2.63, 58.91, 1.98},
        {Variant::Original, Family::ExtraTrees, 77.96, 2.47, 33.33, 2.73, 29.03, 2.28, 31.03, 2.67, 58.53, 2.42},
        {Variant::Original, Family::AdaBoost, 53.16, 3.34, 17.07, 2.89, 45.16, 2.18, 25.92, 3.14, 51.65, 4.21},
        {Variant::Original, Family::Mlp, 79.61, 2.47, 25.00, 1.83, 10.67, 0.75, 13.96, 1.01, 51.84, 2.11},

        {Variant::Onehot, Family::Poisson, 70.24, 0.83, 14.62, 1.27, 14.51, 0.92, 14.28, 1.04, 48.12, 1.11},
        {Variant::Onehot, Family::NaiveBayes, 48.23, 0.62, 21.19, 0.87, 79.03, 1.23, 34.26, 0.94, 60.44, 1.08},
        {Variant::Onehot, Family::GaussianProcess, 79.33, 1.01, 21.73, 0.84, 0.181, 0.06, 19.54, 1.02, 51.04, 0.92},
        {Variant::Onehot, Family::Knn, 71.62, 1.14, 16.39, 0.79, 16.12, 0.98, 16.26, 1.01, 49.59, 0.89},
        {Variant::Onehot, Family::LinearSvm, 82.92, 0.98, 50.01, 1.33, 30.64, 0.96, 28.02, 0.91, 61.16, 1.22},
        {Variant::Onehot, Family::DecisionTree, 73.55, 1.02, 20.68, 0.91, 19.35, 0.83, 19.99, 0.95, 52.03, 0.99},
        {Variant::Onehot, Family::RandomForest, 80.16, 0.94, 38.63, 1.12, 27.41, 0.79, 32.07, 0.87, 59.22, 1.09},
        {Variant::Onehot, Family::ExtraTrees, 81.26, 1.05, 43.24, 0.98, 25.81, 0.86, 32.32, 1.01, 59.41, 1.11},
        {Variant::Onehot, Family::AdaBoost, 54.26, 0.92, 17.81, 0.77, 43.28, 0.99, 24.54, 0.88, 50.01, 0.91},
        {Variant::Onehot, Family::Mlp, 28.65, 0.78, 18.32, 0.89, 91.93, 1.34, 30.56, 0.93, 53.77, 1.01},

        {Variant::Augmented, Family::Poisson, 36.63, 2.50, 13.79, 1.08, 51.61, 3.20, 21.76, 2.11, 44.49, 2.58},
        {Variant::Augmented, Family::NaiveBayes, 50.13, 2.91, 22.58, 1.15, 79.03, 3.36, 35.12, 2.44, 61.69, 4.72},
        {Variant::Augmented, Family::GaussianProcess, 66.94, 2.30, 20.40, 1.59, 32.25, 2.98, 25.00, 2.29, 53.27, 3.13},
        {Variant::Augmented, Family::Knn, 63.25, 2.02, 14.85, 1.56, 24.19, 2.26, 18.42, 1.90, 47.81, 2.60},
        {Variant::Augmented, Family::LinearSvm, 68.61, 2.45, 26.36, 2.12, 46.77, 2.84, 33.72, 2.50, 59.93, 3.35},
        {Variant::Augmented, Family::RbfSvm, 81.81, 3.10, 43.75, 2.63, 22.25, 1.89, 29.78, 2.29, 58.31, 3.70},
        {Variant::Augmented, Family::DecisionTree, 69.42, 2.21, 21.83, 1.82, 30.64, 2.92, 25.52, 2.08, 54.02, 2.73},
        {Variant::Augmented, Family::RandomForest, 79.33, 2.74, 37.73, 2.31, 32.25, 2.25, 34.78, 2.42, 60.64, 3.14},
        {Variant::Augmented, Family::ExtraTrees, 82.36, 2.83, 45.45, 2.57, 16.12, 1.71, 24.44, 2.03, 56.07, 2.79},
        {Variant::Augmented, Family::AdaBoost, 69.69, 2.41, 26.11, 2.06, 41.93, 2.68, 32.09, 2.93, 58.67, 3.00},
        {Variant::Augmented, Family::Mlp, 78.23, 2.62, 36.92, 2.63, 38.79, 2.54, 37.77, 2.49, 62.54, 3.21},

        {Variant::Proposed, Family::Proposed, 84.02, 0.49, 52.85, 1.51, 59.67, 0.99, 56.06, 1.31, 74.35, 1.92},
    };
    return rows;
}

std::optional<ReferenceRow> reference_for(Variant variant, Family family) {
    for (const auto& row : reference_results()) {
        if (row.variant == variant && row.family == family) return row;
    }
    return std::nullopt;
}

}  // namespace bsid
