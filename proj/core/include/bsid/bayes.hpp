#pragma once

#include "bsid/models.hpp"

namespace bsid {

// Gaussian naive Bayes over real-valued features with a variance floor of
// 1e-9 times the largest overall feature variance.
class GaussianNbModel final : public TrainedModel {
public:
    Family family() const override { return Family::NaiveBayes; }
    double threshold() const override { return 0.5; }
    // Posterior probability of the positive class.
    double score(std::span<const double> row) const override;

    double log_prior[2] = {0.0, 0.0};
    std::vector<double> mean[2];
    std::vector<double> variance[2];  // floored
};

std::unique_ptr<GaussianNbModel> fit_gaussian_nb(const Matrix& x, const std::vector<int>& y);

}  // namespace bsid
