#pragma once

#include "bsid/models.hpp"

namespace bsid {

// Kernel ridge regression on +-1 targets with an RBF kernel: the scalable
// stand-in for Gaussian-process classification. Score is the regressed value
// sum_i c_i K(x_i, x), thresholded at 0.
class KernelRidgeModel final : public TrainedModel {
public:
    Family family() const override { return Family::GaussianProcess; }
    double threshold() const override { return 0.0; }
    double score(std::span<const double> row) const override;

    Matrix basis;
    std::vector<double> coefficients;
    double gamma = 32.0;
    double ridge_used = 0.0;
};

struct KernelRidgeOptions {
    double gamma = 32.0;
    double ridge = 0.1;
    std::size_t cap = 4000;
    std::uint64_t seed = 0;
};

// Solves (K + ridge*I) c = y by Cholesky; the ridge escalates tenfold up to
// six times before NumericalError. Training sets above `cap` rows are cut to
// a seeded stratified subsample (recorded on the model).
std::unique_ptr<KernelRidgeModel> fit_gp_surrogate(const Matrix& x, const std::vector<int>& y,
                                                   const KernelRidgeOptions& opt = {});

// In-place Cholesky solve of (A)x = b for symmetric positive-definite A.
// Returns false if a pivot fails.
bool cholesky_solve(Matrix a, std::vector<double> b, std::vector<double>& out);

}  // namespace bsid
