#pragma once

#include "bsid/models.hpp"

namespace bsid {

// e^(-lambda) * lambda^k / k!, evaluated in log space.
double poisson_pmf(std::uint64_t k, double lambda);

class PoissonRegressionModel final : public TrainedModel {
public:
    Family family() const override { return Family::Poisson; }
    double threshold() const override { return 0.5; }
    // Predicted event rate exp(intercept + x . coefficients).
    double score(std::span<const double> row) const override;

    double intercept = 0.0;
    std::vector<double> coefficients;
    std::size_t iterations = 0;
    double final_gradient_norm = 0.0;
};

struct PoissonFitOptions {
    double alpha = 0.9;       // L2 penalty on the slopes (intercept free)
    double tol = 1e-5;        // gradient-norm stopping rule
    std::size_t max_iterations = 500;
    std::size_t history = 10; // limited-memory pairs for the two-loop recursion
};

// Maximizes the penalized Poisson log-likelihood with a log link via
// limited-memory quasi-Newton iteration. Throws ConvergenceError (carrying
// the final gradient norm) if the tolerance is not met in max_iterations.
std::unique_ptr<PoissonRegressionModel> fit_poisson_regression(const Matrix& x,
                                                               const std::vector<int>& y,
                                                               const PoissonFitOptions& opt = {});

}  // namespace bsid
