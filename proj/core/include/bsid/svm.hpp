#pragma once

#include "bsid/models.hpp"

namespace bsid {

// Soft-margin linear SVM trained by deterministic Pegasos-style subgradient
// descent with a seeded sample order. Score is the signed margin w.x + b.
class LinearSvmModel final : public TrainedModel {
public:
    Family family() const override { return Family::LinearSvm; }
    double threshold() const override { return 0.0; }
    double score(std::span<const double> row) const override;

    std::vector<double> weights;
    double bias = 0.0;
};

struct LinearSvmOptions {
    double c = 1.0;
    std::size_t epochs = 20;
    bool fit_bias = true;
    std::uint64_t seed = 0;
};

// y entries must be -1 or +1.
std::unique_ptr<LinearSvmModel> fit_linear_svm(const Matrix& x, const std::vector<int>& y,
                                               const LinearSvmOptions& opt = {});

// Mean hinge loss max(0, 1 - y*(w.x+b)) of a fitted model.
double mean_hinge_loss(const LinearSvmModel& model, const Matrix& x, const std::vector<int>& y);

// Kernel SVM trained by sequential minimal optimization on the dual, with a
// seeded stratified subsample when the training set exceeds `cap`.
class RbfSvmModel final : public TrainedModel {
public:
    Family family() const override { return Family::RbfSvm; }
    double threshold() const override { return 0.0; }
    double score(std::span<const double> row) const override;

    Matrix support_vectors;
    std::vector<double> alpha_y;  // alpha_i * y_i per support vector
    double bias = 0.0;
    double gamma = 32.0;
    std::size_t smo_passes = 0;

    // Full dual solution before support-vector compaction, for KKT checks.
    std::vector<double> alphas;
    std::vector<int> train_y;
};

struct RbfSvmOptions {
    double gamma = 32.0;
    double c = 1.0;
    std::size_t cap = 4000;
    double kkt_tol = 1e-3;
    std::size_t max_passes = 2000;
    std::uint64_t seed = 0;
};

std::unique_ptr<RbfSvmModel> fit_rbf_svm(const Matrix& x, const std::vector<int>& y,
                                         const RbfSvmOptions& opt = {});

}  // namespace bsid
