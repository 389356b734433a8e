#pragma once

#include <vector>

#include "bsid/matrix.hpp"
#include "bsid/rng.hpp"

namespace bsid {

enum class MixupMode { Uniform, IntraClass };

struct MixupConfig {
    std::size_t pairs = 6000;
    std::size_t copies_per_pair = 11;
    double alpha = 0.2;
    double beta = 0.2;
    MixupMode mode = MixupMode::Uniform;
};

// x' = lambda*x1 + (1-lambda)*x2, y' likewise; lambda in [0,1].
void mixup_pair(std::span<const double> x1, std::span<const double> x2, double y1, double y2,
                double lambda, std::span<double> x_out, double& y_out);

struct AugmentedSet {
    Matrix features;                 // originals first, then synthetic rows
    std::vector<double> soft_labels; // same ordering
    std::size_t original_count = 0;
};

// Appends pairs x copies_per_pair synthetic rows; each synthetic sample draws
// a fresh Beta(alpha, beta) lambda from its own derived stream, so the result
// is independent of construction order.
AugmentedSet augment_training(const Matrix& x, const std::vector<double>& y,
                              const MixupConfig& cfg, const Rng& rng);

// label = 1 iff soft >= threshold (ties go positive).
std::vector<int> harden_labels(const std::vector<double>& soft, double threshold = 0.5);

}  // namespace bsid
