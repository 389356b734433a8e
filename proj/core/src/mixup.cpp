#include "bsid/mixup.hpp"

#include <algorithm>
#include <string>

#include "bsid/errors.hpp"

namespace bsid {

void mixup_pair(std::span<const double> x1, std::span<const double> x2, double y1, double y2,
                double lambda, std::span<double> x_out, double& y_out) {
    if (x1.size() != x2.size() || x_out.size() != x1.size()) {
        throw ShapeError("mixup_pair: vector lengths " + std::to_string(x1.size()) + ", " +
                         std::to_string(x2.size()) + ", " + std::to_string(x_out.size()));
    }
    if (lambda < 0.0 || lambda > 1.0) throw ParamError("mixup_pair: lambda outside [0,1]");
    const double mu = 1.0 - lambda;
    for (std::size_t i = 0; i < x1.size(); ++i) {
        const double lo = std::min(x1[i], x2[i]);
        const double hi = std::max(x1[i], x2[i]);
        x_out[i] = std::clamp(lambda * x1[i] + mu * x2[i], lo, hi);
    }
    y_out = std::clamp(lambda * y1 + mu * y2, std::min(y1, y2), std::max(y1, y2));
}

AugmentedSet augment_training(const Matrix& x, const std::vector<double>& y,
                              const MixupConfig& cfg, const Rng& rng) {
    if (x.rows() == 0) throw ParamError("augment_training: empty input");
    if (y.size() != x.rows()) {
        throw ShapeError("augment_training: labels " + std::to_string(y.size()) + " vs rows " +
                         std::to_string(x.rows()));
    }
    if (cfg.alpha <= 0.0 || cfg.beta <= 0.0) {
        throw ParamError("augment_training: Beta shape parameters must be > 0");
    }

    std::vector<std::size_t> class_members[2];
    if (cfg.mode == MixupMode::IntraClass) {
        for (std::size_t i = 0; i < y.size(); ++i) {
            class_members[y[i] >= 0.5 ? 1 : 0].push_back(i);
        }
        if (class_members[0].size() < 2 || class_members[1].size() < 2) {
            throw DataError("augment_training: intra-class mode needs >= 2 members per class");
        }
    }

    const std::size_t n = x.rows();
    const std::size_t synthetic = cfg.pairs * cfg.copies_per_pair;
    AugmentedSet out;
    out.original_count = n;
    out.features = Matrix(n + synthetic, x.cols());
    out.soft_labels.assign(n + synthetic, 0.0);

    std::copy(x.flat().begin(), x.flat().end(), out.features.flat().begin());
    std::copy(y.begin(), y.end(), out.soft_labels.begin());

    for (std::size_t p = 0; p < cfg.pairs; ++p) {
        Rng pair_rng = rng.child(p);
        std::size_t i;
        std::size_t j;
        if (cfg.mode == MixupMode::IntraClass) {
            const auto& members = class_members[pair_rng.below(2)];
            i = members[pair_rng.below(members.size())];
            j = members[pair_rng.below(members.size())];
        } else {
            i = static_cast<std::size_t>(pair_rng.below(n));
            j = static_cast<std::size_t>(pair_rng.below(n));
        }
        for (std::size_t c = 0; c < cfg.copies_per_pair; ++c) {
            const double lambda = beta_sample(pair_rng, cfg.alpha, cfg.beta);
            const std::size_t dst = n + p * cfg.copies_per_pair + c;
            mixup_pair(x.row(i), x.row(j), y[i], y[j], lambda, out.features.row(dst),
                       out.soft_labels[dst]);
        }
    }
    return out;
}

std::vector<int> harden_labels(const std::vector<double>& soft, double threshold) {
    std::vector<int> out(soft.size(), 0);
    for (std::size_t i = 0; i < soft.size(); ++i) {
        if (soft[i] < 0.0 || soft[i] > 1.0) {
            throw ParamError("harden_labels: value outside [0,1] at index " + std::to_string(i));
        }
        out[i] = soft[i] >= threshold ? 1 : 0;
    }
    return out;
}

}  // namespace bsid
