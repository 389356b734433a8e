#pragma once

#include "bsid/models.hpp"

namespace bsid {

struct DecisionStump {
    int feature = -1;
    double threshold = 0.0;
    // +1: predict positive when value > threshold; -1: the reverse.
    int polarity = 1;

    int evaluate(std::span<const double> row) const {
        const bool right = row[static_cast<std::size_t>(feature)] > threshold;
        return (right ? 1 : -1) * polarity;
    }
};

// Boosted decision stumps with multiplicative sample reweighting. Training
// stops early when a round's weighted error reaches 0.5 (stump dropped) or 0
// (kept with a capped weight). With no usable rounds the model scores a
// constant 0 and predicts the majority class.
class AdaBoostModel final : public TrainedModel {
public:
    Family family() const override { return Family::AdaBoost; }
    double threshold() const override { return 0.0; }
    double score(std::span<const double> row) const override;
    int predict(std::span<const double> row) const override;

    std::vector<DecisionStump> stumps;
    std::vector<double> round_weights;
    int fallback_label = 0;
};

struct AdaBoostOptions {
    std::size_t rounds = 30;
};

// y entries must be -1 or +1.
std::unique_ptr<AdaBoostModel> fit_adaboost(const Matrix& x, const std::vector<int>& y,
                                            const AdaBoostOptions& opt = {});

}  // namespace bsid
