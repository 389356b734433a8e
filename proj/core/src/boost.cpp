#include "bsid/boost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsid/errors.hpp"

namespace bsid {

double AdaBoostModel::score(std::span<const double> row) const {
    double s = 0.0;
    for (std::size_t t = 0; t < stumps.size(); ++t) {
        s += round_weights[t] * stumps[t].evaluate(row);
    }
    return s;
}

int AdaBoostModel::predict(std::span<const double> row) const {
    if (stumps.empty()) return fallback_label;
    return score(row) >= 0.0 ? 1 : 0;
}

std::unique_ptr<AdaBoostModel> fit_adaboost(const Matrix& x, const std::vector<int>& y,
                                            const AdaBoostOptions& opt) {
    if (x.rows() == 0) throw ParamError("fit_adaboost: empty training set");
    if (y.size() != x.rows()) {
        throw ShapeError("fit_adaboost: " + std::to_string(y.size()) + " labels for " +
                         std::to_string(x.rows()) + " rows");
    }
    for (int v : y) {
        if (v != 1 && v != -1) throw ParamError("fit_adaboost: labels must be -1 or +1");
    }

    const std::size_t n = x.rows();
    const std::size_t d = x.cols();

    // Sort order per feature is reused by every round.
    std::vector<std::vector<std::uint32_t>> order(d);
    for (std::size_t f = 0; f < d; ++f) {
        auto& idx = order[f];
        idx.resize(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
        std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
            return x(a, f) < x(b, f);
        });
    }

    auto model = std::make_unique<AdaBoostModel>();
    std::size_t positives = 0;
    for (int v : y) positives += v > 0 ? 1u : 0u;
    model->fallback_label = positives * 2 >= n ? 1 : 0;

    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    constexpr double kErrFloor = 1e-12;

    for (std::size_t round = 0; round < opt.rounds; ++round) {
        DecisionStump best;
        double best_err = 0.5;
        bool found = false;

        double total_pos_weight = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (y[i] > 0) total_pos_weight += weights[i];
        }

        for (std::size_t f = 0; f < d; ++f) {
            const auto& idx = order[f];
            // err of "everything right of the threshold is positive" starts
            // with the whole set on the right.
            double pos_left = 0.0;
            double neg_left = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const std::uint32_t at = idx[i];
                if (y[at] > 0) {
                    pos_left += weights[at];
                } else {
                    neg_left += weights[at];
                }
                const double v = x(at, f);
                const double next = x(idx[i + 1], f);
                if (v == next) continue;
                const double err_right_pos = pos_left + ((1.0 - total_pos_weight) - neg_left);
                const double err_left_pos = 1.0 - err_right_pos;
                const double threshold = v + 0.5 * (next - v);
                if (err_right_pos < best_err - 1e-15) {
                    best_err = err_right_pos;
                    best = {static_cast<int>(f), threshold, 1};
                    found = true;
                }
                if (err_left_pos < best_err - 1e-15) {
                    best_err = err_left_pos;
                    best = {static_cast<int>(f), threshold, -1};
                    found = true;
                }
            }
        }

        if (!found) break;  // no stump beats chance on these weights

        const double err = std::max(best_err, kErrFloor);
        const double alpha = 0.5 * std::log((1.0 - err) / err);
        model->stumps.push_back(best);
        model->round_weights.push_back(alpha);

        if (best_err <= kErrFloor) break;  // perfect stump

        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            weights[i] *= std::exp(-alpha * y[i] * best.evaluate(x.row(i)));
            norm += weights[i];
        }
        for (double& w : weights) w /= norm;
    }
    return model;
}

}  // namespace bsid
