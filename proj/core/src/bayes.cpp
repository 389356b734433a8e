#include "bsid/bayes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bsid/errors.hpp"

namespace bsid {

double GaussianNbModel::score(std::span<const double> row) const {
    double log_post[2];
    for (int c = 0; c < 2; ++c) {
        double ll = log_prior[c];
        const auto& mu = mean[c];
        const auto& var = variance[c];
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double d = row[j] - mu[j];
            ll -= 0.5 * (std::log(2.0 * std::numbers::pi * var[j]) + d * d / var[j]);
        }
        log_post[c] = ll;
    }
    const double m = std::max(log_post[0], log_post[1]);
    const double z0 = std::exp(log_post[0] - m);
    const double z1 = std::exp(log_post[1] - m);
    return z1 / (z0 + z1);
}

std::unique_ptr<GaussianNbModel> fit_gaussian_nb(const Matrix& x, const std::vector<int>& y) {
    if (y.size() != x.rows()) {
        throw ShapeError("fit_gaussian_nb: " + std::to_string(y.size()) + " labels for " +
                         std::to_string(x.rows()) + " rows");
    }
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    std::size_t counts[2] = {0, 0};
    for (int label : y) counts[label ? 1 : 0]++;
    if (counts[0] == 0 || counts[1] == 0) {
        throw DataError("fit_gaussian_nb: training data contains a single class");
    }

    auto model = std::make_unique<GaussianNbModel>();
    for (int c = 0; c < 2; ++c) {
        model->log_prior[c] = std::log(static_cast<double>(counts[c]) / static_cast<double>(n));
        model->mean[c].assign(d, 0.0);
        model->variance[c].assign(d, 0.0);
    }

    for (std::size_t i = 0; i < n; ++i) {
        const int c = y[i] ? 1 : 0;
        const auto row = x.row(i);
        for (std::size_t j = 0; j < d; ++j) model->mean[c][j] += row[j];
    }
    for (int c = 0; c < 2; ++c) {
        for (double& m : model->mean[c]) m /= static_cast<double>(counts[c]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const int c = y[i] ? 1 : 0;
        const auto row = x.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double dm = row[j] - model->mean[c][j];
            model->variance[c][j] += dm * dm;
        }
    }

    // Floor against the largest overall feature variance.
    double max_var = 0.0;
    std::vector<double> overall_mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = x.row(i);
        for (std::size_t j = 0; j < d; ++j) overall_mean[j] += row[j];
    }
    for (double& m : overall_mean) m /= static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dm = x(i, j) - overall_mean[j];
            v += dm * dm;
        }
        max_var = std::max(max_var, v / static_cast<double>(n));
    }
    const double floor = std::max(1e-9 * max_var, 1e-12);

    for (int c = 0; c < 2; ++c) {
        for (double& v : model->variance[c]) {
            v = std::max(v / static_cast<double>(counts[c]), floor);
        }
    }
    return model;
}

}  // namespace bsid
