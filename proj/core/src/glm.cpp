#include "bsid/glm.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "bsid/errors.hpp"

namespace bsid {

double poisson_pmf(std::uint64_t k, double lambda) {
    if (lambda <= 0.0) throw ParamError("poisson_pmf: lambda must be > 0");
    const double kd = static_cast<double>(k);
    return std::exp(-lambda + kd * std::log(lambda) - std::lgamma(kd + 1.0));
}

double PoissonRegressionModel::score(std::span<const double> row) const {
    return std::exp(intercept + dot(row, coefficients));
}

namespace {

// Objective: (1/n) sum_i [exp(eta_i) - y_i * eta_i] + (alpha/2) * ||w||^2,
// eta = b0 + x.w, intercept unpenalized. Gradient written into `grad`
// (intercept first). Returns +inf when the linear predictor overflows so the
// line search backs off.
double poisson_objective(const Matrix& x, const std::vector<int>& y, double alpha,
                         const std::vector<double>& params, std::vector<double>* grad) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const double inv_n = 1.0 / static_cast<double>(n);
    const double b0 = params[0];

    if (grad) grad->assign(d + 1, 0.0);
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = x.row(i);
        double eta = b0;
        for (std::size_t j = 0; j < d; ++j) eta += row[j] * params[j + 1];
        if (eta > 700.0) return std::numeric_limits<double>::infinity();
        const double mu = std::exp(eta);
        value += (mu - y[i] * eta) * inv_n;
        if (grad) {
            const double r = (mu - y[i]) * inv_n;
            (*grad)[0] += r;
            for (std::size_t j = 0; j < d; ++j) (*grad)[j + 1] += r * row[j];
        }
    }
    for (std::size_t j = 1; j <= d; ++j) {
        value += 0.5 * alpha * params[j] * params[j];
        if (grad) (*grad)[j] += alpha * params[j];
    }
    return value;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double q : v) s += q * q;
    return std::sqrt(s);
}

}  // namespace

std::unique_ptr<PoissonRegressionModel> fit_poisson_regression(const Matrix& x,
                                                               const std::vector<int>& y,
                                                               const PoissonFitOptions& opt) {
    if (y.size() != x.rows()) {
        throw ShapeError("fit_poisson_regression: " + std::to_string(y.size()) + " labels for " +
                         std::to_string(x.rows()) + " rows");
    }
    if (x.rows() == 0) throw ParamError("fit_poisson_regression: empty training set");

    const std::size_t dim = x.cols() + 1;
    std::vector<double> params(dim, 0.0);
    std::vector<double> grad;
    double value = poisson_objective(x, y, opt.alpha, params, &grad);

    // Two-loop recursion over the recent (s, y) displacement pairs.
    std::deque<std::vector<double>> s_hist;
    std::deque<std::vector<double>> y_hist;
    std::deque<double> rho_hist;

    std::size_t iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        if (norm2(grad) <= opt.tol) break;

        std::vector<double> direction = grad;
        std::vector<double> alpha_coef(s_hist.size(), 0.0);
        for (std::size_t h = s_hist.size(); h-- > 0;) {
            double dot_sd = 0.0;
            for (std::size_t j = 0; j < dim; ++j) dot_sd += s_hist[h][j] * direction[j];
            alpha_coef[h] = rho_hist[h] * dot_sd;
            for (std::size_t j = 0; j < dim; ++j) direction[j] -= alpha_coef[h] * y_hist[h][j];
        }
        if (!s_hist.empty()) {
            double sy = 0.0;
            double yy = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                sy += s_hist.back()[j] * y_hist.back()[j];
                yy += y_hist.back()[j] * y_hist.back()[j];
            }
            const double scale = sy / yy;
            for (double& dj : direction) dj *= scale;
        }
        for (std::size_t h = 0; h < s_hist.size(); ++h) {
            double dot_yd = 0.0;
            for (std::size_t j = 0; j < dim; ++j) dot_yd += y_hist[h][j] * direction[j];
            const double beta = rho_hist[h] * dot_yd;
            for (std::size_t j = 0; j < dim; ++j) {
                direction[j] += (alpha_coef[h] - beta) * s_hist[h][j];
            }
        }
        for (double& dj : direction) dj = -dj;

        double descent = 0.0;
        for (std::size_t j = 0; j < dim; ++j) descent += grad[j] * direction[j];
        if (descent >= 0.0) {
            // Bad curvature; fall back to steepest descent.
            for (std::size_t j = 0; j < dim; ++j) direction[j] = -grad[j];
            descent = -norm2(grad) * norm2(grad);
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
        }

        // Armijo backtracking.
        double step = 1.0;
        std::vector<double> candidate(dim);
        double new_value = std::numeric_limits<double>::infinity();
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t j = 0; j < dim; ++j) candidate[j] = params[j] + step * direction[j];
            new_value = poisson_objective(x, y, opt.alpha, candidate, nullptr);
            if (new_value <= value + 1e-4 * step * descent) break;
            step *= 0.5;
        }
        if (!std::isfinite(new_value) || new_value > value) break;

        std::vector<double> new_grad;
        poisson_objective(x, y, opt.alpha, candidate, &new_grad);

        std::vector<double> s_vec(dim);
        std::vector<double> y_vec(dim);
        double sy = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            s_vec[j] = candidate[j] - params[j];
            y_vec[j] = new_grad[j] - grad[j];
            sy += s_vec[j] * y_vec[j];
        }
        if (sy > 1e-12) {
            s_hist.push_back(std::move(s_vec));
            y_hist.push_back(std::move(y_vec));
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > opt.history) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        params = std::move(candidate);
        grad = std::move(new_grad);
        value = new_value;
    }

    const double gnorm = norm2(grad);
    if (gnorm > opt.tol && iter >= opt.max_iterations) {
        throw ConvergenceError("poisson regression did not converge in " +
                                   std::to_string(opt.max_iterations) +
                                   " iterations (gradient norm " + std::to_string(gnorm) + ")",
                               gnorm);
    }

    auto model = std::make_unique<PoissonRegressionModel>();
    model->intercept = params[0];
    model->coefficients.assign(params.begin() + 1, params.end());
    model->iterations = iter;
    model->final_gradient_norm = gnorm;
    return model;
}

}  // namespace bsid
