#include "bsid/svm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsid/errors.hpp"
#include "bsid/kernels.hpp"

namespace bsid {

namespace {

void check_signed_labels(const std::vector<int>& y, std::size_t rows, const char* who) {
    if (y.size() != rows) {
        throw ShapeError(std::string(who) + ": " + std::to_string(y.size()) + " labels for " +
                         std::to_string(rows) + " rows");
    }
    for (int v : y) {
        if (v != 1 && v != -1) throw ParamError(std::string(who) + ": labels must be -1 or +1");
    }
}

}  // namespace

double LinearSvmModel::score(std::span<const double> row) const {
    return dot(row, weights) + bias;
}

std::unique_ptr<LinearSvmModel> fit_linear_svm(const Matrix& x, const std::vector<int>& y,
                                               const LinearSvmOptions& opt) {
    check_signed_labels(y, x.rows(), "fit_linear_svm");
    if (x.rows() == 0) throw ParamError("fit_linear_svm: empty training set");
    if (opt.c <= 0.0) throw ParamError("fit_linear_svm: c must be > 0");

    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const double lambda = 1.0 / (opt.c * static_cast<double>(n));

    auto model = std::make_unique<LinearSvmModel>();
    model->weights.assign(d, 0.0);
    model->bias = 0.0;

    Rng rng(opt.seed);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    // Suffix-averaged iterates: the raw final iterate is noisy when c is
    // large (early steps 1/(lambda*t) are huge), the tail average is not.
    const std::size_t total_steps = opt.epochs * n;
    const std::size_t average_from = total_steps / 2;
    std::vector<double> w_sum(d, 0.0);
    double b_sum = 0.0;
    std::size_t averaged = 0;

    std::size_t t = 0;
    for (std::size_t epoch = 0; epoch < opt.epochs; ++epoch) {
        Rng erng = rng.child(epoch);
        erng.shuffle(order);
        for (const std::size_t i : order) {
            ++t;
            // Safe-start schedule: bounded first steps, 1/(lambda*t) tail.
            const double eta = 1.0 / (lambda * static_cast<double>(t) + 1.0);
            const auto row = x.row(i);
            const double margin = y[i] * (dot(row, model->weights) + model->bias);
            const double shrink = 1.0 - eta * lambda;
            for (double& w : model->weights) w *= shrink;
            if (margin < 1.0) {
                const double step = eta * y[i];
                for (std::size_t j = 0; j < d; ++j) model->weights[j] += step * row[j];
                if (opt.fit_bias) model->bias += step;
            }
            if (t > average_from) {
                for (std::size_t j = 0; j < d; ++j) w_sum[j] += model->weights[j];
                b_sum += model->bias;
                ++averaged;
            }
        }
    }
    if (averaged > 0) {
        for (std::size_t j = 0; j < d; ++j) {
            model->weights[j] = w_sum[j] / static_cast<double>(averaged);
        }
        model->bias = b_sum / static_cast<double>(averaged);
    }
    return model;
}

double mean_hinge_loss(const LinearSvmModel& model, const Matrix& x, const std::vector<int>& y) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        total += std::max(0.0, 1.0 - y[i] * model.score(x.row(i)));
    }
    return total / static_cast<double>(x.rows());
}

double RbfSvmModel::score(std::span<const double> row) const {
    double s = bias;
    for (std::size_t i = 0; i < support_vectors.rows(); ++i) {
        s += alpha_y[i] * rbf_kernel(support_vectors.row(i), row, gamma);
    }
    return s;
}

std::unique_ptr<RbfSvmModel> fit_rbf_svm(const Matrix& x, const std::vector<int>& y,
                                         const RbfSvmOptions& opt) {
    check_signed_labels(y, x.rows(), "fit_rbf_svm");
    if (x.rows() < 2) throw ParamError("fit_rbf_svm: need at least 2 rows");
    if (opt.c <= 0.0 || opt.gamma <= 0.0) throw ParamError("fit_rbf_svm: c and gamma must be > 0");

    auto model = std::make_unique<RbfSvmModel>();
    model->gamma = opt.gamma;

    // Cap oversized training sets with a seeded stratified subsample.
    Matrix xs;
    std::vector<int> ys;
    if (x.rows() > opt.cap) {
        std::vector<int> zero_one(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) zero_one[i] = y[i] > 0 ? 1 : 0;
        const auto keep = stratified_subsample(zero_one, opt.cap, Rng(opt.seed).child("cap"));
        xs = gather_rows(x, keep);
        ys = gather(y, keep);
        model->set_subsample_info({true, opt.cap, keep.size(), x.rows()});
    } else {
        xs = x;
        ys = y;
        model->set_subsample_info({false, opt.cap, x.rows(), x.rows()});
    }

    const std::size_t n = xs.rows();
    const double c = opt.c;
    const double tol = opt.kkt_tol;

    // Single-precision Gram cache; accumulation stays in double.
    std::vector<float> gram(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        gram[i * n + i] = 1.0f;
        for (std::size_t j = i + 1; j < n; ++j) {
            const float k = static_cast<float>(rbf_kernel(xs.row(i), xs.row(j), opt.gamma));
            gram[i * n + j] = k;
            gram[j * n + i] = k;
        }
    }
    auto kernel_at = [&](std::size_t i, std::size_t j) -> double { return gram[i * n + j]; };

    std::vector<double> alpha(n, 0.0);
    double b = 0.0;
    // Error cache: f(x_i) - y_i.
    std::vector<double> errors(n);
    for (std::size_t i = 0; i < n; ++i) errors[i] = -static_cast<double>(ys[i]);

    auto take_step = [&](std::size_t i1, std::size_t i2) -> bool {
        if (i1 == i2) return false;
        const double a1 = alpha[i1];
        const double a2 = alpha[i2];
        const int y1 = ys[i1];
        const int y2 = ys[i2];
        const double e1 = errors[i1];
        const double e2 = errors[i2];
        const double s = y1 * y2;

        double lo;
        double hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(c, c + a2 - a1);
        } else {
            lo = std::max(0.0, a1 + a2 - c);
            hi = std::min(c, a1 + a2);
        }
        if (lo >= hi) return false;

        const double k11 = kernel_at(i1, i1);
        const double k12 = kernel_at(i1, i2);
        const double k22 = kernel_at(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;
        double a2_new;
        if (eta > 1e-12) {
            a2_new = a2 + y2 * (e1 - e2) / eta;
            a2_new = std::clamp(a2_new, lo, hi);
        } else {
            return false;
        }
        if (std::abs(a2_new - a2) < 1e-8 * (a2_new + a2 + 1e-8)) return false;

        double a1_new = a1 + s * (a2 - a2_new);
        // Snap rounding residue onto the box.
        if (a1_new < 1e-12) a1_new = 0.0;
        if (a1_new > c - 1e-12) a1_new = c;

        const double d1 = y1 * (a1_new - a1);
        const double d2 = y2 * (a2_new - a2);
        const double b1 = b - e1 - d1 * k11 - d2 * k12;
        const double b2 = b - e2 - d1 * k12 - d2 * k22;
        double b_new;
        if (a1_new > 0.0 && a1_new < c) {
            b_new = b1;
        } else if (a2_new > 0.0 && a2_new < c) {
            b_new = b2;
        } else {
            b_new = 0.5 * (b1 + b2);
        }

        for (std::size_t k = 0; k < n; ++k) {
            errors[k] += d1 * kernel_at(i1, k) + d2 * kernel_at(i2, k) + (b_new - b);
        }
        alpha[i1] = a1_new;
        alpha[i2] = a2_new;
        b = b_new;
        return true;
    };

    auto examine = [&](std::size_t i2) -> bool {
        const int y2 = ys[i2];
        const double a2 = alpha[i2];
        const double r2 = errors[i2] * y2;
        if ((r2 < -tol && a2 < c) || (r2 > tol && a2 > 0.0)) {
            // Second choice: largest |e1 - e2|, ties to the lower index.
            std::size_t best = n;
            double best_gap = -1.0;
            for (std::size_t i1 = 0; i1 < n; ++i1) {
                if (alpha[i1] <= 0.0 || alpha[i1] >= c) continue;
                const double gap = std::abs(errors[i1] - errors[i2]);
                if (gap > best_gap + 1e-15) {
                    best_gap = gap;
                    best = i1;
                }
            }
            if (best < n && take_step(best, i2)) return true;
            for (std::size_t i1 = 0; i1 < n; ++i1) {
                if (alpha[i1] > 0.0 && alpha[i1] < c && take_step(i1, i2)) return true;
            }
            for (std::size_t i1 = 0; i1 < n; ++i1) {
                if (take_step(i1, i2)) return true;
            }
        }
        return false;
    };

    bool examine_all = true;
    std::size_t passes = 0;
    while (passes < opt.max_passes) {
        ++passes;
        std::size_t changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!examine_all && (alpha[i] <= 0.0 || alpha[i] >= c)) continue;
            if (examine(i)) ++changed;
        }
        if (examine_all) {
            if (changed == 0) break;
            examine_all = false;
        } else if (changed == 0) {
            examine_all = true;
        }
    }
    model->smo_passes = passes;

    model->alphas = alpha;
    model->train_y = ys;
    model->bias = b;
    std::vector<std::size_t> sv;
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > 0.0) sv.push_back(i);
    }
    model->support_vectors = gather_rows(xs, sv);
    model->alpha_y.reserve(sv.size());
    for (const auto i : sv) model->alpha_y.push_back(alpha[i] * ys[i]);
    return model;
}

}  // namespace bsid
