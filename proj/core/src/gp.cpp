#include "bsid/gp.hpp"

#include <cmath>
#include <string>

#include "bsid/errors.hpp"
#include "bsid/kernels.hpp"

namespace bsid {

double KernelRidgeModel::score(std::span<const double> row) const {
    double s = 0.0;
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        s += coefficients[i] * rbf_kernel(basis.row(i), row, gamma);
    }
    return s;
}

bool cholesky_solve(Matrix a, std::vector<double> b, std::vector<double>& out) {
    const std::size_t n = a.rows();
    // Lower-triangular factorization in place.
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= a(j, k) * a(j, k);
        if (diag <= 0.0 || !std::isfinite(diag)) return false;
        const double ljj = std::sqrt(diag);
        a(j, j) = ljj;
        const double inv = 1.0 / ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a(i, j);
            const double* __restrict__ ri = a.data() + i * n;
            const double* __restrict__ rj = a.data() + j * n;
            for (std::size_t k = 0; k < j; ++k) v -= ri[k] * rj[k];
            a(i, j) = v * inv;
        }
    }
    // Forward then backward substitution.
    for (std::size_t i = 0; i < n; ++i) {
        double v = b[i];
        for (std::size_t k = 0; k < i; ++k) v -= a(i, k) * b[k];
        b[i] = v / a(i, i);
    }
    out.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double v = b[i];
        for (std::size_t k = i + 1; k < n; ++k) v -= a(k, i) * out[k];
        out[i] = v / a(i, i);
    }
    return true;
}

std::unique_ptr<KernelRidgeModel> fit_gp_surrogate(const Matrix& x, const std::vector<int>& y,
                                                   const KernelRidgeOptions& opt) {
    if (x.rows() == 0) throw ParamError("fit_gp_surrogate: empty training set");
    if (y.size() != x.rows()) {
        throw ShapeError("fit_gp_surrogate: " + std::to_string(y.size()) + " labels for " +
                         std::to_string(x.rows()) + " rows");
    }
    for (int v : y) {
        if (v != 1 && v != -1) throw ParamError("fit_gp_surrogate: labels must be -1 or +1");
    }
    if (opt.ridge < 0.0) throw ParamError("fit_gp_surrogate: ridge must be >= 0");

    auto model = std::make_unique<KernelRidgeModel>();
    model->gamma = opt.gamma;

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
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        gram(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double k = rbf_kernel(xs.row(i), xs.row(j), opt.gamma);
            gram(i, j) = k;
            gram(j, i) = k;
        }
    }

    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = static_cast<double>(ys[i]);

    double ridge = opt.ridge;
    for (int attempt = 0; attempt <= 6; ++attempt) {
        Matrix system = gram;
        const double jitter = ridge > 0.0 ? ridge : (attempt == 0 ? 0.0 : 1e-12);
        for (std::size_t i = 0; i < n; ++i) system(i, i) += jitter;
        if (cholesky_solve(std::move(system), rhs, model->coefficients)) {
            model->ridge_used = jitter;
            model->basis = std::move(xs);
            return model;
        }
        ridge = jitter > 0.0 ? jitter * 10.0 : 1e-12;
    }
    throw NumericalError("fit_gp_surrogate: system not positive definite after jitter escalation");
}

}  // namespace bsid
