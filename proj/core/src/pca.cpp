#include "bsid/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bsid/errors.hpp"

namespace bsid {

namespace {

constexpr double kOffDiagonalTol = 1e-10;
constexpr int kMaxSweeps = 100;

}  // namespace

void jacobi_eigen_symmetric(Matrix a, std::vector<double>& values, Matrix& vectors) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw ShapeError("jacobi_eigen_symmetric: matrix must be square");

    Matrix v = Matrix::identity(n);

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    }
    const double tol = kOffDiagonalTol * std::max(scale, 1.0);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        }
        if (off <= tol) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= tol * 1e-3) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i);
                    const double aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    values.assign(n, 0.0);
    vectors = Matrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t src = order[r];
        values[r] = a(src, src);
        for (std::size_t i = 0; i < n; ++i) vectors(r, i) = v(i, src);
    }
}

PcaModel pca_fit(const Matrix& x, std::size_t k) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (k > d) {
        throw ParamError("pca_fit: k=" + std::to_string(k) + " exceeds " + std::to_string(d) +
                         " columns");
    }
    if (n < 2) throw ParamError("pca_fit: need at least 2 rows");

    PcaModel model;
    model.mean.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = x.row(i);
        for (std::size_t j = 0; j < d; ++j) model.mean[j] += row[j];
    }
    for (double& m : model.mean) m /= static_cast<double>(n);

    Matrix centered(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto src = x.row(i);
        auto dst = centered.row(i);
        for (std::size_t j = 0; j < d; ++j) dst[j] = src[j] - model.mean[j];
    }

    Matrix cov(d, d);
    gemm_accumulate(transpose(centered).data(), centered.data(), cov.data(), d, n, d);
    const double denom = static_cast<double>(n - 1);
    for (double& v : cov.flat()) v /= denom;

    std::vector<double> values;
    Matrix vectors;
    jacobi_eigen_symmetric(std::move(cov), values, vectors);

    model.explained_variance.assign(values.begin(), values.begin() + static_cast<long>(k));
    for (double& ev : model.explained_variance) {
        if (ev < 0.0 && ev > -1e-12) ev = 0.0;
    }
    model.components = Matrix(k, d);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t j = 0; j < d; ++j) model.components(r, j) = vectors(r, j);
    }
    return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& x) {
    const std::size_t d = model.mean.size();
    if (x.cols() != d) {
        throw ShapeError("pca_transform: expected " + std::to_string(d) + " columns, got " +
                         std::to_string(x.cols()));
    }
    Matrix centered(x.rows(), d);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto src = x.row(i);
        auto dst = centered.row(i);
        for (std::size_t j = 0; j < d; ++j) dst[j] = src[j] - model.mean[j];
    }
    return matmul_bt(centered, model.components);
}

Matrix pca_inverse_transform(const PcaModel& model, const Matrix& y) {
    if (y.cols() != model.components.rows()) {
        throw ShapeError("pca_inverse_transform: expected " +
                         std::to_string(model.components.rows()) + " columns, got " +
                         std::to_string(y.cols()));
    }
    Matrix x = matmul(y, model.components);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto row = x.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) row[j] += model.mean[j];
    }
    return x;
}

}  // namespace bsid
