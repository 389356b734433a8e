#include "bsid/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bsid {

Matrix Matrix::from_values(std::size_t rows, std::size_t cols, std::vector<double> values) {
    if (values.size() != rows * cols) {
        throw ShapeError("matrix values length " + std::to_string(values.size()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw NumericalError("matrix constructor rejects non-finite entries");
        }
    }
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.values_ = std::move(values);
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    const std::size_t cols = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw ShapeError("ragged row list: expected " + std::to_string(cols) +
                             " columns, got " + std::to_string(r.size()));
        }
        values.insert(values.end(), r.begin(), r.end());
    }
    return from_values(rows.size(), cols, std::move(values));
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void Matrix::check_finite(const char* context) const {
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw NumericalError(std::string(context) + ": non-finite matrix entry");
        }
    }
}

void gemm_accumulate(const double* a, const double* b, double* c,
                     std::size_t m, std::size_t k, std::size_t n) {
    // i-k-j ordering keeps the inner loop unit-stride over both b and c.
    constexpr std::size_t kBlock = 64;
    for (std::size_t k0 = 0; k0 < k; k0 += kBlock) {
        const std::size_t k1 = std::min(k0 + kBlock, k);
        for (std::size_t i = 0; i < m; ++i) {
            const double* __restrict__ ai = a + i * k;
            double* __restrict__ ci = c + i * n;
            for (std::size_t kk = k0; kk < k1; ++kk) {
                const double aik = ai[kk];
                if (aik == 0.0) continue;
                const double* __restrict__ bk = b + kk * n;
                for (std::size_t j = 0; j < n; ++j) {
                    ci[j] += aik * bk[j];
                }
            }
        }
    }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " * " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    Matrix c(a.rows(), b.cols());
    gemm_accumulate(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

Matrix matmul_bt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw ShapeError("matmul_bt: inner dims " + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.cols()));
    }
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* __restrict__ ai = a.data() + i * a.cols();
        double* __restrict__ ci = c.data() + i * b.rows();
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* __restrict__ bj = b.data() + j * b.cols();
            double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
            std::size_t kk = 0;
            const std::size_t k = a.cols();
            for (; kk + 4 <= k; kk += 4) {
                s0 += ai[kk] * bj[kk];
                s1 += ai[kk + 1] * bj[kk + 1];
                s2 += ai[kk + 2] * bj[kk + 2];
                s3 += ai[kk + 3] * bj[kk + 3];
            }
            for (; kk < k; ++kk) s0 += ai[kk] * bj[kk];
            ci[j] = (s0 + s1) + (s2 + s3);
        }
    }
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = a(i, j);
        }
    }
    return t;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ShapeError("dot: length " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
    }
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= a.size(); i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < a.size(); ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ShapeError("squared_distance: length " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
    }
    double s0 = 0.0, s1 = 0.0;
    std::size_t i = 0;
    for (; i + 2 <= a.size(); i += 2) {
        const double d0 = a[i] - b[i];
        const double d1 = a[i + 1] - b[i + 1];
        s0 += d0 * d0;
        s1 += d1 * d1;
    }
    for (; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s0 += d * d;
    }
    return s0 + s1;
}

}  // namespace bsid
