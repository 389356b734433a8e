#pragma once

// Independent symmetric eigensolver used only as a test oracle: Householder
// tridiagonalization followed by implicit-shift QL iteration. Deliberately a
// different algorithm from the library's Jacobi path.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double sign_like(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Reduces symmetric a (n x n, row-major) to tridiagonal form; on return a
// holds the accumulated orthogonal transform, d the diagonal, e the
// subdiagonal (e[0] unused).
inline void householder_tridiag(std::vector<double>& a, std::size_t n, std::vector<double>& d,
                                std::vector<double>& e) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    d.assign(n, 0.0);
    e.assign(n, 0.0);

    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        double scale = 0.0;
        if (l > 0) {
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    at(j, i) = at(i, j) / h;
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = at(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k <= j; ++k) {
                        at(j, k) -= f * e[k] + g * at(i, k);
                    }
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }

    d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = i;
        if (d[i] != 0.0) {
            for (std::size_t j = 0; j < l; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k < l; ++k) g += at(i, k) * at(k, j);
                for (std::size_t k = 0; k < l; ++k) at(k, j) -= g * at(k, i);
            }
        }
        d[i] = at(i, i);
        at(i, i) = 1.0;
        for (std::size_t j = 0; j < l; ++j) at(j, i) = at(i, j) = 0.0;
    }
}

// QL with implicit shifts on the tridiagonal (d, e); z accumulates the
// eigenvectors (columns).
inline void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z,
                       std::size_t n) {
    auto zt = [&](std::size_t i, std::size_t j) -> double& { return z[i * n + j]; };
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (std::size_t l = 0; l < n; ++l) {
        int iterations = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 1e-15 * dd) break;
            }
            if (m != l) {
                if (++iterations == 100) throw std::runtime_error("tridiag_ql: too many iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + sign_like(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = zt(k, i + 1);
                        zt(k, i + 1) = s * zt(k, i) + c * f;
                        zt(k, i) = c * zt(k, i) - s * f;
                    }
                }
                if (r == 0.0 && m > l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// Eigenvalues of a symmetric matrix, sorted descending.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    std::vector<double> d;
    std::vector<double> e;
    householder_tridiag(a, n, d, e);
    tridiag_ql(d, e, a, n);
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
}

}  // namespace oracle
