#pragma once

// Straight-line reference implementations used only by tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "bsid/matrix.hpp"

namespace oracle {

// k nearest by exhaustive scan; distance ties break toward the lower index.
inline double knn_score(const bsid::Matrix& x, const std::vector<int>& y,
                        std::span<const double> query, std::size_t k) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const double diff = x(i, j) - query[j];
            d += diff * diff;
        }
        all.emplace_back(d, i);
    }
    std::sort(all.begin(), all.end());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < k; ++i) pos += static_cast<std::size_t>(y[all[i].second]);
    return static_cast<double>(pos) / static_cast<double>(k);
}

// Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(bsid::Matrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        if (a(pivot, col) == 0.0) throw std::runtime_error("solve_dense: singular system");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double v = b[i];
        for (std::size_t c = i + 1; c < n; ++c) v -= a(i, c) * x[c];
        x[i] = v / a(i, i);
    }
    return x;
}

// AUC as the exact fraction of correctly ordered (positive, negative) pairs,
// ties counted half.
inline double pairwise_auc(const std::vector<int>& labels, const std::vector<double>& scores) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!labels[i]) continue;
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (labels[j]) continue;
            ++pairs;
            if (scores[i] > scores[j]) {
                wins += 1.0;
            } else if (scores[i] == scores[j]) {
                wins += 0.5;
            }
        }
    }
    return wins / static_cast<double>(pairs);
}

}  // namespace oracle
