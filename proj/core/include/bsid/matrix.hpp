#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bsid/errors.hpp"

namespace bsid {

// Dense row-major matrix of doubles. Validating factories reject non-finite
// entries; in-place mutation through data()/operator() is the hot path and is
// left unchecked.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

    static Matrix from_values(std::size_t rows, std::size_t cols, std::vector<double> values);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);
    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }

    std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }

    std::span<const double> flat() const { return values_; }
    std::span<double> flat() { return values_; }

    // Throws NumericalError if any entry is NaN/Inf.
    void check_finite(const char* context) const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

// c(m x n) += a(m x k) * b(k x n), all row-major.
void gemm_accumulate(const double* a, const double* b, double* c,
                     std::size_t m, std::size_t k, std::size_t n);

Matrix matmul(const Matrix& a, const Matrix& b);

// a(m x k) * transpose(b(n x k)) -> (m x n).
Matrix matmul_bt(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace bsid
