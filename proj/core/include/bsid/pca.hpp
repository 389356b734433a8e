#pragma once

#include <vector>

#include "bsid/matrix.hpp"

namespace bsid {

// Principal components of column-centered data. `components` holds the top-k
// eigenvectors of the covariance as orthonormal rows (k x d);
// `explained_variance` the matching eigenvalues, sorted descending.
struct PcaModel {
    std::vector<double> mean;
    Matrix components;
    std::vector<double> explained_variance;
};

// Eigendecomposition of the d x d sample covariance via cyclic Jacobi
// rotations (off-diagonal tolerance 1e-10). Requires k <= cols and n >= 2.
PcaModel pca_fit(const Matrix& x, std::size_t k);

// (x - mean) * components^T -> n x k projection.
Matrix pca_transform(const PcaModel& model, const Matrix& x);

// y * components + mean -> n x d reconstruction.
Matrix pca_inverse_transform(const PcaModel& model, const Matrix& y);

// Symmetric eigendecomposition helper; returns eigenvalues descending and
// fills `vectors` with matching orthonormal rows.
void jacobi_eigen_symmetric(Matrix a, std::vector<double>& values, Matrix& vectors);

}  // namespace bsid
