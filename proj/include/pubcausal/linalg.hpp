#pragma once

#include <cstddef>
#include <vector>

namespace pubcausal {

// Small dense row-major matrix. Sized for the workloads here: correlation
// submatrices, covariance blocks, PCA on a few dozen columns.
struct Matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(size_t r, size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    double operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    static Matrix identity(size_t n);
};

Matrix matmul(const Matrix& x, const Matrix& y);

// In-place Gauss-Jordan inverse with partial pivoting. Returns false when
// a pivot falls below `eps` (matrix treated as singular).
bool invert(Matrix m, Matrix& out, double eps = 1e-12);

// Cholesky solve for symmetric positive definite A x = b.
// Returns false when a diagonal pivot is not positive.
bool cholesky_solve(const Matrix& A, const std::vector<double>& b, std::vector<double>& x);

// Cyclic Jacobi eigendecomposition for a symmetric matrix.
// Eigenvalues descend; eigenvectors are the columns of `vectors`.
void jacobi_eigen_sym(const Matrix& m, std::vector<double>& values, Matrix& vectors,
                      int max_sweeps = 64);

// Moore-Penrose pseudo-inverse of a symmetric matrix via its
// eigendecomposition; eigenvalues below `tol * max|eigenvalue|` are dropped.
Matrix pinv_sym(const Matrix& m, double tol = 1e-10);

// Top-k principal directions of column-major data (population covariance).
// Returned matrix is p x k with unit-norm columns; fewer than k columns
// come back when the data has fewer dimensions.
Matrix principal_directions(const std::vector<std::vector<double>>& columns, size_t k);

}  // namespace pubcausal
