#pragma once

#include <vector>

namespace lds::detail {

/// Full eigendecomposition of a real symmetric tridiagonal matrix.
/// `vectors` is column-major n x n; column i is the eigenvector of values[i].
struct TridiagonalEigen {
    std::vector<double> values;
    std::vector<double> vectors;
    int n = 0;

    double vec(int row, int col) const {
        return vectors[static_cast<size_t>(col) * n + row];
    }
};

/// Divide-and-conquer eigensolve (LAPACK dstedc). Throws std::runtime_error
/// with the matrix appended when the solver does not converge.
TridiagonalEigen eigh_tridiagonal(std::vector<double> diagonal,
                                  std::vector<double> off_diagonal);

/// Compressed sparse rows of a dense column-major matrix with entries below
/// `drop` discarded. The eigenvector matrices here are exponentially
/// localized, so this turns the O(n^2) pulse application into O(nnz) with
/// nnz of order 10 n, at an error far below the eigensolver's own.
struct SparseMatrix {
    int n = 0;
    std::vector<int> row_start;  // size n+1
    std::vector<int> col;
    std::vector<double> val;

    // y = A x and y = A^T x for complex x stored as interleaved re/im pairs.
    void multiply(const double* x, double* y) const;
};

SparseMatrix sparse_from_dense(const std::vector<double>& colmajor, int n, double drop,
                               bool transpose);

}  // namespace lds::detail
