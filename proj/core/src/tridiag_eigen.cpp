#include "tridiag_eigen.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

extern "C" {
void dstedc_(const char* compz, const int* n, double* d, double* e, double* z,
             const int* ldz, double* work, const int* lwork, int* iwork,
             const int* liwork, int* info);
}

namespace lds::detail {

TridiagonalEigen eigh_tridiagonal(std::vector<double> diagonal,
                                  std::vector<double> off_diagonal) {
    const int n = static_cast<int>(diagonal.size());
    if (n < 1 || static_cast<int>(off_diagonal.size()) != n - 1)
        throw std::invalid_argument("tridiagonal sizes inconsistent");

    TridiagonalEigen out;
    out.n = n;
    out.vectors.assign(static_cast<size_t>(n) * n, 0.0);

    const int lwork = 1 + 4 * n + n * n;
    const int liwork = 3 + 5 * n;
    std::vector<double> work(static_cast<size_t>(lwork));
    std::vector<int> iwork(static_cast<size_t>(liwork));
    int info = 0;
    const char compz = 'I';
    dstedc_(&compz, &n, diagonal.data(), off_diagonal.data(), out.vectors.data(), &n,
            work.data(), &lwork, iwork.data(), &liwork, &info);
    if (info != 0) {
        std::ostringstream msg;
        msg << "tridiagonal eigensolver failed (dstedc info=" << info << "); diagonal:";
        for (int i = 0; i < n; ++i) msg << ' ' << diagonal[static_cast<size_t>(i)];
        msg << "; off-diagonal:";
        for (int i = 0; i + 1 < n; ++i) msg << ' ' << off_diagonal[static_cast<size_t>(i)];
        throw std::runtime_error(msg.str());
    }
    out.values = std::move(diagonal);  // dstedc overwrites d with eigenvalues
    return out;
}

SparseMatrix sparse_from_dense(const std::vector<double>& colmajor, int n, double drop,
                               bool transpose) {
    SparseMatrix s;
    s.n = n;
    s.row_start.assign(static_cast<size_t>(n) + 1, 0);

    auto entry = [&](int row, int col) {
        return transpose ? colmajor[static_cast<size_t>(row) * n + col]
                         : colmajor[static_cast<size_t>(col) * n + row];
    };

    for (int r = 0; r < n; ++r) {
        int count = 0;
        for (int c = 0; c < n; ++c)
            if (std::abs(entry(r, c)) > drop) ++count;
        s.row_start[static_cast<size_t>(r) + 1] = s.row_start[static_cast<size_t>(r)] + count;
    }
    s.col.resize(static_cast<size_t>(s.row_start[static_cast<size_t>(n)]));
    s.val.resize(s.col.size());
    for (int r = 0; r < n; ++r) {
        size_t at = static_cast<size_t>(s.row_start[static_cast<size_t>(r)]);
        for (int c = 0; c < n; ++c) {
            const double v = entry(r, c);
            if (std::abs(v) > drop) {
                s.col[at] = c;
                s.val[at] = v;
                ++at;
            }
        }
    }
    return s;
}

void SparseMatrix::multiply(const double* x, double* y) const {
    for (int r = 0; r < n; ++r) {
        double re = 0.0, im = 0.0;
        const int end = row_start[static_cast<size_t>(r) + 1];
        for (int i = row_start[static_cast<size_t>(r)]; i < end; ++i) {
            const double a = val[static_cast<size_t>(i)];
            const double* xc = x + 2 * col[static_cast<size_t>(i)];
            re += a * xc[0];
            im += a * xc[1];
        }
        y[2 * r] = re;
        y[2 * r + 1] = im;
    }
}

}  // namespace lds::detail
