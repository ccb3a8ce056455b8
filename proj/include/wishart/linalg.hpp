#pragma once

#include <complex>
#include <vector>

namespace wishart {

using cplx = std::complex<double>;

// Dense M x N complex matrix, N <= M, row-major storage.
class RectComplexMatrix {
public:
    RectComplexMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return entries_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const {
        return entries_[static_cast<size_t>(i) * cols_ + j];
    }

    std::vector<cplx>& data() { return entries_; }
    const std::vector<cplx>& data() const { return entries_; }

    double frobenius_norm_sq() const;
    bool all_finite() const;

private:
    int rows_;
    int cols_;
    std::vector<cplx> entries_;
};

// Sorted nonnegative eigenvalues of L = K^dagger K at scaled time tau.
struct Spectrum {
    std::vector<double> values; // ascending, all >= 0
    double time_tau = 0.0;
};

// Singular values of A, descending. One-sided Jacobi on the columns;
// sweeps stop when every off-diagonal rotation has |sin| < 1e-14 (or
// after 30 sweeps).
std::vector<double> svd_singular_values(const RectComplexMatrix& A);

// Full decomposition A = U diag(sigma) V^dagger, only needed by
// reconstruction tests. U is M x N, V is N x N.
struct SvdResult {
    std::vector<double> sigma; // descending
    RectComplexMatrix U;
    RectComplexMatrix V;
};
SvdResult svd_full(const RectComplexMatrix& A);

// Squared singular values of K, ascending, stamped with tau.
Spectrum wishart_spectrum(const RectComplexMatrix& K, double tau);

// prod_i (z - lambda_i)
cplx characteristic_value(cplx z, const Spectrum& s);

} // namespace wishart
