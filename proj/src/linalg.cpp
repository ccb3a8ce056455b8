#include "wishart/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wishart/errors.hpp"

namespace wishart {

RectComplexMatrix::RectComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols) {
    if (rows < 1 || cols < 1 || cols > rows)
        throw input_domain_error("RectComplexMatrix: need 1 <= N <= M");
}

double RectComplexMatrix::frobenius_norm_sq() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e);
    return s;
}

bool RectComplexMatrix::all_finite() const {
    for (const auto& e : entries_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
}

namespace {

// Column-major workspace for the Jacobi sweeps so column ops are contiguous.
struct ColMat {
    int m, n;
    std::vector<cplx> a; // a[j*m + i]

    explicit ColMat(const RectComplexMatrix& src) : m(src.rows()), n(src.cols()), a(size_t(m) * n) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a[size_t(j) * m + i] = src(i, j);
    }
    ColMat(int rows, int cols, bool identity) : m(rows), n(cols), a(size_t(rows) * cols) {
        if (identity)
            for (int j = 0; j < cols && j < rows; ++j) a[size_t(j) * m + j] = 1.0;
    }
    cplx* col(int j) { return a.data() + size_t(j) * m; }
};

// hot kernels in explicit real/imag form so they vectorize
double col_norm_sq(const cplx* c, int m) {
    const double* p = reinterpret_cast<const double*>(c);
    double s0 = 0.0, s1 = 0.0;
    for (int i = 0; i < m; ++i) {
        s0 += p[2 * i] * p[2 * i];
        s1 += p[2 * i + 1] * p[2 * i + 1];
    }
    return s0 + s1;
}

cplx col_dot(const cplx* u, const cplx* v, int m) {
    const double* a = reinterpret_cast<const double*>(u);
    const double* b = reinterpret_cast<const double*>(v);
    double re = 0.0, im = 0.0;
    for (int i = 0; i < m; ++i) {
        const double ar = a[2 * i], ai = a[2 * i + 1];
        const double br = b[2 * i], bi = b[2 * i + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

// Rotation diagonalizing [[a, c], [conj(c), b]]; cs real, sn complex,
// t the signed tangent (new diagonal is a + |c| t, b - |c| t).
// Returns false when c is negligible and no rotation is needed.
bool make_rotation(double a, double b, cplx c, double& cs, cplx& sn, double& t) {
    const double ac = std::abs(c);
    if (ac == 0.0) {
        cs = 1.0;
        sn = 0.0;
        t = 0.0;
        return false;
    }
    const double zeta = (a - b) / (2.0 * ac);
    const double w = std::sqrt(zeta * zeta + 1.0);
    t = (zeta >= 0.0) ? 1.0 / (zeta + w) : 1.0 / (zeta - w);
    cs = 1.0 / std::sqrt(t * t + 1.0);
    sn = -t * cs * (std::conj(c) / ac);
    return true;
}

void rotate_cols(cplx* u, cplx* v, int m, double cs, cplx sn) {
    double* a = reinterpret_cast<double*>(u);
    double* b = reinterpret_cast<double*>(v);
    const double sr = sn.real(), si = sn.imag();
    for (int i = 0; i < m; ++i) {
        const double t1r = a[2 * i], t1i = a[2 * i + 1];
        const double t2r = b[2 * i], t2i = b[2 * i + 1];
        a[2 * i] = cs * t1r - (sr * t2r - si * t2i);
        a[2 * i + 1] = cs * t1i - (sr * t2i + si * t2r);
        b[2 * i] = sr * t1r + si * t1i + cs * t2r;
        b[2 * i + 1] = sr * t1i - si * t1r + cs * t2i;
    }
}

constexpr double kSineTol = 1e-14;
constexpr int kMaxSweeps = 30;

void jacobi_sweeps(ColMat& W, ColMat* V) {
    const int n = W.n;
    std::vector<double> nrm(n);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        for (int j = 0; j < n; ++j) nrm[j] = col_norm_sq(W.col(j), W.m);
        double max_sin = 0.0;
        for (int j = 1; j < n; ++j) {
            for (int i = 0; i < j; ++i) {
                if (nrm[i] == 0.0 && nrm[j] == 0.0) continue;
                const cplx c = col_dot(W.col(i), W.col(j), W.m);
                double cs, t;
                cplx sn;
                if (!make_rotation(nrm[i], nrm[j], c, cs, sn, t)) continue;
                const double asn = std::abs(sn);
                if (asn < kSineTol) continue;
                max_sin = std::max(max_sin, asn);
                rotate_cols(W.col(i), W.col(j), W.m, cs, sn);
                if (V) rotate_cols(V->col(i), V->col(j), V->m, cs, sn);
                // exact 2x2 diagonal update; refreshed per sweep anyway
                const double shift = std::abs(c) * t;
                nrm[i] += shift;
                nrm[j] -= shift;
            }
        }
        if (max_sin < kSineTol) break;
    }
}

} // namespace

std::vector<double> svd_singular_values(const RectComplexMatrix& A) {
    if (!A.all_finite()) throw input_domain_error("svd: non-finite entries");
    ColMat W(A);
    jacobi_sweeps(W, nullptr);
    std::vector<double> sigma(W.n);
    for (int j = 0; j < W.n; ++j) sigma[j] = std::sqrt(col_norm_sq(W.col(j), W.m));
    std::sort(sigma.begin(), sigma.end(), std::greater<double>());
    return sigma;
}

SvdResult svd_full(const RectComplexMatrix& A) {
    if (!A.all_finite()) throw input_domain_error("svd: non-finite entries");
    ColMat W(A);
    ColMat V(A.cols(), A.cols(), true);
    jacobi_sweeps(W, &V);

    const int m = W.m, n = W.n;
    std::vector<int> order(n);
    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) sigma[j] = std::sqrt(col_norm_sq(W.col(j), m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sigma[a] > sigma[b]; });

    SvdResult out{std::vector<double>(n), RectComplexMatrix(m, n), RectComplexMatrix(n, n)};
    for (int jj = 0; jj < n; ++jj) {
        const int j = order[jj];
        out.sigma[jj] = sigma[j];
        const double inv = sigma[j] > 0.0 ? 1.0 / sigma[j] : 0.0;
        for (int i = 0; i < m; ++i) out.U(i, jj) = W.col(j)[i] * inv;
        for (int i = 0; i < n; ++i) out.V(i, jj) = V.col(j)[i];
    }
    return out;
}

Spectrum wishart_spectrum(const RectComplexMatrix& K, double tau) {
    std::vector<double> sigma = svd_singular_values(K);
    Spectrum s;
    s.values.resize(sigma.size());
    for (size_t i = 0; i < sigma.size(); ++i)
        s.values[sigma.size() - 1 - i] = sigma[i] * sigma[i];
    s.time_tau = tau;
    return s;
}

cplx characteristic_value(cplx z, const Spectrum& s) {
    cplx p = 1.0;
    for (double lam : s.values) p *= z - lam;
    return p;
}

} // namespace wishart
