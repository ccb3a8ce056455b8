#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <vector>

#include "wishart/bipoly.hpp"
#include "wishart/linalg.hpp"
#include "wishart/stochastic.hpp"

namespace wishart {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Generalized Laguerre L^alpha_n(x) by the three-term recurrence in n.
template <typename T>
T laguerre_eval(int n, int alpha, T x) {
    if (n == 0) return T(1);
    T lkm1(1);
    T lk = T(alpha + 1) - x;
    for (int k = 1; k < n; ++k) {
        T lk1 = ((T(2 * k + 1 + alpha) - x) * lk - T(k + alpha) * lkm1) / T(k + 1);
        lkm1 = lk;
        lk = lk1;
    }
    return lk;
}

// Monic time polynomial M^alpha_n(x, t) = (-t)^n n! L^alpha_n(x/t), held
// as an exact bivariate table in the raw polynomial time t. The table is
// homogeneous: c[k][j] = 0 unless k + j = n, and c[n][0] = 1.
struct MonicTimePoly {
    int n = 0;
    int alpha = 0;
    BivariatePoly<Rational> coeffs;
};

MonicTimePoly monic_coeffs(int n, int alpha);

// Boundary between the two time conventions: stored tables live in the
// raw polynomial time, public spectral APIs speak the global tau.
struct ScaledTimeMap {
    TimeConvention conv;
    double raw(double tau) const { return conv.r() * tau / conv.N; }
};

// Monic recurrence M_{k+1} = (x - t(2k+1+a)) M_k - t^2 k(k+a) M_{k-1};
// the numerically preferred evaluation path.
template <typename T>
T monic_eval_rec(int n, int alpha, T x, T tau_raw) {
    T mkm1(0), mk(1);
    for (int k = 0; k < n; ++k) {
        T mk1 = (x - tau_raw * T(2 * k + 1 + alpha)) * mk -
                tau_raw * tau_raw * T(k) * T(k + alpha) * mkm1;
        mkm1 = mk;
        mk = mk1;
    }
    return mk;
}

// Table evaluation (Horner); exact when given rational inputs.
cplx monic_eval(const MonicTimePoly& poly, cplx x, double tau_raw);
Rational monic_eval_exact(const MonicTimePoly& poly, const Rational& x, const Rational& tau_raw);

// Averaged characteristic polynomial <det(z - L(tau))> = M^nu_N(z, r tau / N).
cplx charpoly(int N, const TimeConvention& conv, cplx z, double tau);

// Residual table of the exact PDE
//   dM/dtau + (r/n) [ z d2M/dz2 + (1+alpha) dM/dz ] = 0
// in the scaled time tau (raw time r tau / n). Identically zero.
// alpha and r are decoupled from any matrix convention so identity
// sweeps can range over them independently.
BivariatePoly<Rational> monic_pde_residual(int n, int alpha, const Rational& r);

// Float-path version: max |residual cell| / max |lhs cell|.
double monic_pde_residual_float(int n, int alpha, double r);

// f_N(z,tau) = (1/N) dz ln M^nu_N(z, r tau/N); pole_error at roots of M.
struct ColeHopfValue {
    cplx z;
    double tau;
    cplx f;
    int N;
};
ColeHopfValue cole_hopf(int N, const TimeConvention& conv, cplx z, double tau);

// Finite-difference residual (stencil width h in z and tau) of the exact
//   df/dtau + r (2 z f df/dz + f^2) + (1-r) df/dz
//     = -(r/N)(2 df/dz + z d2f/dz2).
double f_pde_residual(int N, const TimeConvention& conv, cplx z, double tau, double h);

// Generalized Gauss-Laguerre rule for weight y^alpha e^{-y} on [0, inf).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadratureRule gauss_laguerre(int n, int alpha);

// Roots of M^alpha_n(x, tau_raw) (= tau_raw * Laguerre roots), ascending.
std::vector<double> monic_roots(int n, int alpha, double tau_raw);

// Cauchy transform of the degree-(N-1) monic polynomial against the
// size-N ensemble weight (raw time u = r tau / N, N = nm1 + 1):
//   p(z,tau) = (1/2 pi i) Int_0^inf M^nu_nm1(x,u) (x/tau)^nu e^{-x/u}
//              / (x - z) dx.
// Gauss-Laguerre with node doubling until 1e-10 relative agreement.
// As with the polynomial PDE, alpha and r are independent parameters;
// the convention overloads tie them to a matrix shape.
cplx cauchy_transform(int nm1, int alpha, double r, cplx z, double tau);
cplx cauchy_transform(int nm1, const TimeConvention& conv, cplx z, double tau);

// Finite-difference residual of d ptil/dtau + (r/N)[z d2 ptil + (1+nu) d ptil] = 0
// for ptil = (tau/z)^nu exp(N z/(r tau)) p. The prefactor rate must equal
// the weight rate N/(r tau); no other combination closes the identity.
double cauchy_pde_residual(int nm1, int alpha, double r, cplx z, double tau, double h);
double cauchy_pde_residual(int nm1, const TimeConvention& conv, cplx z, double tau, double h);

// Same residual with the prefactor deliberately omitted (ablation).
double cauchy_pde_residual_noprefactor(int nm1, int alpha, double r, cplx z, double tau,
                                       double h);

} // namespace wishart
