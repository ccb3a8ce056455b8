#pragma once

#include <complex>

#include "wishart/spectral.hpp"

namespace wishart {

// Airy function of the first kind and its derivative. Maclaurin series
// (long double) for |x| <= 7.5, asymptotic expansions beyond; the
// switchover is cross-validated to <= 1e-10 agreement. Absolute error
// <= 1e-10 on [-10, 10]. Range-limited to |x| <= 100.
double airy_ai(double x);
double airy_ai_prime(double x);

// Bessel J_nu for integer nu >= 0. Ascending series (long double) for
// x <= max(12, 2 nu); beyond that, Hankel asymptotics seed J_0, J_1 and
// the (stable, since x > nu) upward recurrence supplies higher orders.
// Absolute error <= 1e-10 for x <= 50, nu <= 10.
double bessel_j(int nu, double x);
double bessel_j_prime(int nu, double x);

// Ascending series with complex argument (used by the rotated-ray
// matching check; |x| moderate).
std::complex<double> bessel_j_complex(int nu, std::complex<double> x);

// Edge-local scaling data. Soft edges carry A(tau) and z_star; the hard
// edge carries A = 1/(2 tau) and the Bessel order nu.
struct EdgePrediction {
    enum class Side { soft_left, soft_right, hard } side;
    double A_tau = 0.0;
    double z_star = 0.0; // soft only
    int nu = 0;          // hard only
    double tau = 0.0;
};
EdgePrediction soft_edge_data(const SpectralParams& p, bool right_edge);
EdgePrediction hard_edge_data(int nu, double tau);

// f_N(z_edge + N^{-2/3} s) ~ A(tau) + N^{-1/3} chi(s),
// chi = d_s ln Ai(s / cbrt(z_star)); pole_error at Airy zeros.
double soft_edge_prediction(double s, int N, const SpectralParams& p, bool right_edge);

// chi alone (the N-independent profile).
double soft_edge_chi(double s, const SpectralParams& p, bool right_edge);

// Hard edge: f_N(N^{-2} s) ~ 1/(2 tau) + N chi(s),
// chi(s) = -nu/(2s) + J'_nu(2 sqrt(s/tau)) / (J_nu(2 sqrt(s/tau)) sqrt(s tau));
// pole_error at Bessel zeros.
double hard_edge_prediction(double s, int N, int nu, double tau);
double hard_edge_chi(double s, int nu, double tau);

// | chi^2 + d_s chi - s/z_star + g | for chi = d_s ln Ai(s / cbrt(z_star)),
// derivatives analytic via Ai'' = x Ai. The matched g is 0; nonzero g is
// for ablation only. Zero up to roundoff at g = 0.
double airy_layer_residual(double s, double z_star, double g = 0.0);

// | s chi' + s chi^2 + (1+nu) chi + g | with analytic derivatives; chi is
// always built with the matched g(tau) = 1/tau, the equation constant g
// defaults to it (nonzero mismatch = ablation).
double bessel_layer_residual(double s, int nu, double tau);
double bessel_layer_residual(double s, int nu, double tau, double g);

// | Ai'(x)/Ai(x) + sqrt(x) |, x >= 10.
double matching_check_soft(double x);

// | J'_nu/J_nu + i | evaluated at x (1 + 0.3 i), |x| >= 20.
double matching_check_hard(int nu, double x);

} // namespace wishart
