#include <cmath>

#include "wishart/errors.hpp"
#include "wishart/special.hpp"

namespace wishart {

EdgePrediction soft_edge_data(const SpectralParams& p, bool right_edge) {
    if (!right_edge && p.r == 1.0)
        throw input_domain_error("soft_edge_data: left edge is hard at r = 1");
    const auto [zl, zr] = spectrum_edges(p);
    const double ze = right_edge ? zr : zl;
    EdgePrediction e;
    e.side = right_edge ? EdgePrediction::Side::soft_right : EdgePrediction::Side::soft_left;
    e.A_tau = ((p.r - 1.0) * p.tau + ze) / (2.0 * p.r * p.tau * ze);
    const double zs = ze * ze * std::pow(p.r, 1.5) * p.tau;
    e.z_star = right_edge ? zs : -zs;
    e.tau = p.tau;
    return e;
}

EdgePrediction hard_edge_data(int nu, double tau) {
    if (nu < 0) throw input_domain_error("hard_edge_data: nu >= 0");
    if (!(tau > 0.0)) throw input_domain_error("hard_edge_data: tau > 0");
    EdgePrediction e;
    e.side = EdgePrediction::Side::hard;
    e.A_tau = 0.5 / tau;
    e.nu = nu;
    e.tau = tau;
    return e;
}

double soft_edge_chi(double s, const SpectralParams& p, bool right_edge) {
    const EdgePrediction e = soft_edge_data(p, right_edge);
    const double cbrt_zs = std::cbrt(e.z_star); // real cube root, also for z_star < 0
    const double u = s / cbrt_zs;
    const double ai = airy_ai(u);
    // zeros only on the negative axis; the positive tail is small but safe
    if (u < 0.0 && std::abs(ai) < 1e-13) throw pole_error("soft_edge_chi: Airy zero");
    return airy_ai_prime(u) / ai / cbrt_zs;
}

double soft_edge_prediction(double s, int N, const SpectralParams& p, bool right_edge) {
    const EdgePrediction e = soft_edge_data(p, right_edge);
    return e.A_tau + std::pow(N, -1.0 / 3.0) * soft_edge_chi(s, p, right_edge);
}

double hard_edge_chi(double s, int nu, double tau) {
    if (!(s > 0.0)) throw input_domain_error("hard_edge_chi: s > 0");
    if (!(tau > 0.0)) throw input_domain_error("hard_edge_chi: tau > 0");
    const double x = 2.0 * std::sqrt(s / tau);
    const double j = bessel_j(nu, x);
    if (std::abs(j) < 1e-13) throw pole_error("hard_edge_chi: Bessel zero");
    return -0.5 * nu / s + bessel_j_prime(nu, x) / (j * std::sqrt(s * tau));
}

double hard_edge_prediction(double s, int N, int nu, double tau) {
    const EdgePrediction e = hard_edge_data(nu, tau);
    return e.A_tau + N * hard_edge_chi(s, nu, tau);
}

double airy_layer_residual(double s, double z_star, double g) {
    const double cbrt_zs = std::cbrt(z_star);
    const double u = s / cbrt_zs;
    const double ai = airy_ai(u);
    if (u < 0.0 && std::abs(ai) < 1e-13)
        throw pole_error("airy_layer_residual: Airy zero");
    const double q = airy_ai_prime(u) / ai;
    const double chi = q / cbrt_zs;
    // chi' = (Ai''/Ai - q^2)/zs^{2/3} with Ai'' = u Ai
    const double dchi = (u - q * q) / (cbrt_zs * cbrt_zs);
    return std::abs(chi * chi + dchi - s / z_star + g);
}

double bessel_layer_residual(double s, int nu, double tau) {
    return bessel_layer_residual(s, nu, tau, 1.0 / tau);
}

double bessel_layer_residual(double s, int nu, double tau, double g) {
    if (!(s > 0.0)) throw input_domain_error("bessel_layer_residual: s > 0");
    const double gm = 1.0 / tau; // matched value drives chi
    const double x = 2.0 * std::sqrt(gm * s);
    const double j = bessel_j(nu, x);
    if (std::abs(j) < 1e-13) throw pole_error("bessel_layer_residual: Bessel zero");
    const double rr = bessel_j_prime(nu, x) / j;
    const double chi = -0.5 * nu / s + std::sqrt(gm / s) * rr;
    // J''/J = -R/x - 1 + nu^2/x^2 from the Bessel equation
    const double jppj = -rr / x - 1.0 + double(nu) * nu / (x * x);
    const double dchi = 0.5 * nu / (s * s) - 0.5 * std::sqrt(gm) * rr / std::pow(s, 1.5) +
                        (gm / s) * (jppj - rr * rr);
    return std::abs(s * dchi + s * chi * chi + (1.0 + nu) * chi + g);
}

} // namespace wishart
