#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "wishart/linalg.hpp"
#include "wishart/stochastic.hpp"

namespace wishart {

// Parameters of the closed-form large-N objects: rectangularity r in
// (0,1] and scaled time tau > 0.
struct SpectralParams {
    double r;
    double tau;

    SpectralParams(double r_, double tau_);
};

// Support endpoints [(1-sqrt(r))^2 tau, (1+sqrt(r))^2 tau].
std::pair<double, double> spectrum_edges(const SpectralParams& p);

// Large-N resolvent G(z,tau) = ((r-1)tau + z - w) / (2 r tau z) with
// w = sqrt(z - zL) * sqrt(z - zR) (principal branches, cut exactly on
// [zL, zR]); G ~ 1/z at infinity, Im G(lambda - i0) >= 0 on the support.
// Throws boundary_value_error for z exactly on the cut.
cplx resolvent_wishart(cplx z, const SpectralParams& p);

// The -i0 boundary value on the support, for callers that want it.
cplx resolvent_wishart_lower(double lambda, const SpectralParams& p);

// Spectral density. At the hard edge (r = 1, lambda -> 0) the density
// diverges like 1/sqrt(lambda); the divergence is reported through the
// flag rather than as a bare infinity.
struct DensityValue {
    double value;
    bool hard_edge_divergence;
};
DensityValue mp_density(double lambda, const SpectralParams& p);

// Characteristic line of the inviscid Burgers flow started at z0:
// z(t') = (1 + t'/z0)(z0 + r t'), G(t') = 1/(r t' + z0).
struct CharacteristicSample {
    double tau;
    cplx z;
    cplx G;
};
struct CharacteristicLine {
    cplx z0;
    std::vector<CharacteristicSample> samples;
    bool caustic_crossing = false; // real z0 with z0^2 = r t' for some sampled t'
    double caustic_tau = 0.0;
};
CharacteristicLine trace_characteristic(cplx z0, const SpectralParams& p, int n_samples);

// Pre-shock data: characteristics leaving z0c = +-sqrt(r) tau focus at
// the caustics zc = (1 +- sqrt(r))^2 tau, i.e. exactly at the edges.
struct ShockPoint {
    double z0c;
    double zc;
    enum class Side { left, right } side;
};
std::pair<ShockPoint, ShockPoint> find_shocks(const SpectralParams& p);

// | z - 1/G - tau/(1 - r tau G) |
double implicit_residual(cplx z, cplx G, const SpectralParams& p);

// Chiral resolvent g(w,tau), branch consistent with resolvent_wishart
// through G(z) = (r-1)/(2 r w^2) + (r+1) g(w)/(2 r w), z = w^2.
// Intended domain: w in the closed upper-right quadrant (w != 0).
cplx resolvent_chiral(cplx w, const SpectralParams& p);

// Anti-Wishart resolvent; carries the zero-mode pole (1-r)/z at z = 0.
cplx resolvent_antiwishart(cplx z, const SpectralParams& p);

// Time-dilated R-transform R(z,tau) = tau / (1 - r tau z).
cplx r_transform(cplx z, const SpectralParams& p);

// Absolute finite-difference residual of
//   dG/dtau + dG/dz - r (dG/dz - 2 z G dG/dz - G^2) = 0
// with second-order central stencils of width h in both z and tau.
double burgers_residual(cplx z, const SpectralParams& p, double h);

// Same for the chiral equation
//   ((1-r)/(1+r))^2 + w^3 [ (2/(1+r)) dg/dtau + g dg/dw ] = 0.
double chiral_burgers_residual(cplx w, const SpectralParams& p, double h);

// | G_a(z) - (1-r)/z - r G(z) |
double antiwishart_relation_residual(cplx z, const SpectralParams& p);

// Unnormalized finite-N joint eigenvalue density at physical time t:
//   t^{-beta M N / 2} prod_{i<j} (lam_j - lam_i)^beta
//     prod_k lam_k^{beta(nu+1)/2 - 1} exp(-sum lam / 2t),  beta = 2.
// Desk-scale validation only: N <= 3.
double joint_density_small_n(const std::vector<double>& lams, double t_phys,
                             const TimeConvention& conv);

} // namespace wishart
