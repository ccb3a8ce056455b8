#include "wishart/spectral.hpp"

#include <cmath>

#include "wishart/errors.hpp"

namespace wishart {

SpectralParams::SpectralParams(double r_, double tau_) : r(r_), tau(tau_) {
    if (!(r > 0.0 && r <= 1.0)) throw input_domain_error("SpectralParams: r must be in (0,1]");
    if (!(tau > 0.0)) throw input_domain_error("SpectralParams: tau must be > 0");
}

std::pair<double, double> spectrum_edges(const SpectralParams& p) {
    const double sr = std::sqrt(p.r);
    return {(1.0 - sr) * (1.0 - sr) * p.tau, (1.0 + sr) * (1.0 + sr) * p.tau};
}

namespace {

// sqrt(z - zL) sqrt(z - zR) as a product of principal square roots puts
// the branch cut exactly on [zL, zR] and makes w ~ z at infinity.
cplx edge_sqrt(cplx z, const SpectralParams& p) {
    const auto [zl, zr] = spectrum_edges(p);
    return std::sqrt(z - zl) * std::sqrt(z - zr);
}

bool on_cut(cplx z, const SpectralParams& p) {
    if (z.imag() != 0.0) return false;
    const auto [zl, zr] = spectrum_edges(p);
    return z.real() >= zl && z.real() <= zr;
}

} // namespace

cplx resolvent_wishart(cplx z, const SpectralParams& p) {
    if (on_cut(z, p))
        throw boundary_value_error(
            "resolvent_wishart: z on the support; request the -i0 limit explicitly");
    return ((p.r - 1.0) * p.tau + z - edge_sqrt(z, p)) / (2.0 * p.r * p.tau * z);
}

cplx resolvent_wishart_lower(double lambda, const SpectralParams& p) {
    const auto [zl, zr] = spectrum_edges(p);
    if (lambda < zl || lambda > zr)
        return resolvent_wishart(cplx(lambda, 0.0), p);
    // limit from below the cut: w = -i sqrt((lambda-zL)(zR-lambda))
    const cplx w(0.0, -std::sqrt((lambda - zl) * (zr - lambda)));
    return ((p.r - 1.0) * p.tau + lambda - w) / (2.0 * p.r * p.tau * lambda);
}

DensityValue mp_density(double lambda, const SpectralParams& p) {
    const auto [zl, zr] = spectrum_edges(p);
    if (lambda == 0.0 && p.r == 1.0)
        return {std::numeric_limits<double>::infinity(), true};
    if (lambda <= zl || lambda >= zr) return {0.0, false};
    return {std::sqrt((lambda - zl) * (zr - lambda)) / (2.0 * M_PI * lambda * p.tau * p.r),
            false};
}

CharacteristicLine trace_characteristic(cplx z0, const SpectralParams& p, int n_samples) {
    if (z0 == cplx(0.0)) throw input_domain_error("trace_characteristic: z0 = 0");
    if (n_samples < 2) throw input_domain_error("trace_characteristic: need >= 2 samples");

    CharacteristicLine line;
    line.z0 = z0;
    line.samples.reserve(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        const double t = p.tau * k / (n_samples - 1);
        // G blows up where z0 = -r t'
        if (std::abs(z0 + p.r * t) < 1e-300)
            throw input_domain_error("trace_characteristic: z0 = -r tau' on the sampled line");
        CharacteristicSample s;
        s.tau = t;
        s.G = 1.0 / (p.r * t + z0);
        s.z = (1.0 + t / z0) * (z0 + p.r * t);
        line.samples.push_back(s);
    }
    if (z0.imag() == 0.0) {
        const double tc = z0.real() * z0.real() / p.r; // dz/dz0 = 1 - r t / z0^2 = 0
        if (tc <= p.tau) {
            line.caustic_crossing = true;
            line.caustic_tau = tc;
        }
    }
    return line;
}

std::pair<ShockPoint, ShockPoint> find_shocks(const SpectralParams& p) {
    const auto [zl, zr] = spectrum_edges(p);
    const double sr = std::sqrt(p.r);
    ShockPoint left{-sr * p.tau, zl, ShockPoint::Side::left};
    ShockPoint right{sr * p.tau, zr, ShockPoint::Side::right};
    return {left, right};
}

double implicit_residual(cplx z, cplx G, const SpectralParams& p) {
    if (G == cplx(0.0)) throw input_domain_error("implicit_residual: G = 0");
    const cplx denom = 1.0 - p.r * p.tau * G;
    if (denom == cplx(0.0)) throw input_domain_error("implicit_residual: r tau G = 1");
    return std::abs(z - 1.0 / G - p.tau / denom);
}

cplx resolvent_chiral(cplx w, const SpectralParams& p) {
    if (w == cplx(0.0)) throw input_domain_error("resolvent_chiral: w = 0");
    const cplx z = w * w;
    if (on_cut(z, p))
        throw boundary_value_error("resolvent_chiral: w^2 on the support");
    return (z - edge_sqrt(z, p)) / ((p.r + 1.0) * p.tau * w);
}

cplx resolvent_antiwishart(cplx z, const SpectralParams& p) {
    if (z == cplx(0.0)) throw pole_error("resolvent_antiwishart: pole at z = 0");
    if (on_cut(z, p))
        throw boundary_value_error("resolvent_antiwishart: z on the support");
    return ((1.0 - p.r) * p.tau + z - edge_sqrt(z, p)) / (2.0 * p.tau * z);
}

cplx r_transform(cplx z, const SpectralParams& p) {
    const cplx denom = 1.0 - p.r * p.tau * z;
    if (denom == cplx(0.0)) throw pole_error("r_transform: pole at r tau z = 1");
    return p.tau / denom;
}

namespace {

void require_stencil_off_cut(cplx z, double h, const SpectralParams& p) {
    for (const cplx zz : {z, z + h, z - h}) {
        if (zz.imag() != 0.0) continue;
        const auto [zl, zr] = spectrum_edges(p);
        // tau also varies by h in the stencil; widen the band accordingly
        const double pad = h / p.tau;
        if (zz.real() >= zl * (1.0 - pad) - h && zz.real() <= zr * (1.0 + pad) + h)
            throw input_domain_error("burgers_residual: stencil touches the cut");
    }
}

} // namespace

double burgers_residual(cplx z, const SpectralParams& p, double h) {
    if (!(h >= 1e-6 && h <= 1e-3)) throw input_domain_error("burgers_residual: h out of range");
    require_stencil_off_cut(z, h, p);

    const auto G = [&](cplx zz, double tt) {
        return resolvent_wishart(zz, SpectralParams(p.r, tt));
    };
    const cplx g0 = G(z, p.tau);
    const cplx dGdt = (G(z, p.tau + h) - G(z, p.tau - h)) / (2.0 * h);
    const cplx dGdz = (G(z + h, p.tau) - G(z - h, p.tau)) / (2.0 * h);
    const cplx rhs = p.r * (dGdz - 2.0 * z * g0 * dGdz - g0 * g0);
    return std::abs(dGdt + dGdz - rhs);
}

double chiral_burgers_residual(cplx w, const SpectralParams& p, double h) {
    if (!(h >= 1e-6 && h <= 1e-3))
        throw input_domain_error("chiral_burgers_residual: h out of range");
    const auto g = [&](cplx ww, double tt) {
        return resolvent_chiral(ww, SpectralParams(p.r, tt));
    };
    const cplx g0 = g(w, p.tau);
    const cplx dgdt = (g(w, p.tau + h) - g(w, p.tau - h)) / (2.0 * h);
    const cplx dgdw = (g(w + h, p.tau) - g(w - h, p.tau)) / (2.0 * h);
    const double q = (1.0 - p.r) / (1.0 + p.r);
    return std::abs(q * q + w * w * w * (2.0 / (1.0 + p.r) * dgdt + g0 * dgdw));
}

double antiwishart_relation_residual(cplx z, const SpectralParams& p) {
    const cplx ga = resolvent_antiwishart(z, p);
    const cplx gw = resolvent_wishart(z, p);
    return std::abs(ga - (1.0 - p.r) / z - p.r * gw);
}

double joint_density_small_n(const std::vector<double>& lams, double t_phys,
                             const TimeConvention& conv) {
    const int n = static_cast<int>(lams.size());
    if (n != conv.N)
        throw input_domain_error("joint_density_small_n: size mismatch with convention");
    if (n > 3) throw unsupported_error("joint_density_small_n: N <= 3 only");
    if (!(t_phys > 0.0)) throw input_domain_error("joint_density_small_n: t must be > 0");
    for (double l : lams)
        if (l < 0.0) throw input_domain_error("joint_density_small_n: lambda < 0");

    const double beta = TimeConvention::beta;
    double logw = -0.5 * beta * conv.M * conv.N * std::log(t_phys);
    double vand = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) vand *= lams[j] - lams[i];
    double sum = 0.0, powers = 1.0;
    const double a = 0.5 * beta * (conv.nu() + 1.0) - 1.0;
    for (double l : lams) {
        sum += l;
        powers *= std::pow(l, a);
    }
    return std::exp(logw - sum / (2.0 * t_phys)) * std::pow(vand, beta) * powers;
}

} // namespace wishart
