#include "wishart/orthopoly.hpp"

#include <cmath>

#include "wishart/errors.hpp"

namespace wishart {

namespace {

BigInt factorial(int n) {
    BigInt f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

BigInt binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt b = 1;
    for (int j = 0; j < k; ++j) {
        b *= n - j;
        b /= j + 1;
    }
    return b;
}

} // namespace

MonicTimePoly monic_coeffs(int n, int alpha) {
    if (n < 0 || alpha < 0) throw input_domain_error("monic_coeffs: n, alpha must be >= 0");
    MonicTimePoly p;
    p.n = n;
    p.alpha = alpha;
    p.coeffs = BivariatePoly<Rational>(n, n);
    // c[k][n-k] = (-1)^(n-k) (n!/k!) C(n+alpha, n-k)
    for (int k = 0; k <= n; ++k) {
        BigInt mag = (factorial(n) / factorial(k)) * binom(n + alpha, n - k);
        Rational v(mag);
        if ((n - k) % 2 == 1) v = -v;
        p.coeffs.at(k, n - k) = v;
    }
    return p;
}

cplx monic_eval(const MonicTimePoly& poly, cplx x, double tau_raw) {
    cplx total = 0.0;
    for (int k = poly.n; k >= 0; --k) {
        double coef = 0.0;
        // homogeneous table: only j = n-k is populated
        coef = static_cast<double>(poly.coeffs.get(k, poly.n - k));
        total = total * x + coef * std::pow(tau_raw, poly.n - k);
    }
    return total;
}

Rational monic_eval_exact(const MonicTimePoly& poly, const Rational& x, const Rational& tau_raw) {
    return poly.coeffs.eval(x, tau_raw);
}

cplx charpoly(int N, const TimeConvention& conv, cplx z, double tau) {
    if (!(tau > 0.0)) throw input_domain_error("charpoly: tau must be > 0");
    const double tau_raw = conv.r() * tau / N;
    return monic_eval_rec<cplx>(N, conv.nu(), z, cplx(tau_raw));
}

BivariatePoly<Rational> monic_pde_residual(int n, int alpha, const Rational& r) {
    if (n < 0 || n > 64) throw unsupported_error("monic_pde_residual: n <= 64");
    const MonicTimePoly mp = monic_coeffs(n, alpha);
    const Rational c = r / n; // raw time = (r/n) tau
    BivariatePoly<Rational> P = mp.coeffs.t_scaled(c);
    BivariatePoly<Rational> lhs = P.dt();
    BivariatePoly<Rational> rhs =
        (P.dx().dx().mul_x() + P.dx().scaled(Rational(1 + alpha))).scaled(-c);
    return lhs - rhs;
}

double monic_pde_residual_float(int n, int alpha, double r) {
    const MonicTimePoly mp = monic_coeffs(n, alpha);
    const double c = r / n;
    BivariatePoly<double> P(n, n);
    for (int k = 0; k <= n; ++k) {
        const int j = n - k;
        P.at(k, j) = static_cast<double>(mp.coeffs.get(k, j)) * std::pow(c, j);
    }
    BivariatePoly<double> lhs = P.dt();
    BivariatePoly<double> rhs =
        (P.dx().dx().mul_x() + P.dx().scaled(1.0 + alpha)).scaled(-c);
    BivariatePoly<double> res = lhs - rhs;
    double rmax = 0.0, lmax = 0.0;
    for (int k = 0; k <= res.xdeg(); ++k)
        for (int j = 0; j <= res.tdeg(); ++j) {
            rmax = std::max(rmax, std::abs(res.get(k, j)));
            lmax = std::max(lmax, std::abs(lhs.get(k, j)));
        }
    return lmax > 0.0 ? rmax / lmax : rmax;
}

namespace {

using cplxl = std::complex<long double>;

// joint recurrence for (M, dM/dx) at fixed raw time; long double so
// finite-difference stencils on top of it are not roundoff-limited
void monic_value_and_deriv(int n, int alpha, cplxl x, long double tr, cplxl& m, cplxl& d) {
    cplxl mkm1 = 0.0L, mk = 1.0L;
    cplxl dkm1 = 0.0L, dk = 0.0L;
    for (int k = 0; k < n; ++k) {
        const long double ak = tr * (2 * k + 1 + alpha);
        const long double bk = tr * tr * k * (k + alpha);
        const cplxl mk1 = (x - ak) * mk - bk * mkm1;
        const cplxl dk1 = mk + (x - ak) * dk - bk * dkm1;
        mkm1 = mk;
        mk = mk1;
        dkm1 = dk;
        dk = dk1;
    }
    m = mk;
    d = dk;
}

cplxl cole_hopf_ld(int N, int nu, long double r, cplxl z, long double tau) {
    const long double tr = r * tau / N;
    cplxl m, d;
    monic_value_and_deriv(N, nu, z, tr, m, d);
    if (m == cplxl(0.0L)) throw pole_error("cole_hopf: z is a root of the polynomial");
    return d / (static_cast<long double>(N) * m);
}

} // namespace

ColeHopfValue cole_hopf(int N, const TimeConvention& conv, cplx z, double tau) {
    if (!(tau > 0.0)) throw input_domain_error("cole_hopf: tau must be > 0");
    const cplxl f = cole_hopf_ld(N, conv.nu(), conv.r(), cplxl(z.real(), z.imag()), tau);
    return {z, tau, cplx(static_cast<double>(f.real()), static_cast<double>(f.imag())), N};
}

double f_pde_residual(int N, const TimeConvention& conv, cplx z, double tau, double h) {
    if (!(h > 0.0)) throw input_domain_error("f_pde_residual: h must be > 0");
    const int nu = conv.nu();
    const long double r = conv.r();
    const long double hl = h, tl = tau;
    const cplxl zl(z.real(), z.imag());
    const auto f = [&](cplxl zz, long double tt) { return cole_hopf_ld(N, nu, r, zz, tt); };
    const cplxl f0 = f(zl, tl);
    const cplxl fzp = f(zl + hl, tl), fzm = f(zl - hl, tl);
    const cplxl dfdz = (fzp - fzm) / (2.0L * hl);
    const cplxl d2fdz = (fzp - 2.0L * f0 + fzm) / (hl * hl);
    const cplxl dfdt = (f(zl, tl + hl) - f(zl, tl - hl)) / (2.0L * hl);
    const cplxl lhs = dfdt + r * (2.0L * zl * f0 * dfdz + f0 * f0) + (1.0L - r) * dfdz;
    const cplxl rhs = -(r / N) * (2.0L * dfdz + zl * d2fdz);
    return static_cast<double>(std::abs(lhs - rhs));
}

std::vector<double> monic_roots(int n, int alpha, double tau_raw) {
    QuadratureRule q = gauss_laguerre(n, alpha);
    std::vector<double> roots(q.nodes);
    for (auto& x : roots) x *= tau_raw;
    return roots;
}

namespace {

cplx cauchy_gl(int nm1, int nu, double u, double inv_tau_pow_nu, cplx z, int nodes) {
    // substitute x = u y:  Int M(u y, u) (u y / tau)^nu e^{-y} u dy / (u y - z)
    QuadratureRule q = gauss_laguerre(nodes, nu);
    cplx acc = 0.0;
    for (size_t i = 0; i < q.nodes.size(); ++i) {
        const double y = q.nodes[i];
        const cplx m = monic_eval_rec<cplx>(nm1, nu, cplx(u * y), cplx(u));
        acc += q.weights[i] * m / (u * y - z);
    }
    const double upow = std::pow(u, nu);
    return acc * u * upow * inv_tau_pow_nu;
}

} // namespace

cplx cauchy_transform(int nm1, int alpha, double r, cplx z, double tau) {
    if (nm1 < 1) throw input_domain_error("cauchy_transform: nm1 >= 1");
    if (!(tau > 0.0)) throw input_domain_error("cauchy_transform: tau must be > 0");
    if (std::abs(z.imag()) < 1e-6 * tau && z.real() >= 0.0)
        throw input_domain_error("cauchy_transform: z too close to the integration ray");

    const int N = nm1 + 1;
    const int nu = alpha;
    const double u = r * tau / N;
    const double inv_tau_pow_nu = std::pow(tau, -nu);

    int nodes = 2 * nm1 + 16;
    cplx prev = cauchy_gl(nm1, nu, u, inv_tau_pow_nu, z, nodes);
    for (int it = 0; it < 8; ++it) {
        nodes *= 2;
        const cplx cur = cauchy_gl(nm1, nu, u, inv_tau_pow_nu, z, nodes);
        if (std::abs(cur - prev) <= 1e-10 * std::max(1e-300, std::abs(cur))) {
            const cplx two_pi_i(0.0, 2.0 * M_PI);
            return cur / two_pi_i;
        }
        prev = cur;
    }
    throw accuracy_error("cauchy_transform: quadrature refinement did not converge");
}

cplx cauchy_transform(int nm1, const TimeConvention& conv, cplx z, double tau) {
    return cauchy_transform(nm1, conv.nu(), conv.r(), z, tau);
}

namespace {

cplx ptil_value(int nm1, int alpha, double r, cplx z, double tau, bool with_prefactor) {
    const int N = nm1 + 1;
    const cplx p = cauchy_transform(nm1, alpha, r, z, tau);
    if (!with_prefactor) return p;
    const cplx pref =
        std::pow(cplx(tau) / z, alpha) * std::exp(static_cast<double>(N) * z / (r * tau));
    return pref * p;
}

double cauchy_pde_residual_impl(int nm1, int alpha, double r, cplx z, double tau, double h,
                                bool with_prefactor) {
    if (!(h > 0.0)) throw input_domain_error("cauchy_pde_residual: h must be > 0");
    if (z == cplx(0.0)) throw input_domain_error("cauchy_pde_residual: z = 0");
    const int N = nm1 + 1;
    const auto f = [&](cplx zz, double tt) {
        return ptil_value(nm1, alpha, r, zz, tt, with_prefactor);
    };
    const cplx f0 = f(z, tau);
    const cplx fzp = f(z + h, tau), fzm = f(z - h, tau);
    const cplx dz = (fzp - fzm) / (2.0 * h);
    const cplx dzz = (fzp - 2.0 * f0 + fzm) / (h * h);
    const cplx dt = (f(z, tau + h) - f(z, tau - h)) / (2.0 * h);
    return std::abs(dt + (r / N) * (z * dzz + (1.0 + alpha) * dz));
}

} // namespace

double cauchy_pde_residual(int nm1, int alpha, double r, cplx z, double tau, double h) {
    return cauchy_pde_residual_impl(nm1, alpha, r, z, tau, h, true);
}

double cauchy_pde_residual(int nm1, const TimeConvention& conv, cplx z, double tau, double h) {
    return cauchy_pde_residual_impl(nm1, conv.nu(), conv.r(), z, tau, h, true);
}

double cauchy_pde_residual_noprefactor(int nm1, int alpha, double r, cplx z, double tau,
                                       double h) {
    return cauchy_pde_residual_impl(nm1, alpha, r, z, tau, h, false);
}

} // namespace wishart
