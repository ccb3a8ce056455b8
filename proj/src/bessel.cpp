#include <cmath>
#include <complex>

#include "wishart/errors.hpp"
#include "wishart/special.hpp"

namespace wishart {

namespace {

constexpr double kRangeMax = 1e4;

long double factorial_ld(int n) {
    long double f = 1.0L;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// ascending series sum_k (-1)^k (x/2)^{2k+nu} / (k! (k+nu)!)
template <typename T>
T ascending_series(int nu, T x) {
    T term = std::pow(x / T(2.0L), nu) / T(factorial_ld(nu));
    T sum = term;
    for (int k = 1; k <= 400; ++k) {
        term *= -(x * x) / T(4.0L * k * (k + nu));
        sum += term;
        if (std::abs(term) < 1e-24L * (std::abs(sum) + 1e-30L)) break;
    }
    return sum;
}

// Hankel asymptotic expansion, nu in {0, 1}, x large
long double hankel_ld(int nu, long double x) {
    const long double mu = 4.0L * nu * nu;
    long double P = 1.0L, Q = 0.0L;
    long double a = 1.0L, prev = 1e30L;
    for (int k = 1; k < 40; ++k) {
        a *= (mu - (2.0L * k - 1.0L) * (2.0L * k - 1.0L)) / (k * 8.0L * x);
        if (std::abs(a) > prev) break;
        prev = std::abs(a);
        const long double sgn = ((k / 2) % 2) ? -1.0L : 1.0L;
        if (k % 2 == 1)
            Q += a * (((k - 1) / 2) % 2 ? -1.0L : 1.0L);
        else
            P += a * sgn;
    }
    const long double w = x - nu * M_PIl / 2.0L - M_PIl / 4.0L;
    return std::sqrt(2.0L / (M_PIl * x)) * (std::cos(w) * P - std::sin(w) * Q);
}

// x beyond the series range: Hankel J0, J1 then upward recurrence
// (stable here because x > nu throughout).
long double large_x_ld(int nu, long double x) {
    long double jm = hankel_ld(0, x);
    if (nu == 0) return jm;
    long double jc = hankel_ld(1, x);
    for (int n = 1; n < nu; ++n) {
        const long double jn = (2.0L * n / x) * jc - jm;
        jm = jc;
        jc = jn;
    }
    return jc;
}

long double bessel_ld(int nu, long double x) {
    // ascending series is well conditioned for small x or in the
    // small-argument regime nu >= x; in the strip nu < x its
    // cancellation blows up, and the upward recurrence is stable there.
    if (x <= 12.0L || nu >= x) return ascending_series<long double>(nu, x);
    return large_x_ld(nu, x);
}

} // namespace

double bessel_j(int nu, double x) {
    if (nu < 0) throw input_domain_error("bessel_j: nu >= 0");
    if (!(x >= 0.0 && x <= kRangeMax)) throw input_domain_error("bessel_j: x in [0, 1e4]");
    return static_cast<double>(bessel_ld(nu, x));
}

double bessel_j_prime(int nu, double x) {
    if (nu < 0) throw input_domain_error("bessel_j_prime: nu >= 0");
    if (!(x >= 0.0 && x <= kRangeMax)) throw input_domain_error("bessel_j_prime: x in [0, 1e4]");
    if (nu == 0) return -static_cast<double>(bessel_ld(1, x));
    if (x == 0.0) return nu == 1 ? 0.5 : 0.0;
    // J'_nu = (J_{nu-1} - J_{nu+1}) / 2
    return 0.5 * static_cast<double>(bessel_ld(nu - 1, x) - bessel_ld(nu + 1, x));
}

std::complex<double> bessel_j_complex(int nu, std::complex<double> x) {
    if (nu < 0) throw input_domain_error("bessel_j_complex: nu >= 0");
    if (std::abs(x) > 60.0)
        throw input_domain_error("bessel_j_complex: series path limited to |x| <= 60");
    const std::complex<long double> xl(x.real(), x.imag());
    const auto v = ascending_series<std::complex<long double>>(nu, xl);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double matching_check_hard(int nu, double x) {
    if (!(x >= 20.0)) throw input_domain_error("matching_check_hard: |x| >= 20");
    const std::complex<double> arg = x * std::complex<double>(1.0, 0.3);
    const std::complex<double> jm = bessel_j_complex(nu == 0 ? 1 : nu - 1, arg);
    const std::complex<double> jc = bessel_j_complex(nu, arg);
    std::complex<double> jp;
    if (nu == 0)
        jp = -jm;
    else
        jp = 0.5 * (jm - bessel_j_complex(nu + 1, arg));
    return std::abs(jp / jc + std::complex<double>(0.0, 1.0));
}

} // namespace wishart
