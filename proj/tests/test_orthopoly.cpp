#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wishart/errors.hpp"
#include "wishart/orthopoly.hpp"
#include "wishart/spectral.hpp"

using namespace wishart;

namespace {

// explicit alternating sum for L^a_n and its k-th derivative, long double:
// the series oracle, independent of the recurrence implementation
long double laguerre_series_deriv(int n, int a, int k, long double x) {
    // d^k/dx^k sum_j (-x)^j / j! C(n+a, n-j)
    long double total = 0.0L;
    for (int j = k; j <= n; ++j) {
        long double c = 1.0L;
        for (int i = 0; i < n - j; ++i) c *= static_cast<long double>(n + a - i) / (n - j - i);
        // c = C(n+a, n-j); term = (-1)^j x^{j-k} j!/( (j-k)! j! ) c = ...
        long double term = c * std::pow(x, j - k);
        for (int i = 0; i < j - k; ++i) term /= i + 1;
        if (j % 2 == 1) term = -term;
        total += term;
    }
    return total;
}

double factorial_d(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace

TEST_CASE("laguerre basics") {
    CHECK(laguerre_eval<double>(0, 3, 17.0) == 1.0);
    CHECK(laguerre_eval<double>(1, 2, 1.0) == doctest::Approx(2.0)); // alpha+1-x
    // complex argument against the explicit sum
    const cplx x(0.5, 0.5);
    const cplx v = laguerre_eval<cplx>(3, 1, x);
    // L^1_3 = C(4,3) - C(4,2) x + C(4,1) x^2/2 - x^3/6
    const cplx series = 4.0 - 6.0 * x + 2.0 * x * x - x * x * x / 6.0;
    CHECK(std::abs(v - series) < 1e-14);
}

TEST_CASE("laguerre recurrence matches series oracle") {
    std::mt19937 gen(42);
    std::uniform_real_distribution<double> ud(0.0, 50.0);
    for (int n : {1, 3, 7, 12, 20}) {
        for (int a : {0, 1, 5}) {
            const double x = ud(gen);
            const double mine = laguerre_eval<double>(n, a, x);
            const long double ser = laguerre_series_deriv(n, a, 0, x);
            CHECK(mine == doctest::Approx(static_cast<double>(ser))
                              .epsilon(1e-12 * (1.0 + std::abs(static_cast<double>(ser)))));
        }
    }
}

TEST_CASE("mixed-superscript recursion identity") {
    // n L^a_n - (a+1-x) L^{a+1}_{n-1} + x L^{a+2}_{n-2} = 0 at (5,1,2.7)
    {
        const int n = 5, a = 1;
        const double x = 2.7;
        const double res = n * laguerre_eval<double>(n, a, x) -
                           (a + 1 - x) * laguerre_eval<double>(n - 1, a + 1, x) +
                           x * laguerre_eval<double>(n - 2, a + 2, x);
        CHECK(std::abs(res) < 1e-12);
    }
    // ... and across the whole (n <= 20, a <= 5) range at random x
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> ud(0.0, 50.0);
    for (int n = 2; n <= 20; ++n) {
        for (int a = 0; a <= 5; ++a) {
            const double x = ud(gen);
            const double res = n * laguerre_eval<double>(n, a, x) -
                               (a + 1 - x) * laguerre_eval<double>(n - 1, a + 1, x) +
                               x * laguerre_eval<double>(n - 2, a + 2, x);
            const double scale = std::abs(n * laguerre_eval<double>(n, a, x)) + 1.0;
            CHECK(std::abs(res) < 1e-12 * scale);
        }
    }
}

TEST_CASE("differentiation property against series oracle") {
    // d^k/dx^k L^a_n = (-1)^k L^{a+k}_{n-k}, to 1e-12 relative
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> ud(0.0, 50.0);
    for (int n : {2, 5, 11, 20}) {
        for (int a : {0, 2, 5}) {
            for (int k : {1, 2, 3}) {
                if (k > n) continue;
                const double x = ud(gen);
                const double rhs =
                    (k % 2 ? -1.0 : 1.0) * laguerre_eval<double>(n - k, a + k, x);
                const double lhs = static_cast<double>(laguerre_series_deriv(n, a, k, x));
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12 * (1.0 + std::abs(rhs))));
            }
        }
    }
}

TEST_CASE("monic coefficient tables") {
    const auto m0 = monic_coeffs(0, 2);
    CHECK(m0.coeffs.get(0, 0) == Rational(1));

    // M^a_1 = x - tau (a+1)
    const auto m1 = monic_coeffs(1, 3);
    CHECK(m1.coeffs.get(1, 0) == Rational(1));
    CHECK(m1.coeffs.get(0, 1) == Rational(-4));

    // M^0_2 = x^2 - 4 tau x + 2 tau^2
    const auto m2 = monic_coeffs(2, 0);
    CHECK(m2.coeffs.get(2, 0) == Rational(1));
    CHECK(m2.coeffs.get(1, 1) == Rational(-4));
    CHECK(m2.coeffs.get(0, 2) == Rational(2));

    // homogeneity + monic for a range of n
    for (int n : {3, 5, 8, 16, 64}) {
        const auto m = monic_coeffs(n, 2);
        CHECK(m.coeffs.get(n, 0) == Rational(1));
        for (int k = 0; k <= n; ++k)
            for (int j = 0; j <= n; ++j)
                if (k + j != n) CHECK(m.coeffs.get(k, j) == Rational(0));
    }
}

TEST_CASE("monic evaluation: table vs recurrence vs limits") {
    // (n=1, a=0): x=2, tau=1 -> 1
    const auto m1 = monic_coeffs(1, 0);
    CHECK(monic_eval(m1, cplx(2.0), 1.0).real() == doctest::Approx(1.0));
    CHECK(monic_eval_rec<double>(1, 0, 2.0, 1.0) == doctest::Approx(1.0));

    // tau -> 0: x^n
    const auto m5 = monic_coeffs(5, 2);
    CHECK(monic_eval(m5, cplx(1.3), 0.0).real() == doctest::Approx(std::pow(1.3, 5)));

    // table Horner and recurrence agree
    for (int n : {2, 4, 9}) {
        for (int a : {0, 3}) {
            const auto mp = monic_coeffs(n, a);
            const cplx x(0.8, -0.4);
            const double tr = 0.37;
            const cplx via_table = monic_eval(mp, x, tr);
            const cplx via_rec = monic_eval_rec<cplx>(n, a, x, cplx(tr));
            CHECK(std::abs(via_table - via_rec) <= 1e-12 * std::abs(via_rec));
        }
    }

    // exact rational evaluation
    const auto m2 = monic_coeffs(2, 0);
    const Rational v = monic_eval_exact(m2, Rational(3), Rational(1, 2));
    // 9 - 4*(1/2)*3 + 2*(1/4) = 9 - 6 + 1/2 = 7/2
    CHECK(v == Rational(7, 2));
}

TEST_CASE("orthogonality of the monic time polynomials") {
    // Int_0^inf e^{-x/tau} (x/tau)^a M_n M_m dx = delta_nm tau^{2n+1} G(n+a+1) n!
    const double tau = 1.3;
    for (int a : {0, 1, 3}) {
        const auto rule = gauss_laguerre(40, a);
        for (int n = 0; n <= 6; ++n) {
            for (int m = n; m <= 6; ++m) {
                double acc = 0.0;
                for (size_t i = 0; i < rule.nodes.size(); ++i) {
                    const double y = rule.nodes[i];
                    acc += rule.weights[i] *
                           monic_eval_rec<double>(n, a, tau * y, tau) *
                           monic_eval_rec<double>(m, a, tau * y, tau);
                }
                acc *= tau;
                if (n == m) {
                    const double expect =
                        std::pow(tau, 2 * n + 1) * factorial_d(n + a) * factorial_d(n);
                    CHECK(acc == doctest::Approx(expect).epsilon(1e-9));
                } else {
                    CHECK(std::abs(acc) < 1e-9 * std::pow(tau, n + m + 1) *
                                              std::sqrt(factorial_d(n + a) * factorial_d(n) *
                                                        factorial_d(m + a) * factorial_d(m)));
                }
            }
        }
    }
}

TEST_CASE("exact table identities in raw time") {
    // homogeneity: tau dM/dtau + x dM/dx = n M
    for (int n : {1, 4, 8}) {
        for (int a : {0, 2, 4}) {
            const auto m = monic_coeffs(n, a);
            const auto lhs = m.coeffs.dt().mul_t() + m.coeffs.dx().mul_x();
            const auto rhs = m.coeffs.scaled(Rational(n));
            CHECK((lhs - rhs).is_zero());
        }
    }

    // recursion: n M^a_n = n[x - tau(a+1)] M^{a+1}_{n-1} - n(n-1) tau x M^{a+2}_{n-2}
    for (int n : {2, 3, 5, 8}) {
        for (int a : {0, 1, 4}) {
            const auto mn = monic_coeffs(n, a);
            const auto m1 = monic_coeffs(n - 1, a + 1);
            const auto m2 = monic_coeffs(n - 2, a + 2);
            const auto lhs = mn.coeffs.scaled(Rational(n));
            const auto rhs = (m1.coeffs.mul_x() - m1.coeffs.mul_t().scaled(Rational(a + 1)))
                                 .scaled(Rational(n)) -
                             m2.coeffs.mul_x().mul_t().scaled(Rational(n) * Rational(n - 1));
            CHECK((lhs - rhs).is_zero());
        }
    }

    // differentiation: d^k/dx^k M^a_n = n!/(n-k)! M^{a+k}_{n-k}
    for (int n : {3, 6, 8}) {
        for (int a : {0, 2}) {
            for (int k : {1, 2, 3}) {
                auto d = monic_coeffs(n, a).coeffs;
                Rational fac(1);
                for (int i = 0; i < k; ++i) {
                    d = d.dx();
                    fac *= n - i;
                }
                const auto rhs = monic_coeffs(n - k, a + k).coeffs.scaled(fac);
                CHECK((d - rhs).is_zero());
            }
        }
    }
}

TEST_CASE("heat-type pde holds exactly in rationals") {
    // N=1 by hand: lhs = -r(1+a) against rhs
    CHECK(monic_pde_residual(1, 3, Rational(2, 3)).is_zero());
    for (int n = 1; n <= 8; ++n)
        for (int a : {0, 1, 2, 3, 4})
            for (const Rational& r : {Rational(1), Rational(1, 2), Rational(2, 3)})
                CHECK(monic_pde_residual(n, a, r).is_zero());
}

TEST_CASE("heat-type pde float path at N=64") {
    for (int a : {0, 2, 4})
        for (double r : {1.0, 0.5, 2.0 / 3.0})
            CHECK(monic_pde_residual_float(64, a, r) < 1e-10);
}

TEST_CASE("charpoly") {
    // N=1, M=1: z - tau
    const TimeConvention c11(1, 1);
    CHECK(charpoly(1, c11, cplx(2.0), 0.7).real() == doctest::Approx(1.3));

    // z -> inf: charpoly / z^N -> 1
    const TimeConvention c46(4, 6);
    const cplx big(1e7, 0.0);
    CHECK(std::abs(charpoly(4, c46, big, 0.8) / std::pow(big, 4) - 1.0) < 1e-5);

    // MC identity <prod (z - lam_i)> = charpoly, modest replica count
    EnsembleConfig cfg;
    cfg.conv = c46;
    cfg.tau_final = 0.8;
    cfg.dt_phys = cfg.conv.phys_time(0.8) / 4;
    cfg.replicas = 20000;
    cfg.seed = 99;
    const auto batch = sample_spectra(cfg, SampleMode::matrix_path);
    for (const cplx z : {cplx(-1.0, 0.0), cplx(1.0, 1.0)}) {
        cplx mean = 0.0;
        for (const auto& s : batch.spectra) mean += characteristic_value(z, s);
        mean /= static_cast<double>(cfg.replicas);
        double var_re = 0.0, var_im = 0.0;
        for (const auto& s : batch.spectra) {
            const cplx v = characteristic_value(z, s) - mean;
            var_re += v.real() * v.real();
            var_im += v.imag() * v.imag();
        }
        const double se_re = std::sqrt(var_re / cfg.replicas / (cfg.replicas - 1));
        const double se_im = std::sqrt(var_im / cfg.replicas / (cfg.replicas - 1));
        const cplx theory = charpoly(4, c46, z, 0.8);
        CHECK(std::abs(mean.real() - theory.real()) < 3.0 * se_re);
        CHECK(std::abs(mean.imag() - theory.imag()) < 3.0 * se_im + 1e-12);
    }
}

TEST_CASE("scaled time map matches the charpoly raw time") {
    const TimeConvention c46(4, 6);
    const ScaledTimeMap map{c46};
    CHECK(map.raw(0.9) == doctest::Approx((2.0 / 3.0) * 0.9 / 4.0).epsilon(1e-15));
    const cplx z(1.2, 0.4);
    CHECK(std::abs(charpoly(4, c46, z, 0.9) -
                   monic_eval_rec<cplx>(4, 2, z, cplx(map.raw(0.9)))) < 1e-14);
}

TEST_CASE("roots of charpoly are real, positive, simple") {
    for (int n : {4, 12, 32}) {
        const auto roots = monic_roots(n, 0, 1.0 / n);
        CHECK(static_cast<int>(roots.size()) == n);
        for (size_t i = 0; i < roots.size(); ++i) {
            CHECK(roots[i] > 0.0);
            if (i > 0) CHECK(roots[i] > roots[i - 1] * (1.0 + 1e-12));
        }
        // Newton correction |M/M'| at each reported root is tiny
        const TimeConvention conv(n, n);
        for (double rt : roots) {
            const auto ch = cole_hopf(n, conv, cplx(rt * (1.0 + 1e-9), 0.0), 1.0);
            const double newton = std::abs(1.0 / (static_cast<double>(n) * ch.f));
            CHECK(newton < 1e-6 * (rt + 1.0));
        }
    }
}

TEST_CASE("cole-hopf transform") {
    const TimeConvention c11(1, 1);
    // N=1, r=1, nu=0: f = 1/(z - tau)
    const cplx z(2.5, 1.0);
    const auto v = cole_hopf(1, c11, z, 0.7);
    CHECK(std::abs(v.f - 1.0 / (z - 0.7)) < 1e-14);
    CHECK(v.N == 1);

    // large z: f -> 1/z (deviation ~ tau/z^2)
    const TimeConvention c46(4, 6);
    const cplx big(1e8, 0.0);
    CHECK(std::abs(cole_hopf(4, c46, big, 1.0).f - 1.0 / big) < 1e-12);

    // large-N limit approaches the resolvent
    const TimeConvention c64(64, 64);
    const cplx f64 = cole_hopf(64, c64, cplx(5.0), 1.0).f;
    const cplx G = resolvent_wishart(cplx(5.0), SpectralParams(1.0, 1.0));
    CHECK(std::abs(f64 - G) < 0.01);

    // pole at a root
    CHECK_THROWS_AS(cole_hopf(1, c11, cplx(0.7), 0.7), pole_error);
}

TEST_CASE("f pde residual") {
    // exact equation: residual vanishes to stencil accuracy at every N
    const TimeConvention c46(4, 6); // nu = 2, r = 2/3
    CHECK(f_pde_residual(4, c46, cplx(6.0, 1.0), 0.9, 1e-4) < 1e-5);

    const TimeConvention c11(1, 1);
    CHECK(f_pde_residual(1, c11, cplx(6.0, 1.0), 0.9, 1e-4) < 1e-9);

    // dropping the viscous side leaves an O(1/N) defect
    const auto drop_rhs = [&](int N, const TimeConvention& conv, cplx z, double tau, double h) {
        const auto f = [&](cplx zz, double tt) { return cole_hopf(N, conv, zz, tt).f; };
        const double r = conv.r();
        const cplx f0 = f(z, tau);
        const cplx dfdz = (f(z + h, tau) - f(z - h, tau)) / (2.0 * h);
        const cplx dfdt = (f(z, tau + h) - f(z, tau - h)) / (2.0 * h);
        return std::abs(dfdt + r * (2.0 * z * f0 * dfdz + f0 * f0) + (1.0 - r) * dfdz);
    };
    const double defect = drop_rhs(4, c46, cplx(6.0, 1.0), 0.9, 1e-4);
    CHECK(defect > 1e-3);  // not ~0
    CHECK(defect < 0.5);   // but O(1/N) small
}

TEST_CASE("gauss-laguerre rules integrate polynomials exactly") {
    for (int a : {0, 2}) {
        const auto rule = gauss_laguerre(12, a);
        // moments: Int y^k y^a e^-y = (k+a)!
        for (int k : {0, 1, 5, 17}) {
            double acc = 0.0;
            for (size_t i = 0; i < rule.nodes.size(); ++i)
                acc += rule.weights[i] * std::pow(rule.nodes[i], k);
            CHECK(acc == doctest::Approx(factorial_d(k + a)).epsilon(1e-12));
        }
    }
}

TEST_CASE("cauchy transform") {
    const TimeConvention c22(2, 2); // r=1, nu=0, N=2 for nm1=1
    const cplx z(-2.0, 2.0);
    const double tau = 1.0;
    const cplx p = cauchy_transform(1, c22, z, tau);

    // dual-quadrature oracle: adaptive Simpson on the same integrand
    // u = r tau / N = 1/2: integrand (x - u) e^{-x/u} / (x - z)
    const double u = 0.5;
    const cplx via_simpson =
        oracle::adaptive_simpson([&](double x) { return (x - u) * std::exp(-x / u) / (x - z); },
                                 0.0, 60.0 * u, 1e-13) /
        cplx(0.0, 2.0 * M_PI);
    CHECK(std::abs(p - via_simpson) < 1e-8);

    // conjugation symmetry p(conj z) = -conj(p(z))
    const cplx pc = cauchy_transform(1, c22, std::conj(z), tau);
    CHECK(std::abs(pc + std::conj(p)) < 1e-12);

    // decay for large imaginary part
    CHECK(std::abs(cauchy_transform(1, c22, cplx(0.0, 500.0), tau)) < 1e-3);

    CHECK_THROWS_AS(cauchy_transform(1, c22, cplx(1.0, 1e-9), tau), input_domain_error);
}

TEST_CASE("cauchy transform pde") {
    const TimeConvention c33(3, 3);
    const cplx z(-2.0, 2.0);
    CHECK(cauchy_pde_residual(2, c33, z, 1.0, 1e-3) < 1e-4);

    // alpha decoupled from the shape ratio: (r=1, alpha=1) and a
    // convention-coupled pair both satisfy the identity
    CHECK(cauchy_pde_residual(2, 1, 1.0, z, 1.0, 1e-3) < 1e-4);
    CHECK(cauchy_pde_residual(2, TimeConvention(3, 4), z, 1.0, 1e-3) < 1e-4);
    CHECK(cauchy_pde_residual(3, 2, 2.0 / 3.0, z, 1.3, 1e-3) < 1e-4);

    // prefactor omitted: residual at least 10x larger
    const double with = cauchy_pde_residual(2, c33, z, 1.0, 1e-3);
    const double without = cauchy_pde_residual_noprefactor(2, 0, 1.0, z, 1.0, 1e-3);
    CHECK(without > 10.0 * std::max(with, 1e-12));
}
