#include <cmath>

#include "wishart/errors.hpp"
#include "wishart/special.hpp"

namespace wishart {

namespace {

// Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3)
constexpr long double kAi0 = 0.35502805388781723926006318600418317640L;
constexpr long double kAip0 = -0.25881940379280679840518356018920396348L;

constexpr double kSwitch = 7.5;
constexpr double kRangeMax = 100.0;

// Maclaurin: Ai = Ai(0) f(x) + Ai'(0) g(x),
// f = sum x^{3k} / prod, g = sum x^{3k+1} / prod.
void maclaurin_fg(long double x, long double& f, long double& g, long double& fp,
                  long double& gp) {
    long double tf = 1.0L, tg = x;
    f = tf;
    g = tg;
    fp = 0.0L;
    gp = 1.0L;
    const long double x3 = x * x * x;
    for (int k = 1; k <= 120; ++k) {
        tf *= x3 / ((3.0L * k) * (3.0L * k - 1.0L));
        tg *= x3 / ((3.0L * k + 1.0L) * (3.0L * k));
        f += tf;
        g += tg;
        if (x != 0.0L) {
            fp += tf * (3.0L * k) / x;
            gp += tg * (3.0L * k + 1.0L) / x;
        }
        if (std::abs(tf) < 1e-24L * std::abs(f) && std::abs(tg) < 1e-24L * (std::abs(g) + 1e-30L))
            break;
    }
}

// u_k of the asymptotic series; v_k = -u_k (6k+1)/(6k-1)
struct AsymCoeffs {
    long double u[28];
    long double v[28];
    AsymCoeffs() {
        u[0] = 1.0L;
        v[0] = 1.0L;
        for (int k = 1; k < 28; ++k) {
            u[k] = u[k - 1] * (6.0L * k - 5.0L) * (6.0L * k - 3.0L) * (6.0L * k - 1.0L) /
                   (216.0L * k * (2.0L * k - 1.0L));
            v[k] = u[k] * (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
        }
    }
};
const AsymCoeffs kC;

// x > 0 branch: Ai ~ e^{-zeta} / (2 sqrt(pi) x^{1/4}) sum (-1)^k u_k zeta^{-k}
void asym_pos(long double x, long double& ai, long double& aip) {
    const long double zeta = 2.0L / 3.0L * std::pow(x, 1.5L);
    long double su = 0.0L, sv = 0.0L, prev = 1e30L;
    long double zk = 1.0L;
    for (int k = 0; k < 28; ++k) {
        const long double tu = kC.u[k] * zk;
        if (std::abs(tu) > prev) break;
        const long double sgn = (k % 2) ? -1.0L : 1.0L;
        su += sgn * tu;
        sv += sgn * kC.v[k] * zk;
        prev = std::abs(tu);
        zk /= zeta;
    }
    const long double q = std::exp(-zeta) / (2.0L * std::sqrt(M_PIl));
    ai = q * su / std::pow(x, 0.25L);
    aip = -q * sv * std::pow(x, 0.25L);
}

// x < 0 branch (argument -x with x > 0): trigonometric form
void asym_neg(long double x, long double& ai, long double& aip) {
    const long double zeta = 2.0L / 3.0L * std::pow(x, 1.5L);
    long double cu = 0.0L, su = 0.0L, cv = 0.0L, sv = 0.0L;
    long double z2 = 1.0L;
    for (int k = 0; 2 * k + 1 < 28; ++k) {
        const long double sgn = (k % 2) ? -1.0L : 1.0L;
        if (kC.u[2 * k] * z2 > 1e10L) break;
        cu += sgn * kC.u[2 * k] * z2;
        su += sgn * kC.u[2 * k + 1] * z2 / zeta;
        cv += sgn * kC.v[2 * k] * z2;
        sv += sgn * kC.v[2 * k + 1] * z2 / zeta;
        z2 /= zeta * zeta;
    }
    const long double arg = zeta - M_PIl / 4.0L;
    const long double c = std::cos(arg), s = std::sin(arg);
    const long double q = 1.0L / std::sqrt(M_PIl);
    ai = q * (c * cu + s * su) / std::pow(x, 0.25L);
    aip = q * std::pow(x, 0.25L) * (s * cv - c * sv);
}

void airy_pair(double xd, double& ai, double& aip) {
    if (!(std::abs(xd) <= kRangeMax))
        throw input_domain_error("airy_ai: |x| <= 100");
    const long double x = xd;
    long double a, ap;
    if (std::abs(xd) <= kSwitch) {
        long double f, g, fp, gp;
        maclaurin_fg(x, f, g, fp, gp);
        a = kAi0 * f + kAip0 * g;
        ap = kAi0 * fp + kAip0 * gp;
    } else if (xd > 0) {
        asym_pos(x, a, ap);
    } else {
        asym_neg(-x, a, ap);
    }
    ai = static_cast<double>(a);
    aip = static_cast<double>(ap);
}

} // namespace

double airy_ai(double x) {
    double ai, aip;
    airy_pair(x, ai, aip);
    return ai;
}

double airy_ai_prime(double x) {
    double ai, aip;
    airy_pair(x, ai, aip);
    return aip;
}

double matching_check_soft(double x) {
    if (!(x >= 10.0)) throw input_domain_error("matching_check_soft: x >= 10");
    double ai, aip;
    airy_pair(x, ai, aip);
    return std::abs(aip / ai + std::sqrt(x));
}

} // namespace wishart
