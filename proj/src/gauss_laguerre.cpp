#include <cmath>

#include "wishart/errors.hpp"
#include "wishart/orthopoly.hpp"

namespace wishart {

namespace {

// L^a_n(x) and its derivative, long double recurrence; x > 0 assumed
void laguerre_ld(int n, int a, long double x, long double& p, long double& dp) {
    long double pkm1 = 0.0L, pk = 1.0L;
    for (int k = 0; k < n; ++k) {
        const long double pk1 = ((2 * k + 1 + a - x) * pk - (k + a) * pkm1) / (k + 1);
        pkm1 = pk;
        pk = pk1;
    }
    p = pk;
    dp = (n * pk - (n + a) * pkm1) / x;
}

} // namespace

QuadratureRule gauss_laguerre(int n, int alpha) {
    if (n < 1 || n > 2000) throw unsupported_error("gauss_laguerre: n in [1, 2000]");
    if (alpha < 0) throw input_domain_error("gauss_laguerre: alpha >= 0");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    // Gamma(n+alpha+1)/n! for integer alpha
    long double gam_ratio = 1.0L;
    for (int j = 1; j <= alpha; ++j) gam_ratio *= n + j;

    long double x = 0.0L, xm1 = 0.0L, xm2 = 0.0L;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            x = (1.0L + alpha) * (3.0L + 0.92L * alpha) / (1.0L + 2.4L * n + 1.8L * alpha);
        } else if (i == 1) {
            x = xm1 + (15.0L + 6.25L * alpha) / (1.0L + 0.9L * alpha + 2.5L * n);
        } else {
            const long double ai = i - 1;
            x = xm1 + ((1.0L + 2.55L * ai) / (1.9L * ai) +
                       1.26L * ai * alpha / (1.0L + 3.5L * ai)) *
                          (xm1 - xm2) / (1.0L + 0.3L * alpha);
        }
        long double p, dp;
        for (int it = 0; it < 200; ++it) {
            laguerre_ld(n, alpha, x, p, dp);
            const long double dx = p / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-17L * std::abs(x)) break;
        }
        laguerre_ld(n, alpha, x, p, dp);
        // w = Gamma(n+a+1)/n! * x / ((n+1)^2 [L^a_{n+1}(x)]^2)
        long double pn1, dpn1;
        laguerre_ld(n + 1, alpha, x, pn1, dpn1);
        const long double np1 = n + 1;
        rule.nodes[i] = static_cast<double>(x);
        rule.weights[i] = static_cast<double>(gam_ratio * x / (np1 * np1 * pn1 * pn1));
        xm2 = xm1;
        xm1 = x;
    }
    return rule;
}

} // namespace wishart
