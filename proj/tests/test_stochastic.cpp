#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "wishart/errors.hpp"
#include "wishart/rng.hpp"
#include "wishart/stochastic.hpp"

using namespace wishart;

namespace {

struct Welford {
    long n = 0;
    double mean = 0.0, m2 = 0.0;
    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }
    double var() const { return m2 / (n - 1); }
    double stderr_mean() const { return std::sqrt(var() / n); }
};

} // namespace

TEST_CASE("philox streams are deterministic and step-addressable") {
    GaussianStream a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());

    GaussianStream c(42, 8);
    c.begin_step(0);
    bool all_equal = true;
    GaussianStream a2(42, 7);
    a2.begin_step(0);
    for (int i = 0; i < 20; ++i) all_equal = all_equal && (a2.normal() == c.normal());
    CHECK_FALSE(all_equal);

    // draws inside a step do not depend on previous step consumption
    GaussianStream d(42, 7), e(42, 7);
    d.begin_step(0);
    d.normal();
    d.normal();
    d.normal(); // odd count: cache pending
    d.begin_step(1);
    e.begin_step(1);
    for (int i = 0; i < 8; ++i) CHECK(d.normal() == e.normal());
}

TEST_CASE("philox normals have the right first two moments") {
    GaussianStream g(2024, 0);
    Welford w;
    for (int i = 0; i < 2'000'000; ++i) w.add(g.normal());
    CHECK(std::abs(w.mean) < 3.0 * w.stderr_mean());
    CHECK(w.var() == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("matrix brownian step: dt = 0 leaves K unchanged") {
    RectComplexMatrix K(3, 2);
    K(0, 0) = cplx(1.0, -2.0);
    GaussianStream g(1, 0);
    auto before = K.data();
    step_matrix_brownian(K, 0.0, g);
    CHECK(K.data() == before);
}

TEST_CASE("matrix brownian increments accumulate variance t per component") {
    // single entry, many short paths: Var[Re K] ~ t, E|K|^2 ~ 2t
    const double t = 1.0;
    const int steps = 16;
    Welford re, abs2;
    for (uint32_t rep = 0; rep < 100'000; ++rep) {
        RectComplexMatrix K(1, 1);
        GaussianStream g(99, rep);
        for (int k = 0; k < steps; ++k) {
            g.begin_step(k);
            step_matrix_brownian(K, t / steps, g);
        }
        re.add(K(0, 0).real());
        abs2.add(std::norm(K(0, 0)));
    }
    CHECK(std::abs(re.var() - t) < 3.0 * std::sqrt(2.0 / re.n)); // var of var ~ 2 t^2 / n
    Welford dummy;
    CHECK(std::abs(abs2.mean - 2.0 * t) < 3.0 * abs2.stderr_mean());
}

TEST_CASE("eigenvalue sde: N=1 drift and variance match the generator") {
    // d lam = 2 sqrt(lam) dB + beta (nu+1) dt at N=1
    const TimeConvention conv(1, 1); // nu = 0 -> drift beta = 2
    const double dt = 1e-4;
    Welford drift, var;
    for (uint32_t rep = 0; rep < 100'000; ++rep) {
        GaussianStream g(5, rep);
        const std::vector<double> lam{1.0};
        const auto next = step_eigenvalue_sde(lam, dt, conv, g);
        drift.add((next[0] - 1.0) / dt);
        var.add(next[0] - 1.0);
    }
    CHECK(std::abs(drift.mean - 2.0) < 3.0 * drift.stderr_mean());
    // Var[d lam] = 4 lam dt
    CHECK(std::abs(var.var() - 4.0 * dt) < 3.0 * std::sqrt(2.0 / var.n) * 4.0 * dt);
}

TEST_CASE("eigenvalue sde: dt = 0 returns input") {
    const TimeConvention conv(2, 3);
    GaussianStream g(1, 1);
    const std::vector<double> lam{0.5, 1.5};
    CHECK(step_eigenvalue_sde(lam, 0.0, conv, g) == lam);
}

TEST_CASE("eigenvalue sde: exhausted halvings signal a step-size error") {
    // nearly coincident walkers with a huge base step: the repulsion
    // drift overshoots at every one of the 20 halving levels
    const TimeConvention conv(2, 2);
    GaussianStream g(9, 0);
    const std::vector<double> lam{1.0, 1.0 + 1e-13};
    CHECK_THROWS_AS(step_eigenvalue_sde(lam, 10.0, conv, g), step_size_error);
}

TEST_CASE("singular value sde: N=1 drift (beta(nu+1)-1)/(2 kappa)") {
    const TimeConvention conv(1, 1);
    const double dt = 1e-4;
    Welford drift;
    for (uint32_t rep = 0; rep < 100'000; ++rep) {
        GaussianStream g(6, rep);
        const auto next = step_singvalue_sde({1.0}, dt, conv, g);
        drift.add((next[0] - 1.0) / dt);
    }
    CHECK(std::abs(drift.mean - 0.5) < 3.0 * drift.stderr_mean());
}

TEST_CASE("kappa^2 path and lambda path agree in first two moments") {
    // N=2, tau=0.5: integrate both SDEs from the same matrix burn-in
    const TimeConvention conv(2, 2);
    const double tau = 0.5;
    const double tfin = conv.phys_time(tau);
    const double dt = tfin / 400.0;
    Welford m1k, m2k, m1l, m2l;
    for (uint32_t rep = 0; rep < 4000; ++rep) {
        GaussianStream g(7, rep);
        RectComplexMatrix K(2, 2);
        const double t0 = 10 * dt;
        for (int k = 0; k < 10; ++k) {
            g.begin_step(k);
            step_matrix_brownian(K, t0 / 10, g);
        }
        auto lam0 = wishart_spectrum(K, 0.0).values;
        std::vector<double> kap{std::sqrt(lam0[0]), std::sqrt(lam0[1])};
        auto lam = lam0;
        uint32_t step = 10;
        for (double t = t0; t < tfin - 1e-18; t += dt) {
            g.begin_step(step++);
            lam = step_eigenvalue_sde(lam, std::min(dt, tfin - t), conv, g);
        }
        GaussianStream g2(8, rep);
        step = 10;
        for (double t = t0; t < tfin - 1e-18; t += dt) {
            g2.begin_step(step++);
            kap = step_singvalue_sde(kap, std::min(dt, tfin - t), conv, g2);
        }
        m1l.add((lam[0] + lam[1]) / 2);
        m2l.add((lam[0] * lam[0] + lam[1] * lam[1]) / 2);
        m1k.add((kap[0] * kap[0] + kap[1] * kap[1]) / 2);
        m2k.add((std::pow(kap[0], 4) + std::pow(kap[1], 4)) / 2);
    }
    CHECK(std::abs(m1l.mean - m1k.mean) <
          3.0 * std::sqrt(m1l.stderr_mean() * m1l.stderr_mean() +
                          m1k.stderr_mean() * m1k.stderr_mean()));
    CHECK(std::abs(m2l.mean - m2k.mean) <
          3.0 * std::sqrt(m2l.stderr_mean() * m2l.stderr_mean() +
                          m2k.stderr_mean() * m2k.stderr_mean()));
}

TEST_CASE("sample_spectra: trace law E[sum lam]/N = tau") {
    SUBCASE("N=1, M=1") {
        EnsembleConfig cfg;
        cfg.conv = TimeConvention(1, 1);
        cfg.tau_final = 1.0;
        cfg.dt_phys = cfg.conv.phys_time(1.0) / 4;
        cfg.replicas = 100'000;
        cfg.seed = 11;
        const auto batch = sample_spectra(cfg, SampleMode::matrix_path);
        Welford w;
        for (const auto& s : batch.spectra) w.add(s.values[0]);
        CHECK(std::abs(w.mean - 1.0) < 3.0 * w.stderr_mean());
    }
    SUBCASE("N=64, M=128") {
        EnsembleConfig cfg;
        cfg.conv = TimeConvention(64, 128);
        cfg.tau_final = 1.0;
        cfg.dt_phys = cfg.conv.phys_time(1.0) / 2;
        cfg.replicas = 400;
        cfg.seed = 12;
        const auto batch = sample_spectra(cfg, SampleMode::matrix_path);
        Welford w;
        for (const auto& s : batch.spectra) {
            const double tr = std::accumulate(s.values.begin(), s.values.end(), 0.0);
            w.add(tr / 64.0);
        }
        CHECK(std::abs(w.mean - 1.0) < 3.0 * w.stderr_mean());
    }
}

TEST_CASE("sample_spectra determinism: same seed, any worker count") {
    EnsembleConfig cfg;
    cfg.conv = TimeConvention(8, 12);
    cfg.tau_final = 0.6;
    cfg.dt_phys = cfg.conv.phys_time(0.6) / 8;
    cfg.replicas = 32;
    cfg.seed = 1234;
    const auto b1 = sample_spectra(cfg, SampleMode::matrix_path, 1);
    const auto b2 = sample_spectra(cfg, SampleMode::matrix_path, 2);
    const auto b8 = sample_spectra(cfg, SampleMode::matrix_path, 8);
    REQUIRE(b1.spectra.size() == b2.spectra.size());
    for (size_t k = 0; k < b1.spectra.size(); ++k) {
        CHECK(b1.spectra[k].values == b2.spectra[k].values); // bitwise
        CHECK(b1.spectra[k].values == b8.spectra[k].values);
    }
}

TEST_CASE("sample_spectra eigen-sde positivity and trace law") {
    EnsembleConfig cfg;
    cfg.conv = TimeConvention(4, 6);
    cfg.tau_final = 0.5;
    cfg.dt_phys = cfg.conv.phys_time(0.5) / 200;
    cfg.replicas = 4000;
    cfg.seed = 5;
    const auto batch = sample_spectra(cfg, SampleMode::eigen_sde);
    Welford w;
    for (const auto& s : batch.spectra) {
        for (double v : s.values) CHECK(v > 0.0);
        w.add(std::accumulate(s.values.begin(), s.values.end(), 0.0) / 4.0);
    }
    CHECK(std::abs(w.mean - 0.5) < 3.0 * w.stderr_mean());
}

TEST_CASE("empirical_density basics") {
    SpectraBatch batch;
    batch.spectra.push_back(Spectrum{{1.0}, 1.0});
    const auto h = empirical_density(batch, 1, std::make_pair(0.0, 2.0));
    REQUIRE(h.masses.size() == 1);
    CHECK(h.masses[0] == 1.0);

    SpectraBatch multi;
    multi.spectra.push_back(Spectrum{{0.1, 0.5, 0.9}, 1.0});
    multi.spectra.push_back(Spectrum{{0.2, 0.6, 2.5}, 1.0});
    const auto h2 = empirical_density(multi, 7);
    double sum = 0.0;
    for (double m : h2.masses) sum += m;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    SpectraBatch empty;
    CHECK_THROWS_AS(empirical_density(empty, 4), input_domain_error);
}

TEST_CASE("config validation") {
    EnsembleConfig cfg;
    cfg.conv = TimeConvention(2, 4);
    cfg.tau_final = 1.0;
    cfg.dt_phys = 1.0; // exceeds total physical time r tau/(2N) = 0.125
    cfg.replicas = 1;
    CHECK_THROWS_AS(cfg.validate(), input_domain_error);
    cfg.dt_phys = 0.01;
    cfg.replicas = 0;
    CHECK_THROWS_AS(cfg.validate(), input_domain_error);
}
