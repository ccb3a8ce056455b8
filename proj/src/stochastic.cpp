#include "wishart/stochastic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "wishart/errors.hpp"

namespace wishart {

TimeConvention::TimeConvention(int n, int m) : N(n), M(m) {
    if (n < 1 || m < n) throw input_domain_error("TimeConvention: need 1 <= N <= M");
}

void EnsembleConfig::validate() const {
    if (tau_final <= 0.0) throw input_domain_error("EnsembleConfig: tau_final must be > 0");
    if (dt_phys <= 0.0) throw input_domain_error("EnsembleConfig: dt_phys must be > 0");
    if (dt_phys > conv.phys_time(tau_final) * (1.0 + 1e-12))
        throw input_domain_error("EnsembleConfig: dt_phys exceeds total physical time");
    if (replicas < 1) throw input_domain_error("EnsembleConfig: replicas must be >= 1");
}

void step_matrix_brownian(RectComplexMatrix& K, double dt_phys, GaussianStream& g) {
    if (dt_phys < 0.0) throw input_domain_error("step_matrix_brownian: dt_phys < 0");
    if (dt_phys == 0.0) return;
    const double s = std::sqrt(dt_phys);
    for (auto& e : K.data()) {
        const double dre = g.normal();
        const double dim = g.normal();
        e += cplx(s * dre, s * dim);
    }
}

namespace {

constexpr int kMaxHalvings = 20;

bool admissible(const std::vector<double>& v) {
    if (v.front() <= 0.0) return false;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] <= v[i - 1]) return false;
    return true;
}

// beta (nu+1) + 2 beta lam_i sum_{j != i} 1/(lam_i - lam_j)
void eigen_drift(const std::vector<double>& lam, const TimeConvention& c,
                 std::vector<double>& out) {
    const int n = static_cast<int>(lam.size());
    const double base = TimeConvention::beta * (c.nu() + 1.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) s += 1.0 / (lam[i] - lam[j]);
        out[i] = base + 2.0 * TimeConvention::beta * lam[i] * s;
    }
}

// (beta/2) [ (nu+1-1/beta)/kap_i + sum_{j!=i} (1/(kap_i-kap_j) + 1/(kap_i+kap_j)) ]
void singval_drift(const std::vector<double>& kap, const TimeConvention& c,
                   std::vector<double>& out) {
    const int n = static_cast<int>(kap.size());
    const double beta = TimeConvention::beta;
    for (int i = 0; i < n; ++i) {
        double s = (c.nu() + 1.0 - 1.0 / beta) / kap[i];
        for (int j = 0; j < n; ++j)
            if (j != i) s += 1.0 / (kap[i] - kap[j]) + 1.0 / (kap[i] + kap[j]);
        out[i] = 0.5 * beta * s;
    }
}

template <typename DriftFn, typename NoiseFn>
std::vector<double> bisected_step(std::vector<double> x, double dt, DriftFn&& drift,
                                  NoiseFn&& noise_scale, GaussianStream& g, int depth) {
    if (depth > kMaxHalvings)
        throw step_size_error("sde step: 20 dt-halvings exhausted; base dt too coarse");
    const int n = static_cast<int>(x.size());
    std::vector<double> d(n), prop(n);
    drift(x, d);
    const double sdt = std::sqrt(dt);
    for (int i = 0; i < n; ++i)
        prop[i] = x[i] + d[i] * dt + noise_scale(x[i]) * sdt * g.normal();
    if (admissible(prop)) return prop;
    auto half = bisected_step(std::move(x), dt / 2, drift, noise_scale, g, depth + 1);
    return bisected_step(std::move(half), dt / 2, drift, noise_scale, g, depth + 1);
}

void require_sde_input(const std::vector<double>& v, double dt) {
    if (dt < 0.0) throw input_domain_error("sde step: dt_phys < 0");
    if (v.empty()) throw input_domain_error("sde step: empty state");
    if (!admissible(v))
        throw input_domain_error("sde step: state must be positive, strictly ascending");
}

} // namespace

std::vector<double> step_eigenvalue_sde(const std::vector<double>& lam, double dt_phys,
                                        const TimeConvention& conv, GaussianStream& g) {
    require_sde_input(lam, dt_phys);
    if (dt_phys == 0.0) return lam;
    auto drift = [&conv](const std::vector<double>& x, std::vector<double>& out) {
        eigen_drift(x, conv, out);
    };
    auto noise = [](double xi) { return 2.0 * std::sqrt(xi); };
    return bisected_step(lam, dt_phys, drift, noise, g, 0);
}

std::vector<double> step_singvalue_sde(const std::vector<double>& kap, double dt_phys,
                                       const TimeConvention& conv, GaussianStream& g) {
    require_sde_input(kap, dt_phys);
    if (dt_phys == 0.0) return kap;
    auto drift = [&conv](const std::vector<double>& x, std::vector<double>& out) {
        singval_drift(x, conv, out);
    };
    auto noise = [](double) { return 1.0; };
    return bisected_step(kap, dt_phys, drift, noise, g, 0);
}

namespace {

Spectrum run_matrix_path(const EnsembleConfig& cfg, uint32_t replica) {
    const double t_final = cfg.conv.phys_time(cfg.tau_final);
    RectComplexMatrix K(cfg.conv.M, cfg.conv.N);
    GaussianStream g(cfg.seed, replica);
    double t = 0.0;
    uint32_t step = 0;
    while (t < t_final * (1.0 - 1e-15)) {
        const double dt = std::min(cfg.dt_phys, t_final - t);
        g.begin_step(step++);
        step_matrix_brownian(K, dt, g);
        t += dt;
    }
    return wishart_spectrum(K, cfg.tau_final);
}

Spectrum run_eigen_sde(const EnsembleConfig& cfg, uint32_t replica) {
    const double t_final = cfg.conv.phys_time(cfg.tau_final);
    const double t_burn = std::min(10.0 * cfg.dt_phys, 0.5 * t_final);
    GaussianStream g(cfg.seed, replica);

    RectComplexMatrix K(cfg.conv.M, cfg.conv.N);
    uint32_t step = 0;
    for (int k = 0; k < 10; ++k) {
        g.begin_step(step++);
        step_matrix_brownian(K, t_burn / 10.0, g);
    }
    std::vector<double> lam = wishart_spectrum(K, 0.0).values;

    double t = t_burn;
    while (t < t_final * (1.0 - 1e-15)) {
        const double dt = std::min(cfg.dt_phys, t_final - t);
        g.begin_step(step++);
        lam = step_eigenvalue_sde(lam, dt, cfg.conv, g);
        t += dt;
    }
    Spectrum s;
    s.values = std::move(lam);
    s.time_tau = cfg.tau_final;
    return s;
}

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace

SpectraBatch sample_spectra(const EnsembleConfig& cfg, SampleMode mode, unsigned workers) {
    cfg.validate();
    SpectraBatch batch;
    batch.config = cfg;
    batch.spectra.resize(cfg.replicas);

    const unsigned nw = std::min<unsigned>(resolve_workers(workers), cfg.replicas);
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error_msg;
    std::mutex err_mu;

    auto worker = [&]() {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= cfg.replicas || failed.load()) break;
            try {
                batch.spectra[k] = (mode == SampleMode::matrix_path)
                                       ? run_matrix_path(cfg, static_cast<uint32_t>(k))
                                       : run_eigen_sde(cfg, static_cast<uint32_t>(k));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(err_mu);
                error_msg = e.what();
                failed.store(true);
                break;
            }
        }
    };

    if (nw <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (unsigned w = 0; w < nw; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw step_size_error("sample_spectra: " + error_msg);
    return batch;
}

Histogram empirical_density(const SpectraBatch& batch, int bins,
                            std::optional<std::pair<double, double>> range) {
    if (batch.spectra.empty()) throw input_domain_error("empirical_density: empty batch");
    if (bins < 1) throw input_domain_error("empirical_density: bins must be >= 1");

    double lo = 0.0, hi = 0.0;
    if (range) {
        lo = range->first;
        hi = range->second;
    } else {
        for (const auto& s : batch.spectra)
            for (double v : s.values) hi = std::max(hi, v);
        hi *= 1.05;
    }
    if (!(hi > lo)) throw input_domain_error("empirical_density: empty range");

    Histogram h;
    h.bin_edges.resize(bins + 1);
    const double w = (hi - lo) / bins;
    for (int b = 0; b <= bins; ++b) h.bin_edges[b] = lo + w * b;

    std::vector<int64_t> counts(bins, 0);
    int64_t total = 0;
    for (const auto& s : batch.spectra) {
        for (double v : s.values) {
            if (v < lo || v > hi) continue;
            int b = static_cast<int>((v - lo) / w);
            b = std::min(b, bins - 1);
            ++counts[b];
            ++total;
        }
    }
    if (total == 0) throw input_domain_error("empirical_density: no samples in range");
    h.masses.resize(bins);
    for (int b = 0; b < bins; ++b)
        h.masses[b] = static_cast<double>(counts[b]) / static_cast<double>(total);
    return h;
}

} // namespace wishart
