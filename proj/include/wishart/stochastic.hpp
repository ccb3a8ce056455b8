#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wishart/linalg.hpp"
#include "wishart/rng.hpp"

namespace wishart {

// Fixed beta = 2 (complex entries). Houses the one global time
// convention: physical entry-diffusion time t = r*tau/(2N), under which
// E[Tr L]/N = tau and the spectrum support is [c- tau, c+ tau].
struct TimeConvention {
    int N = 1;
    int M = 1;
    static constexpr int beta = 2;

    TimeConvention() = default;
    TimeConvention(int n, int m);

    int nu() const { return M - N; }
    double r() const { return static_cast<double>(N) / M; }
    double phys_time(double tau) const { return r() * tau / (2.0 * N); }
    double tau_of_phys(double t) const { return 2.0 * N * t / r(); }
};

struct EnsembleConfig {
    TimeConvention conv;
    double tau_final = 1.0;
    double dt_phys = 0.0; // physical-time step
    int replicas = 1;
    uint64_t seed = 0;

    void validate() const;
};

struct SpectraBatch {
    std::vector<Spectrum> spectra; // one per replica, shared time_tau
    EnsembleConfig config;
};

// Mass-normalized pooled histogram; sum(masses) = 1.
struct Histogram {
    std::vector<double> bin_edges;
    std::vector<double> masses;
};

enum class SampleMode { matrix_path, eigen_sde };

// One Euler step of the entrywise complex Brownian walk: independent
// N(0, dt) increments on the real and imaginary part of every entry.
void step_matrix_brownian(RectComplexMatrix& K, double dt_phys, GaussianStream& g);

// Euler-Maruyama step of
//   d lam_i = 2 sqrt(lam_i) dB_i + beta (nu+1 + 2 lam_i sum_{j!=i} 1/(lam_i-lam_j)) dt.
// A proposal that loses positivity or strict ascending order is
// rejected and the interval is bisected (fresh noise each try, at most
// 20 levels); throws step_size_error when exhausted.
std::vector<double> step_eigenvalue_sde(const std::vector<double>& lam, double dt_phys,
                                        const TimeConvention& conv, GaussianStream& g);

// Same scheme for the singular values,
//   d kap_i = dB_i + (beta/2) [ (nu+1-1/beta)/kap_i
//             + sum_{j!=i} (1/(kap_i-kap_j) + 1/(kap_i+kap_j)) ] dt.
std::vector<double> step_singvalue_sde(const std::vector<double>& kap, double dt_phys,
                                       const TimeConvention& conv, GaussianStream& g);

// Evolves `replicas` independent copies from K(0) = 0 to tau_final.
// matrix_path: entrywise Brownian walk, spectrum via SVD at the end.
// eigen_sde:   matrix-path burn-in to t0 = 10 dt_phys (the SDE cannot
//              start at the coincident zero initial condition), then
//              the eigenvalue SDE.
// Replica k draws from the deterministic stream (seed, k); `workers`
// caps the thread count (0 = hardware concurrency). Results do not
// depend on the worker count.
SpectraBatch sample_spectra(const EnsembleConfig& cfg, SampleMode mode, unsigned workers = 0);

// Pooled over all replicas and eigenvalues; values outside `range` are
// dropped; masses normalized to the in-range count. Default range is
// [0, 1.05 max lambda].
Histogram empirical_density(const SpectraBatch& batch, int bins,
                            std::optional<std::pair<double, double>> range = std::nullopt);

} // namespace wishart
