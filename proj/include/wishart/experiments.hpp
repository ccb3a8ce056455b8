#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wishart/linalg.hpp"

namespace wishart::xp {

// One tolerance check, as it lands in the manifest.
struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    enum class Cmp { le, ge } cmp = Cmp::le;
    bool pass = false;
};

inline CheckResult check_le(std::string name, double measured, double tol) {
    return {std::move(name), measured, tol, CheckResult::Cmp::le, measured <= tol};
}
inline CheckResult check_ge(std::string name, double measured, double tol) {
    return {std::move(name), measured, tol, CheckResult::Cmp::ge, measured >= tol};
}

// One numeric table, streamed out as <name>.csv.
struct Series {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<CheckResult> checks;
    std::vector<Series> tables;
    double wall_seconds = 0.0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Shared experiment parameters; each experiment documents which fields
// it reads and supplies acceptance-grade defaults for the rest.
struct RunParams {
    int N = 0;
    int M = 0;
    double tau = 0.0;
    int replicas = 0;
    int bins = 0;
    uint64_t seed = 7;
    double dt_phys = 0.0; // 0 = experiment default
    unsigned workers = 0; // 0 = hardware
    std::vector<double> s_grid;
    std::vector<cplx> z_grid;
};

ExperimentResult run_density(RunParams p);
ExperimentResult run_charpoly(RunParams p);
ExperimentResult run_edge_soft(RunParams p);
ExperimentResult run_edge_hard(RunParams p);
ExperimentResult run_characteristics(RunParams p);
ExperimentResult run_rtransform(RunParams p);
ExperimentResult run_sde_check(RunParams p);

// validate-all extras (no tunable params; desk-scale identities)
ExperimentResult run_monic_pde_check();
ExperimentResult run_finite_n_law(RunParams p);
ExperimentResult run_cauchy_check();
ExperimentResult run_special_checks();

std::vector<ExperimentResult> run_validate_all(const RunParams& p);

} // namespace wishart::xp
