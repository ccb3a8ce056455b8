// Experiment runner: seeds, configures, executes the validation suites,
// and persists CSV/JSON/SVG artifacts.
//
//   wishart-cli <experiment> [--config FILE] [--seed S] [--outdir D] [--plot]
//
// Exit status: 0 all checks pass, 1 tolerance failure, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wishart/csvio.hpp"
#include "wishart/errors.hpp"
#include "wishart/experiments.hpp"
#include "wishart/manifest.hpp"
#include "wishart/sha256.hpp"
#include "wishart/svgplot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wishart;
using namespace wishart::xp;

namespace {

const std::vector<std::string> kExperiments = {"density",  "charpoly",   "edge-soft",
                                               "edge-hard", "characteristics", "rtransform",
                                               "sde-check", "validate-all"};

struct CliOptions {
    std::string experiment;
    std::string config_path;
    std::string outdir = "out";
    uint64_t seed = 7;
    bool seed_given = false;
    bool outdir_given = false;
    bool plot = false;
};

unsigned workers_from_env() {
    const char* v = std::getenv("WISHART_THREADS");
    if (!v) return 0;
    const long n = std::strtol(v, nullptr, 10);
    return n <= 0 ? 0 : static_cast<unsigned>(n);
}

// Flat JSON config; CLI flags take precedence over file values.
RunParams params_from_config(const json& cfg, const CliOptions& opt, std::string& outdir) {
    RunParams p;
    if (cfg.contains("format-version") && cfg["format-version"].get<int>() != kFormatVersion)
        throw input_domain_error("config: unsupported format-version");
    if (cfg.contains("N")) p.N = cfg["N"].get<int>();
    if (cfg.contains("M")) p.M = cfg["M"].get<int>();
    if (cfg.contains("tau")) p.tau = cfg["tau"].get<double>();
    if (cfg.contains("replicas")) p.replicas = cfg["replicas"].get<int>();
    if (cfg.contains("bins")) p.bins = cfg["bins"].get<int>();
    if (cfg.contains("dt")) p.dt_phys = cfg["dt"].get<double>();
    if (cfg.contains("seed")) p.seed = cfg["seed"].get<uint64_t>();
    if (cfg.contains("s-grid"))
        for (const auto& v : cfg["s-grid"]) p.s_grid.push_back(v.get<double>());
    if (cfg.contains("z-grid"))
        for (const auto& v : cfg["z-grid"])
            p.z_grid.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    if (cfg.contains("outdir")) outdir = cfg["outdir"].get<std::string>();

    if (opt.seed_given) p.seed = opt.seed;
    if (opt.outdir_given || !cfg.contains("outdir")) outdir = opt.outdir;
    if (p.N != 0 && p.M != 0 && p.N > p.M) throw input_domain_error("config: need N <= M");
    p.workers = workers_from_env();
    return p;
}

ExperimentResult dispatch(const std::string& name, const RunParams& p) {
    if (name == "density") return run_density(p);
    if (name == "charpoly") return run_charpoly(p);
    if (name == "edge-soft") return run_edge_soft(p);
    if (name == "edge-hard") return run_edge_hard(p);
    if (name == "characteristics") return run_characteristics(p);
    if (name == "rtransform") return run_rtransform(p);
    if (name == "sde-check") return run_sde_check(p);
    throw input_domain_error("unknown experiment: " + name);
}

int persist(const ExperimentResult& res, const fs::path& dir, const json& config_echo,
            uint64_t seed, const std::string& started, bool plot) {
    fs::create_directories(dir);
    std::vector<ManifestFile> files;
    for (const auto& t : res.tables) {
        const fs::path csv = dir / (t.name + ".csv");
        write_csv(csv.string(), t);
        files.push_back({t.name + ".csv", sha256_file_hex(csv.string())});
        if (plot) {
            const fs::path svg = dir / (t.name + ".svg");
            write_svg_plot(csv.string(), svg.string());
            files.push_back({t.name + ".svg", sha256_file_hex(svg.string())});
        }
    }
    write_manifest(dir.string(), res, config_echo.dump(), seed, started, utc_now_iso8601(),
                   files);
    for (const auto& c : res.checks)
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": measured "
                  << format_double(c.measured) << (c.cmp == CheckResult::Cmp::le ? " <= " : " >= ")
                  << format_double(c.tolerance) << "\n";
    return res.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wishart matrix diffusion experiment runner"};
    app.require_subcommand(1);

    CliOptions opt;
    for (const auto& name : kExperiments) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "flat JSON config file");
        auto* s = sub->add_option("--seed", opt.seed, "override config seed");
        auto* o = sub->add_option("--outdir", opt.outdir, "output directory");
        sub->add_flag("--plot", opt.plot, "emit SVG plots next to each CSV");
        sub->callback([&, name, s, o]() {
            opt.experiment = name;
            opt.seed_given = s->count() > 0;
            opt.outdir_given = o->count() > 0;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // usage error, no files written
    }

    try {
        json cfg = json::object();
        if (!opt.config_path.empty()) {
            std::ifstream f(opt.config_path);
            if (!f) {
                std::cerr << "error: cannot open config " << opt.config_path << "\n";
                return 2;
            }
            f >> cfg;
        }
        std::string outdir = opt.outdir;
        const RunParams p = params_from_config(cfg, opt, outdir);
        const std::string started = utc_now_iso8601();

        json echo = cfg;
        echo["experiment"] = opt.experiment;
        echo["seed"] = p.seed;
        echo["outdir"] = outdir;

        if (opt.experiment == "validate-all") {
            const auto all = run_validate_all(p);
            int status = 0;
            for (const auto& res : all) {
                const int rc = persist(res, fs::path(outdir) / res.experiment, echo, p.seed,
                                       started, opt.plot);
                status = std::max(status, rc);
            }
            return status;
        }
        const auto res = dispatch(opt.experiment, p);
        return persist(res, fs::path(outdir) / opt.experiment, echo, p.seed, started, opt.plot);
    } catch (const input_domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
