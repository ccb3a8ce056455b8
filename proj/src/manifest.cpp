#include "wishart/manifest.hpp"

#include <ctime>
#include <fstream>

#include <json.hpp>

namespace wishart::xp {

std::string utc_now_iso8601() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::string& dir, const ExperimentResult& result,
                    const std::string& config_echo_json, uint64_t seed,
                    const std::string& started_utc, const std::string& ended_utc,
                    const std::vector<ManifestFile>& files) {
    nlohmann::json j;
    j["experiment"] = result.experiment;
    j["format-version"] = kFormatVersion;
    j["library_version"] = kLibraryVersion;
    j["config"] = nlohmann::json::parse(config_echo_json.empty() ? "{}" : config_echo_json);
    j["seed"] = seed;
    j["started_utc"] = started_utc;
    j["ended_utc"] = ended_utc;
    j["wall_seconds"] = result.wall_seconds;

    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : result.checks) {
        checks.push_back({{"name", c.name},
                          {"measured", c.measured},
                          {"tolerance", c.tolerance},
                          {"comparison", c.cmp == CheckResult::Cmp::le ? "<=" : ">="},
                          {"pass", c.pass}});
    }
    j["checks"] = checks;
    j["all_pass"] = result.all_pass();

    nlohmann::json fl = nlohmann::json::array();
    for (const auto& f : files) fl.push_back({{"path", f.path}, {"sha256", f.sha256}});
    j["files"] = fl;

    std::ofstream out(dir + "/manifest.json", std::ios::binary);
    out << j.dump(2) << "\n";
}

} // namespace wishart::xp
