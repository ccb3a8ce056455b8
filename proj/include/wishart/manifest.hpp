#pragma once

#include <string>
#include <vector>

#include "wishart/experiments.hpp"

namespace wishart::xp {

constexpr const char* kLibraryVersion = "0.1.0";
constexpr int kFormatVersion = 1;

struct ManifestFile {
    std::string path; // relative to the experiment outdir
    std::string sha256;
};

// Writes <dir>/manifest.json: config echo, seed, wall times, library
// version, per-check results, and a content hash for every emitted file.
void write_manifest(const std::string& dir, const ExperimentResult& result,
                    const std::string& config_echo_json, uint64_t seed,
                    const std::string& started_utc, const std::string& ended_utc,
                    const std::vector<ManifestFile>& files);

std::string utc_now_iso8601();

} // namespace wishart::xp
