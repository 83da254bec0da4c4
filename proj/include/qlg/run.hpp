#pragma once

#include "qlg/config.hpp"
#include "qlg/evolution.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace qlg::io {

/// Version string embedded in every manifest.
const char* code_version();

struct ArtifactRecord {
    std::string path;  // relative to the output directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct RunManifest {
    std::string config_echo;
    std::string version;
    long start_step = 0;
    long end_step = 0;
    long cadence = 0;
    std::vector<ArtifactRecord> files;
};

/// Column order of the observables table.
std::string observables_header();
std::string observables_row(const Observables& o);

/// Lowercase hex SHA-256 of a file's contents.
std::string sha256_file(const std::filesystem::path& path);

/// Runs cfg.steps steps from the configured initial state, writing observables.csv,
/// psi/phi snapshots and manifest.json into out_dir (created if missing).
/// Observables are written every `cadence` steps (every step when cadence is 0);
/// snapshots at step 0, every `cadence` steps and at the final step.
RunManifest run_command(const SimConfig& cfg, const std::filesystem::path& out_dir);

std::string manifest_json(const RunManifest& m);

}  // namespace qlg::io
