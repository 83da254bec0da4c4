#include "qlg/run.hpp"

#include "qlg/snapshot.hpp"

#include <openssl/evp.h>

#include "json.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#ifndef QLG_VERSION
#define QLG_VERSION "0.0.0"
#endif

namespace qlg::io {

namespace fs = std::filesystem;

const char* code_version() { return QLG_VERSION; }

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string snapshot_name(const char* field, long step) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s_%08ld.snap", field, step);
    return buf;
}

}  // namespace

std::string observables_header() {
    return "step,norm_psi,norm_phi,total_J0,E_energy,B_energy,divA_max,dirac_energy";
}

std::string observables_row(const Observables& o) {
    return std::to_string(o.step) + ',' + fmt(o.norm_psi) + ',' + fmt(o.norm_phi) + ',' +
           fmt(o.total_J0) + ',' + fmt(o.E_energy) + ',' + fmt(o.B_energy) + ',' +
           fmt(o.divA_max) + ',' + fmt(o.dirac_energy);
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for checksum: " + path.string());

    const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                      &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw IoError("SHA-256 initialisation failed for " + path.string());
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0)
            EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    if (in.bad()) throw IoError("read error while hashing " + path.string());

    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex += kHex[md[i] >> 4];
        hex += kHex[md[i] & 0xF];
    }
    return hex;
}

std::string manifest_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["version"] = m.version;
    j["start_step"] = m.start_step;
    j["end_step"] = m.end_step;
    j["cadence"] = m.cadence;
    j["config"] = m.config_echo;
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& f : m.files)
        j["files"].push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    return j.dump(2) + "\n";
}

RunManifest run_command(const SimConfig& cfg, const fs::path& out_dir) {
    cfg.validate();
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir))
        throw IoError("cannot create output directory: " + out_dir.string());

    RunManifest manifest;
    manifest.config_echo = emit_config(cfg);
    manifest.version = code_version();
    manifest.cadence = cfg.cadence;

    std::vector<std::string> written;
    const fs::path csv_path = out_dir / "observables.csv";
    std::ofstream csv(csv_path, std::ios::trunc);
    if (!csv) throw IoError("cannot open for writing: " + csv_path.string());
    csv << observables_header() << '\n';

    SystemState state = make_state(cfg);
    manifest.start_step = state.step;
    const long obs_every = cfg.cadence > 0 ? cfg.cadence : 1;
    const long end = state.step + cfg.steps;

    auto snapshot = [&] {
        for (const auto& [name, field] : {std::pair{"psi", &state.psi}, std::pair{"phi", &state.phi}}) {
            const std::string file = snapshot_name(name, state.step);
            write_snapshot((out_dir / file).string(), *field, static_cast<std::uint64_t>(state.step));
            written.push_back(file);
        }
    };
    auto record = [&] {
        csv << observables_row(observables(state, cfg)) << '\n';
        csv.flush();
        if (!csv) throw IoError("failed writing " + csv_path.string());
    };

    record();
    snapshot();
    while (state.step < end) {
        step_system(state, cfg);
        const long done = state.step - manifest.start_step;
        const bool last = state.step == end;
        if (done % obs_every == 0 || last) record();
        if ((cfg.cadence > 0 && done % cfg.cadence == 0) || last) snapshot();
    }
    csv.close();
    manifest.end_step = state.step;

    written.insert(written.begin(), "observables.csv");
    for (const auto& file : written)
        manifest.files.push_back({file, sha256_file(out_dir / file), fs::file_size(out_dir / file)});

    const fs::path mpath = out_dir / "manifest.json";
    std::ofstream mout(mpath, std::ios::trunc);
    if (!mout) throw IoError("cannot open for writing: " + mpath.string());
    mout << manifest_json(manifest);
    if (!mout) throw IoError("failed writing " + mpath.string());
    return manifest;
}

}  // namespace qlg::io
