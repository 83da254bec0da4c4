#include "qlg/config.hpp"
#include "qlg/evolution.hpp"
#include "qlg/operators.hpp"
#include "qlg/run.hpp"
#include "qlg/snapshot.hpp"
#include "qlg/verify.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2, kIoError = 3 };

int do_run(const std::string& config_path, const std::string& out_dir,
           std::optional<long> steps, std::optional<long> cadence) {
    qlg::SimConfig cfg = qlg::load_config(config_path);
    if (steps) cfg.steps = *steps;
    if (cadence) cfg.cadence = *cadence;
    cfg.validate();
    const auto manifest = qlg::io::run_command(cfg, out_dir);
    std::cout << "ran steps " << manifest.start_step << ".." << manifest.end_step << ", wrote "
              << manifest.files.size() << " files + manifest.json to " << out_dir << "\n";
    return kOk;
}

int do_verify(const std::string& level_name, bool inject_fault,
              const std::vector<std::string>& only, const std::string& scratch) {
    const auto level = level_name == "full" ? qlg::verify::Level::full : qlg::verify::Level::fast;
    qlg::ops::testing::inject_rotation_sign_fault(inject_fault);
    const std::vector<std::string>& ids = only.empty() ? qlg::verify::check_ids() : only;
    int failed = 0;
    for (const auto& id : ids) {
        const auto r = qlg::verify::run_check(id, level, scratch);
        std::cout << qlg::verify::format_result(r) << std::endl;
        if (!r.passed) ++failed;
    }
    std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed")
              << " (" << level_name << " level)\n";
    return failed == 0 ? kOk : kCheckFailed;
}

int do_dump(const std::string& snapshot, const std::string& out) {
    const auto snap = qlg::io::read_snapshot(snapshot);
    if (out.empty() || out == "-") {
        qlg::io::snapshot_to_csv(snap, std::cout);
        return kOk;
    }
    std::ofstream os(out, std::ios::trunc);
    if (!os) throw qlg::IoError("cannot open for writing: " + out);
    qlg::io::snapshot_to_csv(snap, os);
    if (!os) throw qlg::IoError("failed writing " + out);
    return kOk;
}

int do_dispersion(const std::string& config_path, int modes, int steps, const std::string& out) {
    const qlg::SimConfig cfg = qlg::load_config(config_path);
    std::ofstream file;
    if (!out.empty()) {
        file.open(out, std::ios::trunc);
        if (!file) throw qlg::IoError("cannot open for writing: " + out);
    }
    std::ostream& os = out.empty() ? std::cout : file;
    os << "n,k,omega,omega_dirac,zeta\n";
    char line[160];
    for (int n = 0; n < modes; ++n) {
        const auto k = qlg::grid_wavevector(cfg.grid, {n, 0, 0});
        const auto d = qlg::measure_dispersion(cfg, k, steps);
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g\n", n, k[0], d.omega,
                      d.omega_dirac, d.zeta);
        os << line;
    }
    if (!os) throw qlg::IoError("failed writing dispersion table");
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum lattice gas simulator for the Dirac-Maxwell-London system"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<long> steps, cadence;
    auto* run = app.add_subcommand("run", "evolve a configuration and write observables, snapshots, manifest");
    run->add_option("config", config_path, "configuration file")->required();
    run->add_option("-o,--out", out_dir, "output directory")->required();
    run->add_option("--steps", steps, "override the configured step count");
    run->add_option("--cadence", cadence, "override the snapshot/observable cadence");

    std::string level = "fast", scratch = std::filesystem::temp_directory_path().string();
    bool inject = false;
    std::vector<std::string> only;
    auto* verify = app.add_subcommand("verify", "run the oracle verification suite");
    verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    verify->add_flag("--inject-rotation-fault", inject, "flip the stream rotation sign (self-test)");
    verify->add_option("--only", only, "run only these check ids");
    verify->add_option("--scratch", scratch, "directory for temporary run output");

    std::string snapshot, dump_out;
    auto* dump = app.add_subcommand("dump", "convert a binary snapshot to CSV");
    dump->add_option("snapshot", snapshot, "snapshot file")->required();
    dump->add_option("-o,--out", dump_out, "CSV path (default stdout)");

    std::string disp_config, disp_out;
    int modes = 8, disp_steps = 64;
    auto* disp = app.add_subcommand("dispersion", "measure omega and zeta for the first grid modes along x");
    disp->add_option("config", disp_config, "configuration file")->required();
    disp->add_option("--modes", modes, "number of modes n = 0..modes-1")->check(CLI::PositiveNumber);
    disp->add_option("--steps", disp_steps, "steps per phase fit")->check(CLI::PositiveNumber);
    disp->add_option("-o,--out", disp_out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) return do_run(config_path, out_dir, steps, cadence);
        if (*verify) return do_verify(level, inject, only, scratch);
        if (*dump) return do_dump(snapshot, dump_out);
        if (*disp) return do_dispersion(disp_config, modes, disp_steps, disp_out);
    } catch (const qlg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const qlg::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIoError;
    } catch (const qlg::DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kConfigError;
    }
    return kOk;
}
