#pragma once

// Oracle-backed verification suite shared by the `verify` subcommand and the
// acceptance test binary.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace qlg::verify {

enum class Level { fast, full };

struct CheckResult {
    std::string id;
    std::string title;
    bool passed = false;
    double measured = 0.0;
    std::string bound;   // e.g. "< 1e-09" or ">= 3.5", applied to `measured`
    std::string detail;
    double seconds = 0.0;
};

/// "rotation", then "1" .. "11".
const std::vector<std::string>& check_ids();

/// Runs one check. `scratch` receives temporary run directories.
/// Throws std::invalid_argument for an unknown id.
CheckResult run_check(const std::string& id, Level level, const std::filesystem::path& scratch);

/// Runs every check in order, optionally printing each line as it completes.
std::vector<CheckResult> run_all(Level level, const std::filesystem::path& scratch,
                                 std::ostream* progress = nullptr);

std::string format_result(const CheckResult& r);

}  // namespace qlg::verify
