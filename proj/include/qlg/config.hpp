#pragma once

// Simulation parameters and their text form.
//
// Grammar: one `key = value` per line; `#` starts a comment; blank lines ignored.
// Unknown or repeated keys are errors. All quantities are in lattice units
// (ell = tau = c = hbar = 1 unless spacing/timestep say otherwise).

#include "qlg/lattice.hpp"
#include "qlg/operators.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qlg {

enum class Mode { free, qed_limit, superconducting };

const char* mode_name(Mode m);

enum class InitKind { vacuum, plane_wave, gaussian, two_packet, random };

const char* init_name(InitKind k);

// How the internal amplitude pattern of an initial field is chosen.
enum class PatternKind { positive_energy, negative_energy, transverse, explicit_values };

struct FieldInit {
    InitKind kind = InitKind::vacuum;
    std::array<int, 3> mode{0, 0, 0};  // grid mode numbers of the carrier wave
    double amplitude = 1.0;            // total norm for packets and random fields, per-site for waves
    double sigma = 4.0;                // packet width in sites
    PatternKind pattern = PatternKind::positive_energy;
    std::vector<cplx> values;          // explicit pattern, one entry per component

    friend bool operator==(const FieldInit&, const FieldInit&) = default;
};

struct SimConfig {
    GridSpec grid{};
    double m = 0.0;
    double m_L = 0.0;
    double e = 0.0;
    double phi0 = 1.0;
    Mode mode = Mode::free;
    ops::Variant variant = ops::Variant::qft_limit;
    double coupling = 2.0;  // back-reaction multiplier on m tau
    double rho_floor = 1e-12;
    ops::GaugeSite gauge_site = ops::GaugeSite::departure;
    bool london_preset = false;  // eps_L = 1, overriding m_L
    long steps = 0;
    long cadence = 0;  // 0: snapshots only at start and end
    std::uint64_t seed = 1;
    FieldInit psi_init{};
    FieldInit phi_init{.pattern = PatternKind::transverse, .values = {}};

    double eps() const { return m * grid.timestep; }
    double eps_L() const { return london_preset ? 1.0 : m_L * grid.timestep; }
    double kappa() const { return coupling * eps(); }
    bool gauge_coupled() const { return mode != Mode::free; }
    bool has_backreaction() const { return mode != Mode::free; }
    bool has_phi_mass() const { return mode != Mode::qed_limit; }
    ops::CollideParams collide_params() const { return {eps(), eps_L(), variant}; }

    /// Throws ConfigError naming the violated invariant.
    void validate() const;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::string& path);

/// Canonical text form with every field written out; parse_config(emit_config(c)) == c.
std::string emit_config(const SimConfig& c);

}  // namespace qlg
