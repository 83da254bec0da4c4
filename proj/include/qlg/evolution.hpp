#pragma once

#include "qlg/config.hpp"
#include "qlg/lattice.hpp"
#include "qlg/operators.hpp"

#include <cstdint>

namespace qlg {

struct SystemState {
    long step = 0;
    LatticeField psi;  // spinor4
    LatticeField phi;  // spinor8, (Phi_1, Phi_2)
    LatticeField A;    // fourvector, derived from Phi_1

    // Slices from the previous step, used for backward time differences.
    LatticeField psi_prev;
    LatticeField A_prev;
    bool has_prev = false;

    std::uint64_t phi_version = 0;
    std::uint64_t gauge_version = 0;
    std::size_t hermitized_total = 0;

    bool gauge_fresh() const { return phi_version == gauge_version; }
};

/// A = (e / (Phi0 ell)) Re(M^-1 Phi_1) per site, M the displayed 4-vector -> spinor map.
LatticeField gauge_from_phi(const LatticeField& phi, const SimConfig& cfg);

/// Recomputes the cached A after Phi changed.
void refresh_gauge(SystemState& state, const SimConfig& cfg);

/// Replaces Phi and refreshes the cache in one go.
void assign_phi(SystemState& state, LatticeField phi, const SimConfig& cfg);

/// Builds the initial state from the configured presets.
SystemState make_state(const SimConfig& cfg);

/// State with the given fields; A derived from phi.
SystemState make_state(const SimConfig& cfg, LatticeField psi, LatticeField phi);

/// U_psi = exp(i e A0 ell) S_x S_y S_z C. Throws std::logic_error when the cached A is stale.
LatticeField step_psi(const SystemState& state, const SimConfig& cfg);
LatticeField step_psi_adjoint(const SystemState& state, const SimConfig& cfg);

/// U_Phi = S_x S_y S_z C(G, eps_L) C[psi], using state.psi for the back reaction.
LatticeField step_phi(const SystemState& state, const SimConfig& cfg,
                      ops::BackreactionStats* stats = nullptr);
LatticeField step_phi_adjoint(const SystemState& state, const SimConfig& cfg);

/// psi step, then Phi step with the updated psi; advances the step counter.
void step_system(SystemState& state, const SimConfig& cfg);

/// Exact inverse of step_system.
void step_system_adjoint(SystemState& state, const SimConfig& cfg);

struct Observables {
    long step = 0;
    double norm_psi = 0.0;
    double norm_phi = 0.0;
    double total_J0 = 0.0;
    FourVector total_current{};
    double E_energy = 0.0;
    double B_energy = 0.0;
    double divA_max = 0.0;
    double dirac_energy = 0.0;
    double dirac_energy_imag = 0.0;
    double lagrangian = 0.0;
    std::size_t hermitized_sites = 0;
};

Observables observables(const SystemState& state, const SimConfig& cfg);

/// Re and Im of <psi| h_D |psi> with central differences, h_D built from the same
/// coupling sign as the streams.
cplx dirac_expectation(const LatticeField& psi, const LatticeField& A, double m, double e);

/// One psi step restricted to the plane wave exp(i k.x), probed through the engine.
Mat4 engine_mode_matrix(const SimConfig& cfg, const std::array<double, 3>& k);

/// Eigenvector of the engine mode matrix with the largest (or smallest) eigenphase.
Spinor4 energy_eigenvector(const SimConfig& cfg, const std::array<double, 3>& k, bool positive);

struct DispersionResult {
    double omega = 0.0;        // fitted phase advance per step, divided by tau
    double omega_dirac = 0.0;  // sqrt(k^2 + m^2)
    double zeta = 1.0;
};

/// Evolves the positive-energy plane wave for n_steps and fits the phase slope.
/// Requires free or qed_limit mode and a commensurate k.
DispersionResult measure_dispersion(const SimConfig& cfg, const std::array<double, 3>& k,
                                    int n_steps);

}  // namespace qlg
