#pragma once

// Unitary building blocks of one lattice step. Every operator returns a fresh field
// and leaves its input untouched.
//
// Streams follow the gather convention: the new value at site s is taken from
// s + d along the axis, d being the per-component sign of the diagonal pattern.

#include "qlg/lattice.hpp"
#include "qlg/types.hpp"

#include <array>
#include <cstddef>

namespace qlg::ops {

enum class Variant { qft_limit, high_energy };
enum class GaugeSite { departure, arrival, midpoint };
enum class Chirality { left, right };

const char* variant_name(Variant v);
const char* gauge_site_name(GaugeSite g);

struct CollideParams {
    double eps = 0.0;
    double eps_L = 0.0;
    Variant variant = Variant::qft_limit;

    /// Throws DomainError unless both mixing parameters lie in [0, 1].
    void validate() const;
};

/// Gauge coupling seen by the psi streams. A null field disables the phase.
struct GaugeCoupling {
    const LatticeField* A = nullptr;
    double e = 0.0;
    GaugeSite site = GaugeSite::departure;

    bool active() const { return A != nullptr && e != 0.0; }
};

/// Diagonal spectra of sigma_z (x) sigma_z and sigma_z (x) 1 (x) sigma_z.
const std::array<int, 4>& psi_stream_signs();
const std::array<int, 8>& phi_stream_signs();

/// Sign s of the basis rotation R_x = exp(+i s pi/4 1(x)sigma_y), R_y = exp(-i s pi/4 1(x)sigma_x),
/// resolved so that R^dagger (sigma_z (x) sigma_z) R = sigma_z (x) sigma_axis. Always +1 on z.
int rotation_sign(Axis axis);

/// Pre-rotation R applied before the diagonal shift (post-rotation is its adjoint).
Mat4 psi_rotation(Axis axis);
Mat8 phi_rotation(Axis axis);

/// max |R^dagger D R - sigma_z (x) sigma_axis| for the rotations currently in use
/// (and the 8x8 analogue). Zero when the sign resolution holds.
double rotation_generator_defect(Axis axis);
double phi_rotation_generator_defect(Axis axis);

namespace testing {
/// Flips the rotation sign used by every stream; verification must then fail.
void inject_rotation_sign_fault(bool on);
bool rotation_sign_fault();
}  // namespace testing

LatticeField stream_psi_axis(const LatticeField& psi, Axis axis, const GaugeCoupling& gauge = {},
                             bool adjoint = false);
LatticeField stream_phi_axis(const LatticeField& phi, Axis axis, bool adjoint = false);

/// sqrt(1 - eps^2) 1 - i eps (sigma_x (x) 1).
Mat4 collide_psi_matrix(double eps);
Mat8 collide_phi_matrix(double eps_L);

LatticeField collide_psi(const LatticeField& psi, double eps);
LatticeField collide_phi(const LatticeField& phi, double eps_L);

/// Per-mode chiral displacement exp(i sigma_z (x) sigma.kappa) (4x4) and its paired
/// 8x8 form exp(i sigma_z (x) 1 (x) sigma.kappa).
Mat4 he_displacement_psi(const std::array<double, 3>& kappa);
Mat8 he_displacement_phi(const std::array<double, 3>& kappa);

/// Grid mode number of FFT bin j on an axis of length L, in [-L/2, L/2).
int fft_mode_number(int j, int L);

LatticeField collide_psi_HE(const LatticeField& psi, double eps);
LatticeField collide_phi_HE(const LatticeField& phi, double eps_L);

/// exp(i e A0 ell) on every component, per site. adjoint conjugates the phase.
LatticeField a0_phase(const LatticeField& psi, const LatticeField& A, double e,
                      bool adjoint = false);

struct BackreactionStats {
    std::size_t hermitized_sites = 0;
    std::size_t reacted_sites = 0;
};

/// Rotates the spatial part of the potential carried by Phi_1 with the generator built
/// from theta[psi]. `kappa` is the full dimensionless coupling (multiplier * m * tau).
/// A0 and Phi_2 are left untouched.
LatticeField backreaction(const LatticeField& phi, const LatticeField& psi, double kappa,
                          double rho_floor, BackreactionStats* stats = nullptr);

/// Hermiticity threshold above which the back-reaction generator is replaced by its
/// hermitian part.
inline constexpr double kGeneratorAsymmetryThreshold = 1e-9;

/// Reference streaming of one chirality: L follows exp(+sigma.grad), R follows
/// exp(-sigma.grad), axis factors applied z first. The other chirality is zeroed.
LatticeField weyl_stream_reference(const LatticeField& psi, Chirality chirality);

}  // namespace qlg::ops
