#pragma once

// Conversions between real 4-vectors and their Majorana-style 4-spinor images,
// the Dirac current, the theta matrix of the back reaction, and the discrete
// sigma.grad (curl) operators acting on spinor fields.
//
// Component layout of the image of (A0, Ax, Ay, Az):
//     (-Ax + i Ay,  A0 + Az,  -A0 + Az,  Ax + i Ay)

#include "qlg/lattice.hpp"
#include "qlg/types.hpp"

namespace qlg {

using ThetaMatrix = Mat4;

inline constexpr double kImageTolerance = 1e-9;

Spinor4 fourvec_to_calA(const FourVector& a);

/// Strict inverse. Throws DomainError when s is not the image of a real 4-vector.
FourVector calA_to_fourvec(const Spinor4& s);

/// Largest violation of the real-image constraints; 0 for exact images.
double calA_image_defect(const Spinor4& s);

/// Lenient inverse used for complex (analytic-signal) potentials: applies the
/// complex inverse map and returns the real part.
FourVector calA_real_part(const Spinor4& s);

/// Complex 4-vector (A0, Ax, Ay, Az) obtained from the complex inverse map.
Eigen::Matrix<cplx, 4, 1> calA_complex_inverse(const Spinor4& s);

/// Image of the current (rho, J); same layout as fourvec_to_calA.
Spinor4 source_spinor_from_J(const FourVector& j);

/// J^nu = psi^dagger gamma^0 gamma^nu psi.
FourVector current_from_psi(const Spinor4& psi);

/// M^{mu nu} = psibar [gamma^mu, gamma^nu] psi / max(psi^dagger psi, rho_floor).
ThetaMatrix theta_matrix(const Spinor4& psi, double rho_floor);

/// -i lambda_L F.
Spinor4 dual_spinor(const Spinor4& calF, double lambda_L);

/// (1 (x) sigma.grad) applied with central differences on the periodic grid.
/// Rejects grids where no axis supports a central difference or an axis has length 2.
LatticeField curl_operator_apply(const LatticeField& field, double spacing);

/// Same stencil without the grid check; axes of length 1 contribute nothing.
LatticeField sigma_grad_apply(const LatticeField& field, double spacing);

bool supports_central_difference(const GridSpec& g);

/// (-d_t + 1 (x) sigma.grad) applied to the image of the 4-potential, where the time
/// derivative is the backward difference (a_field - a_prev) / dt.
LatticeField fourcurl_build_F(const LatticeField& a_field, const LatticeField& a_prev, double dt,
                              double spacing);

/// The reversed-momentum operator (-d_t - 1 (x) sigma.grad) applied to a spinor field,
/// with backward time difference.
LatticeField reversed_momentum_apply(const LatticeField& f, const LatticeField& f_prev, double dt,
                                     double spacing);

struct EBSample {
    Eigen::Vector3d E = Eigen::Vector3d::Zero();
    Eigen::Vector3d B = Eigen::Vector3d::Zero();
    double lorenz = 0.0;  // d_mu A^mu
};

/// Reads E, B and the Lorenz divergence back out of one F-spinor.
EBSample extract_EB(const Spinor4& calF);

/// Central-difference spatial derivative d/d(axis) of component c of a 4-vector field.
double central_derivative(const LatticeField& f, std::size_t site, Axis axis, int c,
                          double spacing);

}  // namespace qlg
