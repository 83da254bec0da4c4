#pragma once

// Brute-force references assembled from dense matrices, independent of the
// streaming/collide pipeline: full one-step unitaries on tiny grids, per-mode
// step matrices, the spin-chain path sum, and continuum dispersion targets.

#include "qlg/config.hpp"
#include "qlg/lattice.hpp"
#include "qlg/operators.hpp"

#include <vector>

namespace qlg::oracle {

inline constexpr Eigen::Index kMaxPsiAmplitudes = 64;
inline constexpr Eigen::Index kMaxPhiAmplitudes = 128;

enum class Sector { psi, phi };

struct DenseStep {
    Sector sector = Sector::psi;
    ComplexMatrix matrix;
    double unitarity_defect = 0.0;

    Eigen::Index dimension() const { return matrix.rows(); }
};

/// Dense U_psi for the gauge field A (ignored in free mode). Index = site * 4 + component.
DenseStep dense_psi_step(const SimConfig& cfg, const LatticeField& A);

/// Dense U_Phi with the back reaction built from psi. Index = site * 8 + component.
DenseStep dense_phi_step(const SimConfig& cfg, const LatticeField& psi);

/// Applies a dense step to a field flattened in storage order.
LatticeField apply_dense(const DenseStep& step, const LatticeField& field);

/// One step on the plane wave exp(i k.x) with zero gauge field: 4x4 (psi) or 8x8 (Phi).
ComplexMatrix mode_matrix(const SimConfig& cfg, const std::array<double, 3>& k,
                          Sector sector = Sector::psi);

/// Eigenphases omega with eigenvalues exp(-i omega), sorted ascending.
std::vector<double> eigenphases(const ComplexMatrix& u);

/// sqrt(k^2 + m^2); with m = 0 this is the massless (Maxwell) target |k|.
double analytic_dispersion(double k, double m);

struct PathKernel {
    Mat4 kernel = Mat4::Zero();
    long chains = 0;  // chains whose displacement meets the endpoint constraint

    /// 2x2 block mapping chirality `from` into chirality `to`.
    Eigen::Matrix<cplx, 2, 2> chiral_block(ops::Chirality to, ops::Chirality from) const;
};

inline constexpr int kMaxPathSteps = 14;

/// Propagator from site x_a to x_b after N steps of the free 1D psi step, summed over all
/// 2^N spin chains with a grid-momentum filter on the endpoint. The config must describe a
/// 1D grid along x with the qft_limit collide.
PathKernel path_sum_kernel_1d(int x_a, int x_b, int N, const SimConfig& cfg);

/// (x_b, x_a) 4x4 block of a dense psi propagator, e.g. a power of a DenseStep matrix.
Mat4 propagator_block(const ComplexMatrix& propagator, int x_a, int x_b);

}  // namespace qlg::oracle
