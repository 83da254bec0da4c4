#pragma once

// Constant matrices of the chiral representation and small dense helpers.
//
// Tensor-slot conventions: gamma^0 = sigma_x (x) 1, gamma^i = i sigma_y (x) sigma_i,
// G^0 = sigma_x (x) 1 (x) 1, G^i = i sigma_y (x) 1 (x) sigma_i. Spinor component
// order is (L-up, L-down, R-up, R-down).

#include "qlg/types.hpp"

namespace qlg::algebra {

/// Pauli matrices: index 0 is the 2x2 identity, 1..3 are sigma_x, sigma_y, sigma_z.
const ComplexMatrix& pauli(int i);

const ComplexMatrix& identity(int n);

/// Standard Kronecker product; result dims are the products of the input dims.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// 4x4 Dirac matrix gamma^mu (mu = 0..3). Throws DomainError on a bad index.
const ComplexMatrix& gamma(int mu);

/// 8x8 paired-spinor generalization G^mu (mu = 0..3).
const ComplexMatrix& gmatrix(int mu);

/// eta = diag(+1, -1, -1, -1).
const Eigen::Matrix4d& minkowski();

struct VecSpinorMaps {
    Mat4 u;   // calA = u * A^mu   (upper-index components)
    Mat4 uc;  // calA = uc * A_mu  (lower-index components); uc = u * eta
};

/// Unitary 4-vector -> 4-spinor maps, normalized by 1/sqrt(2).
const VecSpinorMaps& vec_to_spinor_maps();

/// The unnormalized component map read off the calA display (columns have norm sqrt 2).
const Mat4& raw_vec_to_spinor_map();

/// exp(-i h t) for hermitian h, via eigendecomposition.
/// Rejects h whose max |h - h^dagger| entry exceeds kHermiticityTolerance.
ComplexMatrix herm_expm(const ComplexMatrix& h, double t);

inline constexpr double kHermiticityTolerance = 1e-10;

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double abs_tol);

/// max entry of |h - h^dagger|.
double hermiticity_defect(const ComplexMatrix& h);

/// max entry of |u^dagger u - 1|.
double unitarity_defect(const ComplexMatrix& u);

/// {a, b} = ab + ba.
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qlg::algebra
