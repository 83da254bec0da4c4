#pragma once

// Four qubits per site hold the local amplitudes of (A, A-tilde, psi, psi-tilde).
// The local index is N = 8 q_g + 4 q_l + 2 q_o + q_s: (q_g, q_l) picks the field,
// (q_o, q_s) the spinor component.

#include "qlg/lattice.hpp"
#include "qlg/types.hpp"

#include <cstddef>

namespace qlg::qubits {

inline constexpr int kLocalQubits = 4;
inline constexpr int kMaxDenseQubits = 12;

using LocalKet = Eigen::Matrix<cplx, 16, 1>;

struct LocalFields {
    Spinor4 calA = Spinor4::Zero();
    Spinor4 calA_tilde = Spinor4::Zero();
    Spinor4 psi = Spinor4::Zero();
    Spinor4 psi_tilde = Spinor4::Zero();  // no equation of motion; stays a placeholder
};

LocalKet encode_local(const Spinor4& calA, const Spinor4& calA_tilde, const Spinor4& psi,
                      const Spinor4& psi_tilde);
LocalFields decode_local(const LocalKet& ket);

/// Binary index from qubit values q_1..q_Q (q_1 most significant).
std::size_t binary_index(std::span<const int> bits);

/// Integer-valued dense matrix on 2^Q states.
using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

struct LadderOperator {
    int alpha = 1;
    int qubits = 1;
    IntMatrix matrix;  // real, so the adjoint is the transpose

    IntMatrix dagger() const { return matrix.transpose(); }
    ComplexMatrix to_complex() const { return matrix.cast<cplx>(); }
};

/// a_alpha = sigma_z^{(x) alpha-1} (x) a (x) 1^{(x) Q-alpha}, a = [[0,1],[0,0]].
LadderOperator jordan_wigner(int alpha, int Q);

/// Global basis index of |x, N> on the grid with Q qubits per site.
std::size_t position_ket_index(std::size_t site, std::size_t local, const GridSpec& spec,
                               int Q = kLocalQubits);

struct CarReport {
    bool exact = true;
    int pairs_checked = 0;
    int worst_alpha = 0;
    int worst_beta = 0;
};

/// Checks {a_alpha, a_beta^dagger} = delta 1 and {a_alpha, a_beta} = 0 for every pair,
/// in exact integer arithmetic.
CarReport check_anticommutation(int Q);

}  // namespace qlg::qubits
