#include "qlg/qubit_encoding.hpp"

#include <sstream>
#include <vector>

namespace qlg::qubits {

LocalKet encode_local(const Spinor4& calA, const Spinor4& calA_tilde, const Spinor4& psi,
                      const Spinor4& psi_tilde) {
    LocalKet k;
    k << calA, calA_tilde, psi, psi_tilde;
    return k;
}

LocalFields decode_local(const LocalKet& ket) {
    return {ket.segment<4>(0), ket.segment<4>(4), ket.segment<4>(8), ket.segment<4>(12)};
}

std::size_t binary_index(std::span<const int> bits) {
    std::size_t n = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw DomainError("binary_index: qubit values must be 0 or 1");
        n = 2 * n + static_cast<std::size_t>(b);
    }
    return n;
}

namespace {

IntMatrix kron_int(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

LadderOperator jordan_wigner(int alpha, int Q) {
    if (Q < 1 || Q > kMaxDenseQubits) {
        std::ostringstream os;
        os << "jordan_wigner: Q = " << Q << " outside the dense range 1.." << kMaxDenseQubits;
        throw DomainError(os.str());
    }
    if (alpha < 1 || alpha > Q) {
        std::ostringstream os;
        os << "jordan_wigner: alpha = " << alpha << " outside 1.." << Q;
        throw DomainError(os.str());
    }
    IntMatrix sz(2, 2), lower(2, 2), id(2, 2);
    sz << 1, 0, 0, -1;
    lower << 0, 1, 0, 0;
    id << 1, 0, 0, 1;

    IntMatrix m = IntMatrix::Identity(1, 1);
    for (int q = 1; q <= Q; ++q) m = kron_int(m, q < alpha ? sz : (q == alpha ? lower : id));
    return {alpha, Q, std::move(m)};
}

std::size_t position_ket_index(std::size_t site, std::size_t local, const GridSpec& spec, int Q) {
    if (Q < 1 || Q > 30) throw DomainError("position_ket_index: Q out of range");
    const std::size_t dim = std::size_t{1} << Q;
    if (site >= spec.sites()) {
        std::ostringstream os;
        os << "position_ket_index: site " << site << " outside grid of " << spec.sites() << " sites";
        throw DomainError(os.str());
    }
    if (local >= dim) {
        std::ostringstream os;
        os << "position_ket_index: local index " << local << " >= 2^Q = " << dim;
        throw DomainError(os.str());
    }
    return site * dim + local;
}

CarReport check_anticommutation(int Q) {
    std::vector<LadderOperator> a;
    for (int alpha = 1; alpha <= Q; ++alpha) a.push_back(jordan_wigner(alpha, Q));
    const Eigen::Index dim = a.front().matrix.rows();
    const IntMatrix id = IntMatrix::Identity(dim, dim);
    CarReport report;
    for (int i = 0; i < Q; ++i) {
        const IntMatrix& ai = a[static_cast<std::size_t>(i)].matrix;
        for (int j = 0; j < Q; ++j) {
            const IntMatrix& aj = a[static_cast<std::size_t>(j)].matrix;
            const IntMatrix ajd = aj.transpose();
            const IntMatrix mixed = ai * ajd + ajd * ai;
            const IntMatrix same = ai * aj + aj * ai;
            const bool ok = (i == j ? mixed == id : mixed.isZero()) && same.isZero();
            ++report.pairs_checked;
            if (!ok && report.exact) {
                report.exact = false;
                report.worst_alpha = i + 1;
                report.worst_beta = j + 1;
            }
        }
    }
    return report;
}

}  // namespace qlg::qubits
