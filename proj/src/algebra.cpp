#include "qlg/algebra.hpp"

#include <sstream>

namespace qlg::algebra {

namespace {

ComplexMatrix make_pauli(int i) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    switch (i) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -I, I, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw DomainError("pauli index must be in 0..3");
    }
    return m;
}

void check_mu(int mu, const char* what) {
    if (mu < 0 || mu > 3) {
        std::ostringstream os;
        os << what << ": index " << mu << " out of range 0..3";
        throw DomainError(os.str());
    }
}

}  // namespace

const ComplexMatrix& pauli(int i) {
    static const std::array<ComplexMatrix, 4> table{make_pauli(0), make_pauli(1), make_pauli(2),
                                                    make_pauli(3)};
    if (i < 0 || i > 3) throw DomainError("pauli index must be in 0..3");
    return table[static_cast<std::size_t>(i)];
}

const ComplexMatrix& identity(int n) {
    static const std::array<ComplexMatrix, 9> table = [] {
        std::array<ComplexMatrix, 9> t;
        for (int k = 0; k < 9; ++k) t[static_cast<std::size_t>(k)] = ComplexMatrix::Identity(k, k);
        return t;
    }();
    if (n < 0 || n > 8) throw DomainError("identity: cached sizes are 0..8");
    return table[static_cast<std::size_t>(n)];
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

const ComplexMatrix& gamma(int mu) {
    static const std::array<ComplexMatrix, 4> table = [] {
        std::array<ComplexMatrix, 4> t;
        t[0] = kron(pauli(1), pauli(0));
        const ComplexMatrix isy = I * pauli(2);
        for (int i = 1; i <= 3; ++i) t[static_cast<std::size_t>(i)] = kron(isy, pauli(i));
        return t;
    }();
    check_mu(mu, "gamma");
    return table[static_cast<std::size_t>(mu)];
}

const ComplexMatrix& gmatrix(int mu) {
    static const std::array<ComplexMatrix, 4> table = [] {
        std::array<ComplexMatrix, 4> t;
        t[0] = kron(pauli(1), kron(pauli(0), pauli(0)));
        const ComplexMatrix isy = I * pauli(2);
        for (int i = 1; i <= 3; ++i)
            t[static_cast<std::size_t>(i)] = kron(isy, kron(pauli(0), pauli(i)));
        return t;
    }();
    check_mu(mu, "gmatrix");
    return table[static_cast<std::size_t>(mu)];
}

const Eigen::Matrix4d& minkowski() {
    static const Eigen::Matrix4d eta = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
    return eta;
}

const Mat4& raw_vec_to_spinor_map() {
    // Columns act on (A0, Ax, Ay, Az); rows give (-Ax + iAy, A0 + Az, -A0 + Az, Ax + iAy).
    static const Mat4 m = [] {
        Mat4 r;
        r << 0, -1, I, 0,
             1, 0, 0, 1,
            -1, 0, 0, 1,
             0, 1, I, 0;
        return r;
    }();
    return m;
}

const VecSpinorMaps& vec_to_spinor_maps() {
    static const VecSpinorMaps maps = [] {
        VecSpinorMaps out;
        out.u = raw_vec_to_spinor_map() / std::sqrt(2.0);
        out.uc = out.u * minkowski().cast<cplx>();
        return out;
    }();
    return maps;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("max_abs_diff: shape mismatch");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double abs_tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= abs_tol;
}

double hermiticity_defect(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw DomainError("hermiticity_defect: matrix not square");
    return max_abs_diff(h, h.adjoint());
}

double unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) throw DomainError("unitarity_defect: matrix not square");
    return max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(u.rows(), u.cols()));
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b + b * a;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

ComplexMatrix herm_expm(const ComplexMatrix& h, double t) {
    if (h.rows() != h.cols()) throw DomainError("herm_expm: matrix not square");
    const double defect = hermiticity_defect(h);
    if (defect > kHermiticityTolerance) {
        std::ostringstream os;
        os << "herm_expm: generator is not hermitian (max |h - h^dagger| = " << defect
           << ", tolerance " << kHermiticityTolerance << ")";
        throw DomainError(os.str());
    }
    const ComplexMatrix hh = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hh);
    const Eigen::VectorXd& w = es.eigenvalues();
    ComplexVector phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(-I * (w(k) * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qlg::algebra
