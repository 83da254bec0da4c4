#include "qlg/operators.hpp"

#include "qlg/algebra.hpp"
#include "qlg/spinor_maps.hpp"

#include <fftw3.h>

#include <atomic>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

namespace qlg::ops {

const char* variant_name(Variant v) {
    return v == Variant::qft_limit ? "qft_limit" : "high_energy";
}

const char* gauge_site_name(GaugeSite g) {
    switch (g) {
        case GaugeSite::departure: return "departure";
        case GaugeSite::arrival: return "arrival";
        case GaugeSite::midpoint: return "midpoint";
    }
    return "?";
}

void CollideParams::validate() const {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        std::ostringstream os;
        os << "collide parameter eps = " << eps << " outside [0, 1]";
        throw DomainError(os.str());
    }
    if (!(eps_L >= 0.0 && eps_L <= 1.0)) {
        std::ostringstream os;
        os << "collide parameter eps_L = " << eps_L << " outside [0, 1]";
        throw DomainError(os.str());
    }
}

const std::array<int, 4>& psi_stream_signs() {
    static const std::array<int, 4> d{+1, -1, -1, +1};
    return d;
}

const std::array<int, 8>& phi_stream_signs() {
    static const std::array<int, 8> d{+1, -1, +1, -1, -1, +1, -1, +1};
    return d;
}

namespace {

std::atomic<bool> g_rotation_fault{false};

using Mat2 = Eigen::Matrix<cplx, 2, 2>;

Mat2 spin_rotation(Axis axis, int sign) {
    const double c = std::cos(std::numbers::pi / 4.0);
    const Mat2 id = Mat2::Identity();
    switch (axis) {
        case Axis::x: return c * id + I * (sign * c) * Mat2(algebra::pauli(2));
        case Axis::y: return c * id - I * (sign * c) * Mat2(algebra::pauli(1));
        case Axis::z: return id;
    }
    return id;
}

Mat4 psi_rotation_with_sign(Axis axis, int sign) {
    return algebra::kron(algebra::pauli(0), spin_rotation(axis, sign));
}

double psi_generator_defect(Axis axis, const Mat4& r) {
    const ComplexMatrix d = algebra::kron(algebra::pauli(3), algebra::pauli(3));
    const ComplexMatrix target =
        algebra::kron(algebra::pauli(3), algebra::pauli(1 + static_cast<int>(axis)));
    return algebra::max_abs_diff(r.adjoint() * d * r, target);
}

int resolve_sign(Axis axis) {
    if (axis == Axis::z) return +1;
    for (int s : {+1, -1})
        if (psi_generator_defect(axis, psi_rotation_with_sign(axis, s)) < 1e-14) return s;
    throw std::logic_error("no basis rotation sign diagonalizes the stream generator");
}

}  // namespace

int rotation_sign(Axis axis) {
    static const std::array<int, 3> resolved{resolve_sign(Axis::x), resolve_sign(Axis::y),
                                             resolve_sign(Axis::z)};
    const int s = resolved[static_cast<std::size_t>(axis)];
    return (g_rotation_fault.load() && axis != Axis::z) ? -s : s;
}

Mat4 psi_rotation(Axis axis) { return psi_rotation_with_sign(axis, rotation_sign(axis)); }

Mat8 phi_rotation(Axis axis) {
    return algebra::kron(algebra::identity(4), spin_rotation(axis, rotation_sign(axis)));
}

double rotation_generator_defect(Axis axis) { return psi_generator_defect(axis, psi_rotation(axis)); }

double phi_rotation_generator_defect(Axis axis) {
    const ComplexMatrix d =
        algebra::kron(algebra::pauli(3), algebra::kron(algebra::pauli(0), algebra::pauli(3)));
    const ComplexMatrix target = algebra::kron(
        algebra::pauli(3),
        algebra::kron(algebra::pauli(0), algebra::pauli(1 + static_cast<int>(axis))));
    const Mat8 r = phi_rotation(axis);
    return algebra::max_abs_diff(r.adjoint() * d * r, target);
}

namespace testing {
void inject_rotation_sign_fault(bool on) { g_rotation_fault.store(on); }
bool rotation_sign_fault() { return g_rotation_fault.load(); }
}  // namespace testing

namespace {

template <int N>
using Vec = Eigen::Matrix<cplx, N, 1>;

template <int N>
Eigen::Map<Vec<N>> site_block(LatticeField& f, std::size_t s) {
    return Eigen::Map<Vec<N>>(f.data().data() + s * N);
}

template <int N>
Eigen::Map<const Vec<N>> site_block(const LatticeField& f, std::size_t s) {
    return Eigen::Map<const Vec<N>>(f.data().data() + s * N);
}

void require_kind(const LatticeField& f, PayloadKind k, const char* what) {
    if (f.kind() != k) {
        std::ostringstream os;
        os << what << ": expected " << payload_name(k) << " payload, got " << payload_name(f.kind());
        throw DomainError(os.str());
    }
}

// Per-site, per-component phase angle applied ahead of the shift.
std::vector<double> gauge_angles(const GridSpec& g, Axis axis, const std::array<int, 4>& d,
                                 const GaugeCoupling& gauge) {
    const LatticeField& A = *gauge.A;
    const int comp = 1 + static_cast<int>(axis);
    const double scale = gauge.e * g.spacing;
    std::vector<double> angles(g.sites() * 4);
    for (std::size_t s = 0; s < g.sites(); ++s) {
        for (int c = 0; c < 4; ++c) {
            const int dc = d[static_cast<std::size_t>(c)];
            double a = 0.0;
            switch (gauge.site) {
                case GaugeSite::departure: a = A.at(s, comp).real(); break;
                case GaugeSite::arrival: a = A.at(g.neighbor(s, axis, -dc), comp).real(); break;
                case GaugeSite::midpoint:
                    a = 0.5 * (A.at(s, comp).real() + A.at(g.neighbor(s, axis, -dc), comp).real());
                    break;
            }
            angles[s * 4 + static_cast<std::size_t>(c)] = dc * scale * a;
        }
    }
    return angles;
}

template <int N>
LatticeField stream_generic(const LatticeField& f, Axis axis,
                            const Eigen::Matrix<cplx, N, N>& rot, const std::array<int, N>& d,
                            const std::vector<double>* angles, bool adjoint) {
    const GridSpec& g = f.spec();
    const bool moves = g.extent(axis) > 1;
    if (!moves && angles == nullptr) return f;
    const bool rotate = axis != Axis::z;

    LatticeField w(g, f.kind());
    for (std::size_t s = 0; s < g.sites(); ++s)
        site_block<N>(w, s) = rotate ? Vec<N>(rot * site_block<N>(f, s)) : Vec<N>(site_block<N>(f, s));

    auto apply_phase = [&](double sgn) {
        if (angles == nullptr) return;
        auto data = w.data();
        for (std::size_t i = 0; i < data.size(); ++i) data[i] *= std::polar(1.0, sgn * (*angles)[i]);
    };
    std::array<int, N> back{};
    for (std::size_t c = 0; c < N; ++c) back[c] = -d[c];

    if (!adjoint) {
        apply_phase(+1.0);
        if (moves) w = shift_masked(w, axis, d);
    } else {
        if (moves) w = shift_masked(w, axis, back);
        apply_phase(-1.0);
    }

    if (!rotate) return w;
    const Eigen::Matrix<cplx, N, N> rdag = rot.adjoint();
    LatticeField out(g, f.kind());
    for (std::size_t s = 0; s < g.sites(); ++s) site_block<N>(out, s) = rdag * site_block<N>(w, s);
    return out;
}

}  // namespace

LatticeField stream_psi_axis(const LatticeField& psi, Axis axis, const GaugeCoupling& gauge,
                             bool adjoint) {
    require_kind(psi, PayloadKind::spinor4, "stream_psi_axis");
    std::vector<double> angles;
    if (gauge.active()) {
        if (gauge.A->kind() != PayloadKind::fourvector || !(gauge.A->spec() == psi.spec()))
            throw DomainError("stream_psi_axis: gauge field grid does not match psi grid");
        angles = gauge_angles(psi.spec(), axis, psi_stream_signs(), gauge);
    }
    return stream_generic<4>(psi, axis, psi_rotation(axis), psi_stream_signs(),
                             gauge.active() ? &angles : nullptr, adjoint);
}

LatticeField stream_phi_axis(const LatticeField& phi, Axis axis, bool adjoint) {
    require_kind(phi, PayloadKind::spinor8, "stream_phi_axis");
    return stream_generic<8>(phi, axis, phi_rotation(axis), phi_stream_signs(), nullptr, adjoint);
}

namespace {

void check_eps(double eps, const char* what) {
    if (!(eps >= -1.0 && eps <= 1.0)) {
        std::ostringstream os;
        os << what << ": mixing parameter " << eps << " outside [-1, 1]";
        throw DomainError(os.str());
    }
}

// Negative values are accepted so that C(-eps) = C(eps)^dagger can be applied directly.
template <int N>
Eigen::Matrix<cplx, N, N> collide_matrix(double eps) {
    check_eps(eps, "collide");
    using M = Eigen::Matrix<cplx, N, N>;
    M x = M::Zero();
    constexpr int h = N / 2;
    x.block(0, h, h, h) = M::Identity().block(0, 0, h, h);
    x.block(h, 0, h, h) = M::Identity().block(0, 0, h, h);
    return std::sqrt(1.0 - eps * eps) * M::Identity() - I * eps * x;
}

template <int N>
LatticeField collide_local(const LatticeField& f, double eps) {
    const auto c = collide_matrix<N>(eps);
    LatticeField out(f.spec(), f.kind());
    for (std::size_t s = 0; s < f.sites(); ++s) site_block<N>(out, s) = c * site_block<N>(f, s);
    return out;
}

}  // namespace

Mat4 collide_psi_matrix(double eps) { return collide_matrix<4>(eps); }
Mat8 collide_phi_matrix(double eps_L) { return collide_matrix<8>(eps_L); }

LatticeField collide_psi(const LatticeField& psi, double eps) {
    require_kind(psi, PayloadKind::spinor4, "collide_psi");
    return collide_local<4>(psi, eps);
}

LatticeField collide_phi(const LatticeField& phi, double eps_L) {
    require_kind(phi, PayloadKind::spinor8, "collide_phi");
    return collide_local<8>(phi, eps_L);
}

namespace {

// exp(i sign sigma.kappa) on every spin pair; pairs in the first half take sign +1.
template <int N>
Eigen::Matrix<cplx, N, N> displacement(const std::array<double, 3>& kappa) {
    using M = Eigen::Matrix<cplx, N, N>;
    const double k = std::sqrt(kappa[0] * kappa[0] + kappa[1] * kappa[1] + kappa[2] * kappa[2]);
    Mat2 sk = Mat2::Zero();
    for (int a = 0; a < 3; ++a) sk += kappa[static_cast<std::size_t>(a)] * Mat2(algebra::pauli(a + 1));
    const double sinc = k > 0.0 ? std::sin(k) / k : 1.0;
    const Mat2 plus = std::cos(k) * Mat2::Identity() + I * sinc * sk;
    const Mat2 minus = std::cos(k) * Mat2::Identity() - I * sinc * sk;
    M out = M::Zero();
    for (int p = 0; p < N / 2; ++p) out.block(2 * p, 2 * p, 2, 2) = p < N / 4 ? plus : minus;
    return out;
}

class FftPlans {
public:
    ~FftPlans() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(const std::array<int, 3>& dims, int comps, int direction) {
        const auto key = std::make_tuple(dims[0], dims[1], dims[2], comps, direction);
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        const int n[3] = {dims[2], dims[1], dims[0]};
        const std::size_t total =
            static_cast<std::size_t>(dims[0]) * dims[1] * dims[2] * static_cast<std::size_t>(comps);
        std::vector<cplx> scratch(total);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_many_dft(3, n, comps, buf, nullptr, comps, 1, buf, nullptr,
                                            comps, 1, direction, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) throw std::runtime_error("FFTW failed to build a transform plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int, int, int>, fftw_plan> plans_;
};

FftPlans& fft_plans() {
    static FftPlans plans;
    return plans;
}

template <int N>
LatticeField collide_high_energy(const LatticeField& f, double eps) {
    check_eps(eps, "collide_HE");
    if (eps == 0.0) return f;
    const GridSpec& g = f.spec();
    const std::size_t sites = g.sites();

    std::vector<cplx> spec(f.data().begin(), f.data().end());
    auto* buf = reinterpret_cast<fftw_complex*>(spec.data());
    fftw_execute_dft(fft_plans().get(g.dims, N, FFTW_FORWARD), buf, buf);

    const double inv = 1.0 / static_cast<double>(sites);
    for (std::size_t s = 0; s < sites; ++s) {
        const auto j = g.coords(s);
        std::array<double, 3> kappa{};
        for (std::size_t a = 0; a < 3; ++a)
            kappa[a] = 2.0 * std::numbers::pi * fft_mode_number(j[a], g.dims[a]) / g.dims[a];
        Eigen::Map<Vec<N>> v(spec.data() + s * N);
        v = (inv * displacement<N>(kappa)) * v;
    }
    fftw_execute_dft(fft_plans().get(g.dims, N, FFTW_BACKWARD), buf, buf);

    const double c = std::sqrt(1.0 - eps * eps);
    constexpr int h = N / 2;
    LatticeField out(g, f.kind());
    for (std::size_t s = 0; s < sites; ++s) {
        Eigen::Map<const Vec<N>> d(spec.data() + s * N);
        auto o = site_block<N>(out, s);
        const auto in = site_block<N>(f, s);
        o.template head<h>() = c * in.template head<h>() - I * eps * d.template tail<h>();
        o.template tail<h>() = c * in.template tail<h>() - I * eps * d.template head<h>();
    }
    return out;
}

}  // namespace

Mat4 he_displacement_psi(const std::array<double, 3>& kappa) { return displacement<4>(kappa); }
Mat8 he_displacement_phi(const std::array<double, 3>& kappa) { return displacement<8>(kappa); }

int fft_mode_number(int j, int L) { return 2 * j < L ? j : j - L; }

LatticeField collide_psi_HE(const LatticeField& psi, double eps) {
    require_kind(psi, PayloadKind::spinor4, "collide_psi_HE");
    return collide_high_energy<4>(psi, eps);
}

LatticeField collide_phi_HE(const LatticeField& phi, double eps_L) {
    require_kind(phi, PayloadKind::spinor8, "collide_phi_HE");
    return collide_high_energy<8>(phi, eps_L);
}

LatticeField a0_phase(const LatticeField& psi, const LatticeField& A, double e, bool adjoint) {
    require_kind(psi, PayloadKind::spinor4, "a0_phase");
    if (A.kind() != PayloadKind::fourvector || !(A.spec() == psi.spec()))
        throw DomainError("a0_phase: gauge field grid does not match psi grid");
    const double scale = (adjoint ? -1.0 : 1.0) * e * psi.spec().spacing;
    LatticeField out = psi;
    if (scale == 0.0) return out;
    for (std::size_t s = 0; s < psi.sites(); ++s)
        out.spinor4(s) *= std::polar(1.0, scale * A.at(s, 0).real());
    return out;
}

namespace {

Spinor4 complex_image(const Eigen::Matrix<cplx, 4, 1>& a) {
    Spinor4 s;
    s << -a(1) + I * a(2), a(0) + a(3), -a(0) + a(3), a(1) + I * a(2);
    return s;
}

}  // namespace

LatticeField backreaction(const LatticeField& phi, const LatticeField& psi, double kappa,
                          double rho_floor, BackreactionStats* stats) {
    require_kind(phi, PayloadKind::spinor8, "backreaction");
    require_kind(psi, PayloadKind::spinor4, "backreaction");
    if (!(phi.spec() == psi.spec())) throw DomainError("backreaction: phi and psi grids differ");
    if (!(rho_floor > 0.0)) throw DomainError("backreaction: rho_floor must be > 0");

    const auto& maps = algebra::vec_to_spinor_maps();
    const Mat4 eta = algebra::minkowski().cast<cplx>();
    LatticeField out = phi;
    BackreactionStats local;
    if (kappa == 0.0) {
        if (stats != nullptr) *stats = local;
        return out;
    }
    for (std::size_t s = 0; s < psi.sites(); ++s) {
        const Spinor4 p = psi.spinor4(s);
        const double rho = p.squaredNorm();
        if (rho < rho_floor) continue;
        ++local.reacted_sites;

        // z_i = psi_L^dagger sigma_i psi_R fixes every entry of theta.
        const Eigen::Matrix<cplx, 2, 1> pl = p.head<2>();
        const Eigen::Matrix<cplx, 2, 1> pr = p.tail<2>();
        Eigen::Vector3d sv;
        ThetaMatrix theta = ThetaMatrix::Zero();
        for (int i = 0; i < 3; ++i) {
            const cplx z = (pl.adjoint() * Mat2(algebra::pauli(i + 1)) * pr)(0, 0);
            sv(i) = 2.0 * z.real();
            theta(0, i + 1) = I * (4.0 * z.imag() / rho);
            theta(i + 1, 0) = -theta(0, i + 1);
        }
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3;
            const int k = (i + 2) % 3;
            theta(i + 1, j + 1) = -2.0 * I * sv(k) / rho;
            theta(j + 1, i + 1) = -theta(i + 1, j + 1);
        }
        const Mat4 K = kappa * maps.u * theta * eta * maps.u.adjoint();
        if ((K - K.adjoint()).cwiseAbs().maxCoeff() > kGeneratorAsymmetryThreshold)
            ++local.hermitized_sites;

        // The hermitian part acts as a real rotation of the spatial potential about v by -|v|.
        const Eigen::Vector3d v = (2.0 * kappa / rho) * sv;
        const double angle = v.norm();
        if (angle == 0.0) continue;
        const Eigen::Vector3d n = v / angle;
        const double c = std::cos(-angle);
        const double sn = std::sin(-angle);

        auto block = out.spinor8(s);
        const Spinor4 phi1 = block.head<4>();
        Eigen::Matrix<cplx, 4, 1> a = calA_complex_inverse(phi1);
        const Eigen::Matrix<cplx, 3, 1> sp = a.tail<3>();
        const Eigen::Matrix<cplx, 3, 1> nc = n.cast<cplx>();
        const cplx ndot = n(0) * sp(0) + n(1) * sp(1) + n(2) * sp(2);
        Eigen::Matrix<cplx, 3, 1> nxs;  // Eigen's cross() conjugates complex results
        nxs << n(1) * sp(2) - n(2) * sp(1), n(2) * sp(0) - n(0) * sp(2), n(0) * sp(1) - n(1) * sp(0);
        a.tail<3>() = c * sp + sn * nxs + (1.0 - c) * ndot * nc;
        block.head<4>() = complex_image(a);
    }
    if (stats != nullptr) *stats = local;
    return out;
}

LatticeField weyl_stream_reference(const LatticeField& psi, Chirality chirality) {
    require_kind(psi, PayloadKind::spinor4, "weyl_stream_reference");
    const GridSpec& g = psi.spec();
    const int offset = chirality == Chirality::left ? 0 : 2;
    const double dir = chirality == Chirality::left ? 1.0 : -1.0;

    std::vector<Eigen::Matrix<cplx, 2, 1>> cur(g.sites());
    for (std::size_t s = 0; s < g.sites(); ++s) cur[s] = psi.spinor4(s).segment<2>(offset);

    for (Axis axis : {Axis::z, Axis::y, Axis::x}) {
        Eigen::SelfAdjointEigenSolver<Mat2> es(Mat2(algebra::pauli(1 + static_cast<int>(axis))));
        const Mat2 v = es.eigenvectors();
        std::vector<Eigen::Matrix<cplx, 2, 1>> next(g.sites(), Eigen::Matrix<cplx, 2, 1>::Zero());
        for (int b = 0; b < 2; ++b) {
            const int step = static_cast<int>(std::lround(dir * es.eigenvalues()(b)));
            const Eigen::Matrix<cplx, 2, 1> vb = v.col(b);
            for (std::size_t s = 0; s < g.sites(); ++s) {
                const std::size_t from = g.neighbor(s, axis, step);
                next[s] += vb * vb.dot(cur[from]);
            }
        }
        cur = std::move(next);
    }

    LatticeField out(g, PayloadKind::spinor4);
    for (std::size_t s = 0; s < g.sites(); ++s) out.spinor4(s).segment<2>(offset) = cur[s];
    return out;
}

}  // namespace qlg::ops
