#include "qlg/oracle.hpp"

#include "qlg/algebra.hpp"
#include "qlg/spinor_maps.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace qlg::oracle {

using algebra::herm_expm;
using algebra::identity;
using algebra::kron;
using algebra::pauli;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix eye(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix site_shift(const GridSpec& g, Axis axis, int d) {
    const auto n = static_cast<Eigen::Index>(g.sites());
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (std::size_t s = 0; s < g.sites(); ++s)
        p(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(g.neighbor(s, axis, d))) = 1.0;
    return p;
}

// Basis rotations in their displayed form; no sign search here.
ComplexMatrix spin_rotation(Axis a) {
    switch (a) {
        case Axis::x: return herm_expm(pauli(2), -kPi / 4.0);  // exp(+i pi/4 sigma_y)
        case Axis::y: return herm_expm(pauli(1), kPi / 4.0);   // exp(-i pi/4 sigma_x)
        case Axis::z: break;
    }
    return identity(2);
}

std::vector<int> diagonal_signs(const ComplexMatrix& d) {
    std::vector<int> out(static_cast<std::size_t>(d.rows()));
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        out[static_cast<std::size_t>(i)] = d(i, i).real() > 0 ? 1 : -1;
    return out;
}

ComplexMatrix psi_generator() { return kron(pauli(3), pauli(3)); }
ComplexMatrix phi_generator() { return kron(pauli(3), kron(pauli(0), pauli(3))); }

ComplexMatrix local_rotation(Sector sector, Axis a) {
    return sector == Sector::psi ? kron(pauli(0), spin_rotation(a))
                                 : kron(identity(4), spin_rotation(a));
}

ComplexMatrix sigma_dot(const std::array<double, 3>& v) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    for (int i = 0; i < 3; ++i) m += v[static_cast<std::size_t>(i)] * pauli(i + 1);
    return m;
}

// exp(i sigma_z (x) [1 (x)] sigma.kappa)
ComplexMatrix local_displacement(Sector sector, const std::array<double, 3>& kappa) {
    const ComplexMatrix g = sector == Sector::psi ? kron(pauli(3), sigma_dot(kappa))
                                                  : kron(pauli(3), kron(pauli(0), sigma_dot(kappa)));
    return herm_expm(-g, 1.0);
}

ComplexMatrix local_swap(Sector sector) {
    return kron(pauli(1), identity(sector == Sector::psi ? 2 : 4));
}

ComplexMatrix local_collide(Sector sector, double eps) {
    const Eigen::Index n = sector == Sector::psi ? 4 : 8;
    return std::sqrt(1.0 - eps * eps) * eye(n) - I * eps * local_swap(sector);
}

int mode_number(int j, int L) { return 2 * j < L ? j : j - L; }

ComplexMatrix dft_matrix(const GridSpec& g) {
    const auto n = static_cast<Eigen::Index>(g.sites());
    ComplexMatrix f(n, n);
    for (std::size_t j = 0; j < g.sites(); ++j) {
        const auto fj = g.coords(j);
        for (std::size_t s = 0; s < g.sites(); ++s) {
            const auto xs = g.coords(s);
            double turns = 0.0;
            for (std::size_t a = 0; a < 3; ++a)
                turns += static_cast<double>((fj[a] * xs[a]) % g.dims[a]) / g.dims[a];
            f(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(s)) =
                std::polar(1.0 / std::sqrt(static_cast<double>(g.sites())), -2.0 * kPi * turns);
        }
    }
    return f;
}

ComplexMatrix dense_collide(const GridSpec& g, Sector sector, double eps, ops::Variant variant) {
    const auto n = static_cast<Eigen::Index>(g.sites());
    const Eigen::Index nc = sector == Sector::psi ? 4 : 8;
    if (variant == ops::Variant::qft_limit) return kron(eye(n), local_collide(sector, eps));

    ComplexMatrix dk = ComplexMatrix::Zero(n * nc, n * nc);
    for (std::size_t j = 0; j < g.sites(); ++j) {
        const auto fj = g.coords(j);
        std::array<double, 3> kappa{};
        for (std::size_t a = 0; a < 3; ++a)
            kappa[a] = 2.0 * kPi * mode_number(fj[a], g.dims[a]) / g.dims[a];
        dk.block(static_cast<Eigen::Index>(j) * nc, static_cast<Eigen::Index>(j) * nc, nc, nc) =
            local_displacement(sector, kappa);
    }
    const ComplexMatrix f = kron(dft_matrix(g), eye(nc));
    const ComplexMatrix d = f.adjoint() * dk * f;
    return std::sqrt(1.0 - eps * eps) * eye(n * nc) -
           I * eps * kron(eye(n), local_swap(sector)) * d;
}

ComplexMatrix dense_stream(const GridSpec& g, Sector sector, Axis axis,
                           const std::vector<double>* angles) {
    const auto n = static_cast<Eigen::Index>(g.sites());
    const auto signs = diagonal_signs(sector == Sector::psi ? psi_generator() : phi_generator());
    const auto nc = static_cast<Eigen::Index>(signs.size());
    ComplexMatrix shift = ComplexMatrix::Zero(n * nc, n * nc);
    for (Eigen::Index c = 0; c < nc; ++c) {
        ComplexMatrix e = ComplexMatrix::Zero(nc, nc);
        e(c, c) = 1.0;
        shift += kron(site_shift(g, axis, signs[static_cast<std::size_t>(c)]), e);
    }
    ComplexMatrix phase = eye(n * nc);
    if (angles != nullptr)
        for (Eigen::Index i = 0; i < n * nc; ++i)
            phase(i, i) = std::polar(1.0, (*angles)[static_cast<std::size_t>(i)]);
    const ComplexMatrix r = kron(eye(n), local_rotation(sector, axis));
    return r.adjoint() * shift * phase * r;
}

std::vector<double> stream_angles(const SimConfig& cfg, const LatticeField& A, Axis axis) {
    const GridSpec& g = cfg.grid;
    const auto signs = diagonal_signs(psi_generator());
    const int comp = 1 + static_cast<int>(axis);
    std::vector<double> out(g.sites() * 4);
    for (std::size_t s = 0; s < g.sites(); ++s) {
        for (std::size_t c = 0; c < 4; ++c) {
            const int d = signs[c];
            const double here = A.fourvec(s)[comp];
            const double from = A.fourvec(g.neighbor(s, axis, -d))[comp];
            double a = here;
            if (cfg.gauge_site == ops::GaugeSite::arrival) a = from;
            if (cfg.gauge_site == ops::GaugeSite::midpoint) a = 0.5 * (here + from);
            out[s * 4 + c] = d * cfg.e * g.spacing * a;
        }
    }
    return out;
}

void check_cap(const GridSpec& g, Eigen::Index comps, Eigen::Index cap) {
    const auto dim = static_cast<Eigen::Index>(g.sites()) * comps;
    if (dim > cap) {
        std::ostringstream os;
        os << "dense oracle: " << dim << " amplitudes exceed the cap of " << cap;
        throw DomainError(os.str());
    }
}

DenseStep finish(Sector sector, ComplexMatrix u) {
    DenseStep out;
    out.sector = sector;
    out.unitarity_defect = algebra::unitarity_defect(u);
    out.matrix = std::move(u);
    return out;
}

}  // namespace

DenseStep dense_psi_step(const SimConfig& cfg, const LatticeField& A) {
    const GridSpec& g = cfg.grid;
    check_cap(g, 4, kMaxPsiAmplitudes);
    const bool gauged = cfg.gauge_coupled() && cfg.e != 0.0;
    if (gauged && (A.kind() != PayloadKind::fourvector || !(A.spec() == g)))
        throw DomainError("dense_psi_step: gauge field must be a 4-vector field on the config grid");
    const auto n = static_cast<Eigen::Index>(g.sites());

    ComplexMatrix u = dense_collide(g, Sector::psi, cfg.eps(), cfg.variant);
    for (Axis a : {Axis::z, Axis::y, Axis::x}) {
        std::vector<double> angles;
        if (gauged) angles = stream_angles(cfg, A, a);
        u = dense_stream(g, Sector::psi, a, gauged ? &angles : nullptr) * u;
    }
    if (gauged) {
        ComplexMatrix p = eye(n * 4);
        for (Eigen::Index s = 0; s < n; ++s)
            for (Eigen::Index c = 0; c < 4; ++c)
                p(4 * s + c, 4 * s + c) =
                    std::polar(1.0, cfg.e * g.spacing * A.fourvec(static_cast<std::size_t>(s)).t);
        u = p * u;
    }
    return finish(Sector::psi, std::move(u));
}

DenseStep dense_phi_step(const SimConfig& cfg, const LatticeField& psi) {
    const GridSpec& g = cfg.grid;
    check_cap(g, 8, kMaxPhiAmplitudes);
    const auto n = static_cast<Eigen::Index>(g.sites());

    ComplexMatrix u = eye(n * 8);
    if (cfg.has_backreaction() && cfg.kappa() != 0.0) {
        if (psi.kind() != PayloadKind::spinor4 || !(psi.spec() == g))
            throw DomainError("dense_phi_step: psi must be a 4-spinor field on the config grid");
        const auto& maps = algebra::vec_to_spinor_maps();
        const ComplexMatrix eta = algebra::minkowski().cast<cplx>();
        for (Eigen::Index s = 0; s < n; ++s) {
            const Spinor4 p = psi.spinor4(static_cast<std::size_t>(s));
            if (p.squaredNorm() < cfg.rho_floor) continue;
            const ComplexMatrix theta = theta_matrix(p, cfg.rho_floor);
            const ComplexMatrix u4 = maps.u;
            const ComplexMatrix k = cfg.kappa() * u4 * theta * eta * u4.adjoint();
            u.block(8 * s, 8 * s, 4, 4) = herm_expm(0.5 * (k + k.adjoint()), 1.0);
        }
    }
    if (cfg.has_phi_mass()) u = dense_collide(g, Sector::phi, cfg.eps_L(), cfg.variant) * u;
    for (Axis a : {Axis::z, Axis::y, Axis::x}) u = dense_stream(g, Sector::phi, a, nullptr) * u;
    return finish(Sector::phi, std::move(u));
}

LatticeField apply_dense(const DenseStep& step, const LatticeField& field) {
    const auto n = static_cast<Eigen::Index>(field.data().size());
    if (n != step.matrix.cols()) throw DomainError("apply_dense: field size does not match matrix");
    const Eigen::Map<const ComplexVector> in(field.data().data(), n);
    LatticeField out(field.spec(), field.kind());
    Eigen::Map<ComplexVector>(out.data().data(), n) = step.matrix * in;
    return out;
}

ComplexMatrix mode_matrix(const SimConfig& cfg, const std::array<double, 3>& k, Sector sector) {
    const double ell = cfg.grid.spacing;
    const std::array<double, 3> kappa{k[0] * ell, k[1] * ell, k[2] * ell};
    const bool psi = sector == Sector::psi;
    const double eps = psi ? cfg.eps() : cfg.eps_L();
    const bool collide = psi || cfg.has_phi_mass();

    const Eigen::Index nc = psi ? 4 : 8;
    ComplexMatrix u = eye(nc);
    if (collide) {
        u = local_collide(sector, eps);
        if (cfg.variant == ops::Variant::high_energy)
            u = std::sqrt(1.0 - eps * eps) * eye(nc) -
                I * eps * local_swap(sector) * local_displacement(sector, kappa);
    }
    const auto signs = diagonal_signs(psi ? psi_generator() : phi_generator());
    for (Axis a : {Axis::z, Axis::y, Axis::x}) {
        ComplexMatrix d = ComplexMatrix::Zero(nc, nc);
        for (Eigen::Index c = 0; c < nc; ++c)
            d(c, c) = std::polar(1.0, signs[static_cast<std::size_t>(c)] *
                                          kappa[static_cast<std::size_t>(a)]);
        const ComplexMatrix r = local_rotation(sector, a);
        u = r.adjoint() * d * r * u;
    }
    return u;
}

std::vector<double> eigenphases(const ComplexMatrix& u) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(u);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        out.push_back(-std::arg(es.eigenvalues()(i)));
    std::sort(out.begin(), out.end());
    return out;
}

double analytic_dispersion(double k, double m) { return std::sqrt(k * k + m * m); }

Eigen::Matrix<cplx, 2, 2> PathKernel::chiral_block(ops::Chirality to, ops::Chirality from) const {
    const int r = to == ops::Chirality::left ? 0 : 2;
    const int c = from == ops::Chirality::left ? 0 : 2;
    return kernel.block<2, 2>(r, c);
}

PathKernel path_sum_kernel_1d(int x_a, int x_b, int N, const SimConfig& cfg) {
    const GridSpec& g = cfg.grid;
    if (cfg.variant != ops::Variant::qft_limit)
        throw DomainError("path_sum_kernel_1d: only the qft_limit collide has a spin-chain form");
    if (g.dims[1] != 1 || g.dims[2] != 1)
        throw DomainError("path_sum_kernel_1d: grid must be 1D along x");
    if (N < 0 || N > kMaxPathSteps) {
        std::ostringstream os;
        os << "path_sum_kernel_1d: N = " << N << " outside 0.." << kMaxPathSteps;
        throw DomainError(os.str());
    }
    const int L = g.dims[0];
    if (x_a < 0 || x_a >= L || x_b < 0 || x_b >= L)
        throw DomainError("path_sum_kernel_1d: endpoints must lie on the grid");

    // Per-step transfer matrices for displacement +1 and -1.
    const ComplexMatrix r = local_rotation(Sector::psi, Axis::x);
    const ComplexMatrix c = local_collide(Sector::psi, cfg.eps());
    const auto gather = diagonal_signs(psi_generator());
    std::array<Mat4, 2> transfer;
    for (int k = 0; k < 2; ++k) {
        const int disp = k == 0 ? 1 : -1;
        ComplexMatrix proj = ComplexMatrix::Zero(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            if (-gather[i] == disp) proj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
        transfer[static_cast<std::size_t>(k)] = r.adjoint() * proj * r * c;
    }

    // Grid-momentum filter: (1/L) sum_n exp(i p_n (D - displacement)).
    const int D = x_b - x_a;
    std::vector<cplx> filter(static_cast<std::size_t>(2 * N + 1));
    for (int disp = -N; disp <= N; ++disp) {
        cplx w = 0.0;
        for (int j = 0; j < L; ++j) {
            const double p = 2.0 * kPi * mode_number(j, L) / L;
            w += std::polar(1.0, p * (D - disp));
        }
        filter[static_cast<std::size_t>(disp + N)] = w / static_cast<double>(L);
    }

    PathKernel out;
    const long chains = 1L << N;
    for (long mask = 0; mask < chains; ++mask) {
        Mat4 prod = Mat4::Identity();
        int disp = 0;
        for (int w = 0; w < N; ++w) {
            const bool up = ((mask >> w) & 1L) != 0;
            disp += up ? 1 : -1;
            prod = transfer[up ? 0 : 1] * prod;
        }
        const cplx weight = filter[static_cast<std::size_t>(disp + N)];
        if (std::abs(weight) > 0.5) ++out.chains;
        out.kernel += weight * prod;
    }
    return out;
}

Mat4 propagator_block(const ComplexMatrix& propagator, int x_a, int x_b) {
    if (propagator.rows() % 4 != 0 || propagator.rows() != propagator.cols())
        throw DomainError("propagator_block: matrix must be square with 4 components per site");
    const Eigen::Index sites = propagator.rows() / 4;
    if (x_a < 0 || x_b < 0 || x_a >= sites || x_b >= sites)
        throw DomainError("propagator_block: site index out of range");
    return propagator.block(4 * x_b, 4 * x_a, 4, 4);
}

}  // namespace qlg::oracle
