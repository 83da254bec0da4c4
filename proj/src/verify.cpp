#include "qlg/verify.hpp"

#include "qlg/algebra.hpp"
#include "qlg/evolution.hpp"
#include "qlg/oracle.hpp"
#include "qlg/qubit_encoding.hpp"
#include "qlg/run.hpp"
#include "qlg/spinor_maps.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace qlg::verify {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

CheckResult below(double measured, double limit) {
    CheckResult r;
    r.measured = measured;
    r.bound = "< " + num(limit);
    r.passed = measured < limit;
    return r;
}

CheckResult at_least(double measured, double limit) {
    CheckResult r;
    r.measured = measured;
    r.bound = ">= " + num(limit);
    r.passed = measured >= limit;
    return r;
}

LatticeField random_field(const GridSpec& g, PayloadKind kind, std::mt19937_64& rng,
                          double target_norm = 0.0) {
    std::normal_distribution<double> nd;
    LatticeField f(g, kind);
    for (cplx& v : f.data()) {
        const double re = nd(rng);
        v = {re, nd(rng)};
    }
    if (target_norm > 0.0) {
        const double s = target_norm / std::sqrt(norm2(f));
        for (cplx& v : f.data()) v *= s;
    }
    return f;
}

SimConfig line_config(int L, Mode mode, ops::Variant variant, double m, double m_L, double e) {
    SimConfig c;
    c.grid.dims = {L, 1, 1};
    c.mode = mode;
    c.variant = variant;
    c.m = m;
    c.m_L = m_L;
    c.e = e;
    return c;
}

// ---------------------------------------------------------------------------

CheckResult check_rotation(Level) {
    double worst = 0.0;
    for (Axis a : kAxes)
        worst = std::max({worst, ops::rotation_generator_defect(a),
                          ops::phi_rotation_generator_defect(a)});
    CheckResult r = below(worst, 1e-12);
    r.detail = "rotation signs x=" + std::to_string(ops::rotation_sign(Axis::x)) +
               " y=" + std::to_string(ops::rotation_sign(Axis::y)) +
               (ops::testing::rotation_sign_fault() ? " (fault injected)" : "");
    return r;
}

// Split complex matrices with small-integer entries into exact integer parts.
struct GaussInt {
    Eigen::MatrixXi re, im;
};

GaussInt to_gauss(const ComplexMatrix& m) {
    GaussInt g{Eigen::MatrixXi(m.rows(), m.cols()), Eigen::MatrixXi(m.rows(), m.cols())};
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double re = std::round(m(i, j).real());
            const double im = std::round(m(i, j).imag());
            if (re != m(i, j).real() || im != m(i, j).imag())
                throw std::logic_error("Clifford generator has a non-integer entry");
            g.re(i, j) = static_cast<int>(re);
            g.im(i, j) = static_cast<int>(im);
        }
    return g;
}

GaussInt mul(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

int clifford_failures(const std::function<const ComplexMatrix&(int)>& gen) {
    const Eigen::Matrix4d& eta = algebra::minkowski();
    int failures = 0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const GaussInt a = to_gauss(gen(mu));
            const GaussInt b = to_gauss(gen(nu));
            const GaussInt ab = mul(a, b);
            const GaussInt ba = mul(b, a);
            const Eigen::Index n = a.re.rows();
            const Eigen::MatrixXi want =
                2 * static_cast<int>(eta(mu, nu)) * Eigen::MatrixXi::Identity(n, n);
            if (ab.re + ba.re != want || !(ab.im + ba.im).isZero()) ++failures;
        }
    return failures;
}

CheckResult check_clifford(Level) {
    const int f4 = clifford_failures([](int mu) -> const ComplexMatrix& { return algebra::gamma(mu); });
    const int f8 = clifford_failures([](int mu) -> const ComplexMatrix& { return algebra::gmatrix(mu); });
    CheckResult r = below(f4 + f8, 0.5);
    r.detail = "failing pairs: gamma " + std::to_string(f4) + "/16, G " + std::to_string(f8) + "/16";
    return r;
}

CheckResult check_unitarity(Level) {
    const std::array<double, 3> vals{0.0, 0.5, 1.0};
    const std::array<Mode, 3> modes{Mode::free, Mode::qed_limit, Mode::superconducting};
    const std::array<ops::Variant, 2> variants{ops::Variant::qft_limit, ops::Variant::high_energy};
    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    std::string worst_at;
    for (int p = 0; p < 12; ++p) {
        const Mode mode = modes[static_cast<std::size_t>(p / 4)];
        const ops::Variant variant = variants[static_cast<std::size_t>((p / 2) % 2)];
        const double eps = vals[static_cast<std::size_t>(p % 3)];
        const double eps_L = vals[static_cast<std::size_t>((p + 1) % 3)];
        const SimConfig cfg = line_config(256, mode, variant, eps, eps_L, 1.0);
        SystemState st = make_state(cfg, random_field(cfg.grid, PayloadKind::spinor4, rng, 1.0),
                                    random_field(cfg.grid, PayloadKind::spinor8, rng, 1.0));
        for (int t = 1; t <= 1000; ++t) {
            step_system(st, cfg);
            if (t % 50 != 0) continue;
            const double d = std::max(std::abs(norm2(st.psi) - 1.0), std::abs(norm2(st.phi) - 1.0));
            if (d > worst) {
                worst = d;
                worst_at = std::string(mode_name(mode)) + "/" + ops::variant_name(variant) +
                           " eps=" + num(eps) + " eps_L=" + num(eps_L);
            }
        }
    }
    CheckResult r = below(worst, 1e-9);
    r.detail = "12 points, L=256, 1000 steps" + (worst_at.empty() ? "" : "; worst at " + worst_at);
    return r;
}

CheckResult check_dense_equivalence(Level) {
    struct Case {
        Mode mode;
        ops::Variant variant;
        ops::GaugeSite site;
    };
    const std::array<Case, 4> cases{{
        {Mode::free, ops::Variant::qft_limit, ops::GaugeSite::departure},
        {Mode::qed_limit, ops::Variant::qft_limit, ops::GaugeSite::midpoint},
        {Mode::superconducting, ops::Variant::qft_limit, ops::GaugeSite::arrival},
        {Mode::superconducting, ops::Variant::high_energy, ops::GaugeSite::departure},
    }};
    std::mt19937_64 rng(7);
    double worst = 0.0;
    std::ostringstream detail;
    for (const Case& c : cases) {
        SimConfig cfg = line_config(8, c.mode, c.variant, 0.3, 0.5, 0.7);
        cfg.gauge_site = c.site;
        const LatticeField psi = random_field(cfg.grid, PayloadKind::spinor4, rng);
        const LatticeField phi = random_field(cfg.grid, PayloadKind::spinor8, rng);
        const SystemState ref = make_state(cfg, psi, phi);

        const auto dpsi = oracle::dense_psi_step(cfg, ref.A);
        double err_psi = 0.0;
        for (Eigen::Index j = 0; j < dpsi.dimension(); ++j) {
            LatticeField basis(cfg.grid, PayloadKind::spinor4);
            basis.data()[static_cast<std::size_t>(j)] = 1.0;
            const LatticeField col = step_psi(make_state(cfg, basis, phi), cfg);
            for (Eigen::Index i = 0; i < dpsi.dimension(); ++i)
                err_psi = std::max(err_psi, std::abs(col.data()[static_cast<std::size_t>(i)] - dpsi.matrix(i, j)));
        }

        const auto dphi = oracle::dense_phi_step(cfg, psi);
        double err_phi = 0.0;
        for (Eigen::Index j = 0; j < dphi.dimension(); ++j) {
            LatticeField basis(cfg.grid, PayloadKind::spinor8);
            basis.data()[static_cast<std::size_t>(j)] = 1.0;
            const LatticeField col = step_phi(make_state(cfg, psi, basis), cfg);
            for (Eigen::Index i = 0; i < dphi.dimension(); ++i)
                err_phi = std::max(err_phi, std::abs(col.data()[static_cast<std::size_t>(i)] - dphi.matrix(i, j)));
        }
        worst = std::max({worst, err_psi, err_phi});
        detail << mode_name(c.mode) << "/" << ops::variant_name(c.variant) << " psi " << num(err_psi)
               << " phi " << num(err_phi) << "; ";
    }
    CheckResult r = below(worst, 1e-14);
    r.detail = detail.str();
    return r;
}

CheckResult check_dirac_convergence(Level) {
    std::array<double, 2> err{};
    for (int i = 0; i < 2; ++i) {
        const int L = 126 * (i + 1);
        const double eps = 2.0 * kPi / L;
        const SimConfig cfg = line_config(L, Mode::free, ops::Variant::qft_limit, eps, 0.0, 0.0);
        const auto k = grid_wavevector(cfg.grid, {1, 0, 0});
        const DispersionResult d = measure_dispersion(cfg, k, 200);
        err[static_cast<std::size_t>(i)] = std::abs(d.omega - d.omega_dirac) / d.omega_dirac;
    }
    const double ratio = err[0] / err[1];
    CheckResult r = at_least(ratio, 3.5);
    r.passed = r.passed && err[0] < 0.01;
    r.detail = "rel. error " + num(err[0]) + " at k=eps=2pi/126 (< 0.01), " + num(err[1]) +
               " at 2pi/252; ratio is the measured value";
    return r;
}

CheckResult check_zeta(Level) {
    double lo = 10.0, hi = -10.0;
    double corner = 0.0;
    for (double eps : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const SimConfig cfg = line_config(256, Mode::free, ops::Variant::high_energy, eps, 0.0, 0.0);
        for (int n = 0; n < 5; ++n) {
            const DispersionResult d = measure_dispersion(cfg, grid_wavevector(cfg.grid, {n, 0, 0}), 32);
            lo = std::min(lo, d.zeta);
            hi = std::max(hi, d.zeta);
            if (eps == 1.0 && n == 0) corner = d.zeta;
        }
    }
    const double excursion = std::max({0.0, (1.0 - 1e-6) - lo, hi - (kPi / 2 + 1e-6)});
    const double corner_err = std::abs(corner - kPi / 2);
    CheckResult r;
    r.measured = excursion;
    r.bound = "== 0";
    r.passed = excursion == 0.0 && corner_err < 1e-9;
    r.detail = "zeta range [" + num(lo) + ", " + num(hi) + "] (measured = excursion outside [1, pi/2]); " +
               "|zeta(1,0) - pi/2| = " + num(corner_err) + " (< 1e-9)";
    return r;
}

CheckResult check_maxwell(Level) {
    SimConfig cfg = line_config(64, Mode::qed_limit, ops::Variant::qft_limit, 0.0, 0.0, 1.0);
    cfg.psi_init.kind = InitKind::vacuum;
    cfg.phi_init.kind = InitKind::plane_wave;
    cfg.phi_init.mode = {1, 0, 0};
    cfg.phi_init.pattern = PatternKind::transverse;
    const double k = 2.0 * kPi / 64.0;

    SystemState st = make_state(cfg);
    double div_max = observables(st, cfg).divA_max;
    double omega_err = 0.0;
    for (int t = 1; t <= 500; ++t) {
        step_system(st, cfg);
        const Observables o = observables(st, cfg);
        div_max = std::max(div_max, o.divA_max);
        const double omega = k * std::sqrt(o.E_energy / o.B_energy);
        omega_err = std::max(omega_err, std::abs(omega - k) / k);
    }
    CheckResult r = below(omega_err, 0.02);
    r.passed = r.passed && div_max < 1e-10;
    r.detail = "k*l = " + num(k) + "; worst |omega/k - 1| over 500 steps (measured); max|div A| = " +
               num(div_max) + " (< 1e-10)";
    return r;
}

// Random band-limited real 4-potential on the periodic box [0, 2pi)^3.
struct BandLimited {
    struct Mode {
        std::array<int, 3> n;
        double amp;
        double phase;
    };
    std::array<std::vector<Mode>, 4> modes;

    double value(int mu, const std::array<double, 3>& x) const {
        double v = 0.0;
        for (const Mode& m : modes[static_cast<std::size_t>(mu)])
            v += m.amp * std::cos(m.n[0] * x[0] + m.n[1] * x[1] + m.n[2] * x[2] + m.phase);
        return v;
    }
    double derivative(int mu, int axis, const std::array<double, 3>& x) const {
        double v = 0.0;
        for (const Mode& m : modes[static_cast<std::size_t>(mu)])
            v -= m.amp * m.n[static_cast<std::size_t>(axis)] *
                 std::sin(m.n[0] * x[0] + m.n[1] * x[1] + m.n[2] * x[2] + m.phase);
        return v;
    }
};

BandLimited random_band_limited(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> ni(-2, 2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    BandLimited f;
    for (auto& list : f.modes)
        for (int j = 0; j < 3; ++j) {
            std::array<int, 3> n{};
            do n = {ni(rng), ni(rng), ni(rng)};
            while (n == std::array<int, 3>{0, 0, 0});
            list.push_back({n, u(rng), kPi * u(rng)});
        }
    return f;
}

// Spinor assembled from grad A0 (G), curl A (C) and div A (D).
Spinor4 curl_div_assembly(const Eigen::Vector3d& G, const Eigen::Vector3d& C, double D) {
    Spinor4 s;
    s << cplx(G.x() - C.y(), -(G.y() + C.x())), cplx(-D - G.z(), C.z()), cplx(D - G.z(), C.z()),
        cplx(-G.x() - C.y(), C.x() - G.y());
    return s;
}

struct CurlErrors {
    double vs_fd = 0.0;
    double vs_exact = 0.0;
};

CurlErrors curl_errors(const BandLimited& f, int L) {
    GridSpec g;
    g.dims = {L, L, L};
    g.spacing = 2.0 * kPi / L;
    const double h = g.spacing;

    // Sampled potential, stored per component for the independent stencil.
    std::array<std::vector<double>, 4> a;
    for (auto& v : a) v.resize(g.sites());
    LatticeField image(g, PayloadKind::spinor4);
    for (std::size_t s = 0; s < g.sites(); ++s) {
        const auto c = g.coords(s);
        const std::array<double, 3> x{c[0] * h, c[1] * h, c[2] * h};
        FourVector A;
        for (int mu = 0; mu < 4; ++mu) A[mu] = a[static_cast<std::size_t>(mu)][s] = f.value(mu, x);
        image.spinor4(s) = fourvec_to_calA(A);
    }
    const LatticeField out = curl_operator_apply(image, h);

    auto wrap = [L](int i) { return ((i % L) + L) % L; };
    auto d = [&](int mu, int axis, const std::array<int, 3>& c) {
        std::array<int, 3> p = c, q = c;
        p[static_cast<std::size_t>(axis)] = wrap(p[static_cast<std::size_t>(axis)] + 1);
        q[static_cast<std::size_t>(axis)] = wrap(q[static_cast<std::size_t>(axis)] - 1);
        const auto& v = a[static_cast<std::size_t>(mu)];
        return (v[g.index(p[0], p[1], p[2])] - v[g.index(q[0], q[1], q[2])]) / (2.0 * h);
    };

    CurlErrors e;
    for (std::size_t s = 0; s < g.sites(); ++s) {
        const auto c = g.coords(s);
        const std::array<double, 3> x{c[0] * h, c[1] * h, c[2] * h};
        Eigen::Vector3d G, C, Ge, Ce;
        for (int i = 0; i < 3; ++i) {
            G(i) = d(0, i, c);
            Ge(i) = f.derivative(0, i, x);
        }
        C << d(3, 1, c) - d(2, 2, c), d(1, 2, c) - d(3, 0, c), d(2, 0, c) - d(1, 1, c);
        Ce << f.derivative(3, 1, x) - f.derivative(2, 2, x), f.derivative(1, 2, x) - f.derivative(3, 0, x),
            f.derivative(2, 0, x) - f.derivative(1, 1, x);
        const double D = d(1, 0, c) + d(2, 1, c) + d(3, 2, c);
        const double De = f.derivative(1, 0, x) + f.derivative(2, 1, x) + f.derivative(3, 2, x);
        const Spinor4 got = out.spinor4(s);
        e.vs_fd = std::max(e.vs_fd, (got - curl_div_assembly(G, C, D)).cwiseAbs().maxCoeff());
        e.vs_exact = std::max(e.vs_exact, (got - curl_div_assembly(Ge, Ce, De)).cwiseAbs().maxCoeff());
    }
    return e;
}

CheckResult check_curl_operator(Level) {
    std::mt19937_64 rng(424242);
    double fd = 0.0;
    double worst_ratio = 1e300;
    for (int trial = 0; trial < 10; ++trial) {
        const BandLimited f = random_band_limited(rng);
        const CurlErrors coarse = curl_errors(f, 16);
        const CurlErrors fine = curl_errors(f, 32);
        fd = std::max({fd, coarse.vs_fd, fine.vs_fd});
        worst_ratio = std::min(worst_ratio, coarse.vs_exact / fine.vs_exact);
    }
    CheckResult r = at_least(worst_ratio, 3.5);
    r.passed = r.passed && fd < 1e-12;
    r.detail = "10 fields on 16^3 and 32^3; worst error ratio (measured); max deviation from the "
               "component-wise stencil " + num(fd) + " (< 1e-12)";
    return r;
}

CheckResult check_backreaction(Level) {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> nd;
    GridSpec g;
    g.dims = {100, 1, 1};
    const LatticeField psi = random_field(g, PayloadKind::spinor4, rng);

    auto phi_from = [&](const std::vector<FourVector>& A) {
        LatticeField phi(g, PayloadKind::spinor8);
        for (std::size_t s = 0; s < g.sites(); ++s) phi.spinor8(s).head<4>() = fourvec_to_calA(A[s]);
        return phi;
    };
    auto potential = [&](const LatticeField& phi, std::size_t s) {
        return calA_real_part(phi.spinor8(s).head<4>());
    };

    std::vector<FourVector> A(g.sites());
    for (auto& a : A) a = {0.0, nd(rng), nd(rng), nd(rng)};
    const LatticeField phi = phi_from(A);

    const double kappa = 1e-4;
    const double floor = 1e-12;
    const LatticeField plus = ops::backreaction(phi, psi, kappa, floor);
    const LatticeField minus = ops::backreaction(phi, psi, -kappa, floor);

    const ComplexMatrix g0 = algebra::gamma(0);
    const Eigen::Matrix4d& eta = algebra::minkowski();
    double rel = 0.0;
    for (std::size_t s = 0; s < g.sites(); ++s) {
        const Spinor4 p = psi.spinor4(s);
        const double rho = p.squaredNorm();
        Eigen::Vector4d lower;
        for (int mu = 0; mu < 4; ++mu) lower(mu) = eta(mu, mu) * A[s][mu];
        Eigen::Matrix<cplx, 4, 1> expect = Eigen::Matrix<cplx, 4, 1>::Zero();
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                const ComplexMatrix comm = algebra::commutator(algebra::gamma(mu), algebra::gamma(nu));
                const cplx theta = (p.adjoint() * g0 * comm * p)(0, 0) / rho;
                expect(nu) += I * theta * lower(mu);
            }
        const FourVector ap = potential(plus, s);
        const FourVector am = potential(minus, s);
        Eigen::Vector3d got, want;
        double imag = 0.0;
        for (int i = 1; i < 4; ++i) {
            got(i - 1) = (ap[i] - am[i]) / (2.0 * kappa);
            want(i - 1) = expect(i).real();
            imag = std::max(imag, std::abs(expect(i).imag()));
        }
        rel = std::max(rel, (got - want).norm() / want.norm());
        if (imag > 1e-12) rel = std::max(rel, 1.0);
    }

    // Full coupling: |A| and A0 untouched.
    for (auto& a : A) a.t = nd(rng);
    const LatticeField phi_full = phi_from(A);
    const LatticeField full = ops::backreaction(phi_full, psi, 2.0, floor);
    double drift = 0.0;
    for (std::size_t s = 0; s < g.sites(); ++s) {
        const FourVector after = potential(full, s);
        const FourVector before = potential(phi_full, s);
        drift = std::max({drift, std::abs(after.spatial_norm() - before.spatial_norm()),
                          std::abs(after.t - before.t)});
    }

    CheckResult r = below(rel, 1e-6);
    r.passed = r.passed && drift < 1e-10;
    r.detail = "100 sites, coupling 1e-4, max relative deviation (measured); |A| and A0 drift at "
               "coupling 2: " + num(drift) + " (< 1e-10)";
    return r;
}

CheckResult check_jordan_wigner(Level level) {
    std::vector<int> qs{4};
    if (level == Level::full) qs.push_back(8);
    int bad = 0;
    std::string detail;
    for (int q : qs) {
        const auto rep = qubits::check_anticommutation(q);
        if (!rep.exact) ++bad;
        detail += "Q=" + std::to_string(q) + (rep.exact ? " exact" : " FAILED") + " (" +
                  std::to_string(rep.pairs_checked) + " pairs); ";
    }
    const Spinor4 e0 = Spinor4::Unit(0);
    const Spinor4 z = Spinor4::Zero();
    const std::array<std::pair<qubits::LocalKet, int>, 4> spots{{
        {qubits::encode_local(e0, z, z, z), 0},
        {qubits::encode_local(z, e0, z, z), 4},
        {qubits::encode_local(z, z, e0, z), 8},
        {qubits::encode_local(z, z, z, e0), 12},
    }};
    for (const auto& [ket, index] : spots) {
        qubits::LocalKet want = qubits::LocalKet::Zero();
        want(index) = 1.0;
        if (ket != want) ++bad;
    }
    detail += "basis placement spot checks at |0000>, |0100>, |1000>, |1100>";
    CheckResult r = below(bad, 0.5);
    r.detail = detail;
    return r;
}

CheckResult check_path_sum(Level level) {
    const int max_n = level == Level::full ? 10 : 6;
    double worst = 0.0;
    long pairs = 0;
    for (double eps : {0.0, 0.3}) {
        const SimConfig cfg = line_config(16, Mode::free, ops::Variant::qft_limit, eps, 0.0, 0.0);
        const ComplexMatrix u = oracle::dense_psi_step(cfg, LatticeField(cfg.grid, PayloadKind::fourvector)).matrix;
        ComplexMatrix power = ComplexMatrix::Identity(u.rows(), u.cols());
        for (int n = 0; n <= max_n; ++n) {
            for (int xa = 0; xa < 16; ++xa)
                for (int xb = 0; xb < 16; ++xb) {
                    const Mat4 kernel = oracle::path_sum_kernel_1d(xa, xb, n, cfg).kernel;
                    worst = std::max(worst, (kernel - oracle::propagator_block(power, xa, xb)).cwiseAbs().maxCoeff());
                    ++pairs;
                }
            power = u * power;
        }
    }
    CheckResult r = below(worst, 1e-10);
    r.detail = "L=16, N<=" + std::to_string(max_n) + ", eps in {0, 0.3}, " + std::to_string(pairs) +
               " endpoint pairs";
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CheckResult check_determinism(Level, const fs::path& scratch) {
    SimConfig cfg;
    cfg.grid.dims = {8, 8, 8};
    cfg.mode = Mode::superconducting;
    cfg.m = 0.2;
    cfg.m_L = 0.1;
    cfg.e = 0.5;
    cfg.steps = 20;
    cfg.cadence = 5;
    cfg.seed = 11;
    cfg.psi_init.kind = InitKind::random;
    cfg.phi_init.kind = InitKind::random;

    const fs::path base = scratch / ("qlg-determinism-" + std::to_string(::getpid()));
    io::run_command(cfg, base / "a");
    io::run_command(cfg, base / "b");
    const std::string a = slurp(base / "a" / "observables.csv");
    const std::string b = slurp(base / "b" / "observables.csv");
    std::error_code ec;
    fs::remove_all(base, ec);

    CheckResult r = below(a == b ? 0.0 : 1.0, 0.5);
    r.detail = "8^3 superconducting, 20 steps, CSV " + std::to_string(a.size()) + " bytes, " +
               (a == b ? "identical" : "DIFFERENT");
    return r;
}

struct Entry {
    const char* id;
    const char* title;
    std::function<CheckResult(Level, const fs::path&)> run;
};

template <typename F>
std::function<CheckResult(Level, const fs::path&)> plain(F f) {
    return [f](Level l, const fs::path&) { return f(l); };
}

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries{
        {"rotation", "stream basis rotations diagonalize the axis generators", plain(check_rotation)},
        {"1", "Clifford algebra of gamma and G (exact)", plain(check_clifford)},
        {"2", "norm conservation over 1000 steps", plain(check_unitarity)},
        {"3", "pipeline step equals dense step matrix", plain(check_dense_equivalence)},
        {"4", "Dirac dispersion, second-order convergence", plain(check_dirac_convergence)},
        {"5", "high-energy scale factor bounds", plain(check_zeta)},
        {"6", "Maxwell sector dispersion and Lorenz gauge", plain(check_maxwell)},
        {"7", "sigma.grad operator vs finite-difference assembly", plain(check_curl_operator)},
        {"8", "back-reaction first-order consistency", plain(check_backreaction)},
        {"9", "Jordan-Wigner anticommutation and basis placement", plain(check_jordan_wigner)},
        {"10", "path summation equals matrix power", plain(check_path_sum)},
        {"11", "byte-identical reruns", check_determinism},
    };
    return entries;
}

}  // namespace

const std::vector<std::string>& check_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const Entry& e : registry()) out.emplace_back(e.id);
        return out;
    }();
    return ids;
}

CheckResult run_check(const std::string& id, Level level, const fs::path& scratch) {
    for (const Entry& e : registry()) {
        if (id != e.id) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = e.run(level, scratch);
        } catch (const std::exception& ex) {
            r = CheckResult{};
            r.passed = false;
            r.bound = "n/a";
            r.detail = std::string("exception: ") + ex.what();
        }
        r.id = e.id;
        r.title = e.title;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }
    throw std::invalid_argument("unknown check id: " + id);
}

std::vector<CheckResult> run_all(Level level, const fs::path& scratch, std::ostream* progress) {
    std::vector<CheckResult> out;
    for (const std::string& id : check_ids()) {
        out.push_back(run_check(id, level, scratch));
        if (progress != nullptr) *progress << format_result(out.back()) << std::endl;
    }
    return out;
}

std::string format_result(const CheckResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "[%s] %-8s %-52s measured=%-10.3g bound %-8s (%.2f s)",
                  r.passed ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(), r.measured,
                  r.bound.c_str(), r.seconds);
    return std::string(head) + "\n         " + r.detail;
}

}  // namespace qlg::verify
