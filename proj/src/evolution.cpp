#include "qlg/evolution.hpp"

#include "qlg/spinor_maps.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qlg {

LatticeField gauge_from_phi(const LatticeField& phi, const SimConfig& cfg) {
    if (phi.kind() != PayloadKind::spinor8) throw DomainError("gauge_from_phi: phi must be spinor8");
    LatticeField A(phi.spec(), PayloadKind::fourvector);
    const double scale = cfg.e / (cfg.phi0 * phi.spec().spacing);
    if (scale == 0.0) return A;
    for (std::size_t s = 0; s < phi.sites(); ++s) {
        const Spinor4 phi1 = phi.spinor8(s).head<4>();
        const FourVector a = calA_real_part(phi1);
        A.set_fourvec(s, {scale * a.t, scale * a.x, scale * a.y, scale * a.z});
    }
    return A;
}

void refresh_gauge(SystemState& state, const SimConfig& cfg) {
    state.A = gauge_from_phi(state.phi, cfg);
    state.gauge_version = state.phi_version;
}

void assign_phi(SystemState& state, LatticeField phi, const SimConfig& cfg) {
    state.phi = std::move(phi);
    ++state.phi_version;
    refresh_gauge(state, cfg);
}

namespace {

ComplexVector pattern_vector(const std::vector<cplx>& v) {
    ComplexVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

ComplexVector field_pattern(const SimConfig& cfg, const FieldInit& init, PayloadKind kind,
                            const std::array<double, 3>& k) {
    ComplexVector p;
    switch (init.pattern) {
        case PatternKind::explicit_values: p = pattern_vector(init.values); break;
        case PatternKind::positive_energy:
        case PatternKind::negative_energy:
            p = energy_eigenvector(cfg, k, init.pattern == PatternKind::positive_energy);
            break;
        case PatternKind::transverse: {
            if (init.mode[1] != 0 || init.mode[2] != 0)
                throw ConfigError("phi_pattern = transverse needs a carrier along x (phi_mode = n 0 0)");
            p = ComplexVector::Zero(8);
            p.head(4).setConstant(I);
            break;
        }
    }
    if (p.size() != components(kind)) throw ConfigError("initial pattern has the wrong length");
    const double n = p.norm();
    if (n == 0.0) throw ConfigError("initial pattern is the zero vector");
    return p / n;
}

LatticeField random_field(const GridSpec& g, PayloadKind kind, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    LatticeField f(g, kind);
    for (cplx& v : f.data()) {
        const double re = nd(rng);
        const double im = nd(rng);
        v = {re, im};
    }
    return f;
}

void scale_to_norm(LatticeField& f, double target) {
    const double n = std::sqrt(norm2(f));
    if (n == 0.0) return;
    for (cplx& v : f.data()) v *= target / n;
}

LatticeField build_field(const SimConfig& cfg, const FieldInit& init, PayloadKind kind,
                         std::mt19937_64& rng) {
    const GridSpec& g = cfg.grid;
    const auto k = grid_wavevector(g, init.mode);
    std::array<double, 3> center{};
    for (std::size_t a = 0; a < 3; ++a) center[a] = g.dims[a] / 2;
    switch (init.kind) {
        case InitKind::vacuum: return vacuum(g, kind);
        case InitKind::random: {
            LatticeField f = random_field(g, kind, rng);
            scale_to_norm(f, init.amplitude);
            return f;
        }
        case InitKind::plane_wave:
            return init_plane_wave(g, kind, k, init.amplitude * field_pattern(cfg, init, kind, k));
        case InitKind::gaussian: {
            LatticeField f = init_gaussian(g, kind, center, init.sigma, k,
                                           field_pattern(cfg, init, kind, k));
            scale_to_norm(f, init.amplitude);
            return f;
        }
        case InitKind::two_packet: {
            std::array<double, 3> left = center;
            std::array<double, 3> right = center;
            left[0] = g.dims[0] / 4;
            right[0] = (3 * g.dims[0]) / 4;
            const std::array<double, 3> kneg{-k[0], -k[1], -k[2]};
            FieldInit mirrored = init;
            for (int& n : mirrored.mode) n = -n;
            LatticeField f = init_gaussian(g, kind, left, init.sigma, k,
                                           field_pattern(cfg, init, kind, k));
            const LatticeField h = init_gaussian(g, kind, right, init.sigma, kneg,
                                                 field_pattern(cfg, mirrored, kind, kneg));
            for (std::size_t i = 0; i < f.data().size(); ++i) f.data()[i] += h.data()[i];
            scale_to_norm(f, init.amplitude);
            return f;
        }
    }
    return vacuum(g, kind);
}

}  // namespace

SystemState make_state(const SimConfig& cfg, LatticeField psi, LatticeField phi) {
    if (psi.kind() != PayloadKind::spinor4 || phi.kind() != PayloadKind::spinor8)
        throw DomainError("make_state: psi must be spinor4 and phi spinor8");
    if (!(psi.spec() == cfg.grid) || !(phi.spec() == cfg.grid))
        throw DomainError("make_state: field grids must match the configured grid");
    SystemState st;
    st.psi = std::move(psi);
    st.phi = std::move(phi);
    st.phi_version = 1;
    refresh_gauge(st, cfg);
    st.psi_prev = st.psi;
    st.A_prev = st.A;
    return st;
}

SystemState make_state(const SimConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    LatticeField psi = build_field(cfg, cfg.psi_init, PayloadKind::spinor4, rng);
    LatticeField phi = build_field(cfg, cfg.phi_init, PayloadKind::spinor8, rng);
    return make_state(cfg, std::move(psi), std::move(phi));
}

namespace {

void require_fresh(const SystemState& state) {
    if (!state.gauge_fresh())
        throw std::logic_error("cached gauge field is stale: Phi changed without a refresh");
}

ops::GaugeCoupling coupling_for(const SystemState& state, const SimConfig& cfg) {
    if (!cfg.gauge_coupled()) return {};
    return {&state.A, cfg.e, cfg.gauge_site};
}

LatticeField psi_collide(const LatticeField& f, const SimConfig& cfg, double eps) {
    return cfg.variant == ops::Variant::high_energy ? ops::collide_psi_HE(f, eps)
                                                    : ops::collide_psi(f, eps);
}

LatticeField phi_collide(const LatticeField& f, const SimConfig& cfg, double eps_L) {
    return cfg.variant == ops::Variant::high_energy ? ops::collide_phi_HE(f, eps_L)
                                                    : ops::collide_phi(f, eps_L);
}

}  // namespace

LatticeField step_psi(const SystemState& state, const SimConfig& cfg) {
    require_fresh(state);
    const auto gauge = coupling_for(state, cfg);
    LatticeField f = psi_collide(state.psi, cfg, cfg.eps());
    for (Axis a : {Axis::z, Axis::y, Axis::x}) f = ops::stream_psi_axis(f, a, gauge);
    if (gauge.active()) f = ops::a0_phase(f, state.A, cfg.e);
    return f;
}

LatticeField step_psi_adjoint(const SystemState& state, const SimConfig& cfg) {
    require_fresh(state);
    const auto gauge = coupling_for(state, cfg);
    LatticeField f = state.psi;
    if (gauge.active()) f = ops::a0_phase(f, state.A, cfg.e, true);
    for (Axis a : {Axis::x, Axis::y, Axis::z}) f = ops::stream_psi_axis(f, a, gauge, true);
    return psi_collide(f, cfg, -cfg.eps());
}

LatticeField step_phi(const SystemState& state, const SimConfig& cfg,
                      ops::BackreactionStats* stats) {
    LatticeField f = state.phi;
    if (cfg.has_backreaction())
        f = ops::backreaction(f, state.psi, cfg.kappa(), cfg.rho_floor, stats);
    else if (stats != nullptr)
        *stats = {};
    if (cfg.has_phi_mass()) f = phi_collide(f, cfg, cfg.eps_L());
    for (Axis a : {Axis::z, Axis::y, Axis::x}) f = ops::stream_phi_axis(f, a);
    return f;
}

LatticeField step_phi_adjoint(const SystemState& state, const SimConfig& cfg) {
    LatticeField f = state.phi;
    for (Axis a : {Axis::x, Axis::y, Axis::z}) f = ops::stream_phi_axis(f, a, true);
    if (cfg.has_phi_mass()) f = phi_collide(f, cfg, -cfg.eps_L());
    if (cfg.has_backreaction()) f = ops::backreaction(f, state.psi, -cfg.kappa(), cfg.rho_floor);
    return f;
}

void step_system(SystemState& state, const SimConfig& cfg) {
    state.psi_prev = state.psi;
    state.A_prev = state.A;
    state.psi = step_psi(state, cfg);
    ops::BackreactionStats stats;
    LatticeField phi = step_phi(state, cfg, &stats);
    state.hermitized_total += stats.hermitized_sites;
    assign_phi(state, std::move(phi), cfg);
    state.has_prev = true;
    ++state.step;
}

void step_system_adjoint(SystemState& state, const SimConfig& cfg) {
    assign_phi(state, step_phi_adjoint(state, cfg), cfg);
    state.psi = step_psi_adjoint(state, cfg);
    state.psi_prev = state.psi;
    state.A_prev = state.A;
    state.has_prev = false;
    --state.step;
}

cplx dirac_expectation(const LatticeField& psi, const LatticeField& A, double m, double e) {
    const double spacing = psi.spec().spacing;
    const LatticeField grad = sigma_grad_apply(psi, spacing);
    std::vector<cplx> terms(psi.sites());
    for (std::size_t s = 0; s < psi.sites(); ++s) {
        const Spinor4 p = psi.spinor4(s);
        const Spinor4 g = grad.spinor4(s);
        const FourVector a = A.fourvec(s);
        Spinor4 h;
        // -sigma_z(x)sigma.(-i grad + e A) + m sigma_x(x)1 - e A0
        const cplx ax = e * a.x, ay = e * a.y, az = e * a.z;
        for (int b = 0; b < 2; ++b) {
            const double zsign = b == 0 ? 1.0 : -1.0;
            const int u = 2 * b;
            const int w = u + 1;
            const cplx su = az * p(u) + (ax - I * ay) * p(w);
            const cplx sw = (ax + I * ay) * p(u) - az * p(w);
            h(u) = zsign * (I * g(u) - su);
            h(w) = zsign * (I * g(w) - sw);
        }
        h.head<2>() += m * p.tail<2>();
        h.tail<2>() += m * p.head<2>();
        h -= e * a.t * p;
        terms[s] = p.dot(h);
    }
    return pairwise_sum(terms);
}

Observables observables(const SystemState& state, const SimConfig& cfg) {
    Observables o;
    o.step = state.step;
    o.norm_psi = norm2(state.psi);
    o.norm_phi = norm2(state.phi);
    o.hermitized_sites = state.hermitized_total;

    const std::size_t n = state.psi.sites();
    std::vector<double> j0(n), jx(n), jy(n), jz(n);
    for (std::size_t s = 0; s < n; ++s) {
        const FourVector j = current_from_psi(state.psi.spinor4(s));
        j0[s] = j.t;
        jx[s] = j.x;
        jy[s] = j.y;
        jz[s] = j.z;
    }
    o.total_J0 = pairwise_sum(j0);
    o.total_current = {o.total_J0, pairwise_sum(jx), pairwise_sum(jy), pairwise_sum(jz)};

    const double e_eff = cfg.gauge_coupled() ? cfg.e : 0.0;
    const cplx ed = dirac_expectation(state.psi, state.A, cfg.m, e_eff);
    o.dirac_energy = ed.real();
    o.dirac_energy_imag = ed.imag();

    const GridSpec& g = cfg.grid;
    double em_lagrangian = 0.0;
    if (supports_central_difference(g)) {
        const LatticeField& prev = state.has_prev ? state.A_prev : state.A;
        const LatticeField F = fourcurl_build_F(state.A, prev, g.timestep, g.spacing);
        std::vector<double> e2(n), b2(n);
        double div_max = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const EBSample eb = extract_EB(F.spinor4(s));
            e2[s] = eb.E.squaredNorm();
            b2[s] = eb.B.squaredNorm();
            div_max = std::max(div_max, std::abs(eb.lorenz));
        }
        o.E_energy = 0.5 * pairwise_sum(e2);
        o.B_energy = 0.5 * pairwise_sum(b2);
        o.divA_max = div_max;
        em_lagrangian = o.E_energy - o.B_energy;
    }

    double time_term = 0.0;
    if (state.has_prev) {
        std::vector<double> t(n);
        for (std::size_t s = 0; s < n; ++s) {
            const Spinor4 p = state.psi.spinor4(s);
            const Spinor4 dp = (p - Spinor4(state.psi_prev.spinor4(s))) / g.timestep;
            t[s] = (I * p.dot(dp)).real();
        }
        time_term = pairwise_sum(t);
    }
    o.lagrangian = time_term - o.dirac_energy + em_lagrangian;
    return o;
}

namespace {

void require_dispersion_mode(const SimConfig& cfg) {
    if (cfg.mode == Mode::superconducting)
        throw DomainError("dispersion measurement needs free or qed_limit mode");
}

LatticeField probe_state_step(const SimConfig& cfg, LatticeField psi) {
    SystemState st = make_state(cfg, std::move(psi), vacuum(cfg.grid, PayloadKind::spinor8));
    return step_psi(st, cfg);
}

}  // namespace

Mat4 engine_mode_matrix(const SimConfig& cfg, const std::array<double, 3>& k) {
    const GridSpec& g = cfg.grid;
    Mat4 out = Mat4::Zero();
    for (int c = 0; c < 4; ++c) {
        const LatticeField basis = init_plane_wave(g, PayloadKind::spinor4, k, Spinor4::Unit(c));
        const LatticeField next = probe_state_step(cfg, basis);
        for (int r = 0; r < 4; ++r) {
            LatticeField probe = init_plane_wave(g, PayloadKind::spinor4, k, Spinor4::Unit(r));
            out(r, c) = inner(probe, next) / static_cast<double>(g.sites());
        }
    }
    return out;
}

Spinor4 energy_eigenvector(const SimConfig& cfg, const std::array<double, 3>& k, bool positive) {
    const Mat4 u = engine_mode_matrix(cfg, k);
    Eigen::ComplexEigenSolver<Mat4> es(u);
    int best = 0;
    double best_phase = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double omega = -std::arg(es.eigenvalues()(i));
        if (i == 0 || (positive ? omega > best_phase : omega < best_phase)) {
            best = i;
            best_phase = omega;
        }
    }
    Spinor4 v = es.eigenvectors().col(best);
    v.normalize();
    return v;
}

DispersionResult measure_dispersion(const SimConfig& cfg, const std::array<double, 3>& k,
                                    int n_steps) {
    require_dispersion_mode(cfg);
    if (n_steps < 1) throw DomainError("measure_dispersion: n_steps must be >= 1");
    const GridSpec& g = cfg.grid;
    const Spinor4 pattern = energy_eigenvector(cfg, k, true);
    const LatticeField psi0 = init_plane_wave(g, PayloadKind::spinor4, k, pattern);

    SystemState st = make_state(cfg, psi0, vacuum(g, PayloadKind::spinor8));
    std::vector<double> phase(static_cast<std::size_t>(n_steps) + 1, 0.0);
    double prev_raw = 0.0;
    for (int t = 1; t <= n_steps; ++t) {
        st.psi = step_psi(st, cfg);
        const double raw = std::arg(inner(psi0, st.psi));
        double d = raw - prev_raw;
        d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
        phase[static_cast<std::size_t>(t)] = phase[static_cast<std::size_t>(t) - 1] + d;
        prev_raw = raw;
    }

    // Least-squares slope of phase against step count.
    const double npts = n_steps + 1;
    double mt = 0.0, mp = 0.0;
    for (int t = 0; t <= n_steps; ++t) {
        mt += t;
        mp += phase[static_cast<std::size_t>(t)];
    }
    mt /= npts;
    mp /= npts;
    double num = 0.0, den = 0.0;
    for (int t = 0; t <= n_steps; ++t) {
        num += (t - mt) * (phase[static_cast<std::size_t>(t)] - mp);
        den += (t - mt) * (t - mt);
    }

    DispersionResult r;
    r.omega = -(num / den) / g.timestep;
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    r.omega_dirac = std::sqrt(k2 + cfg.m * cfg.m);
    r.zeta = r.omega_dirac > 0.0 ? r.omega / r.omega_dirac : 1.0;
    return r;
}

}  // namespace qlg
