#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qlg/evolution.hpp"
#include "qlg/oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qlg;

namespace {

SimConfig config_1d(int L, Mode mode, double m, double m_L = 0.0, double e = 0.0) {
    SimConfig c;
    c.grid.dims = {L, 1, 1};
    c.mode = mode;
    c.m = m;
    c.m_L = m_L;
    c.e = e;
    return c;
}

LatticeField noise(const GridSpec& g, PayloadKind kind, unsigned seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, scale);
    LatticeField f(g, kind);
    for (cplx& v : f.data()) {
        const double re = nd(rng);
        v = {re, nd(rng)};
    }
    return f;
}

double max_diff(const LatticeField& a, const LatticeField& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
    return d;
}

}  // namespace

TEST_CASE("massless free step leaves a uniform spinor alone") {
    const SimConfig c = config_1d(8, Mode::free, 0.0);
    Spinor4 p;
    p << cplx{0.3, 0.1}, cplx{-0.2, 0.5}, cplx{0.7, 0.0}, cplx{0.0, -0.4};
    SystemState st = make_state(c, init_plane_wave(c.grid, PayloadKind::spinor4, {0, 0, 0}, p),
                                vacuum(c.grid, PayloadKind::spinor8));
    const LatticeField before = st.psi;
    step_system(st, c);
    CHECK(max_diff(before, st.psi) < 1e-15);
    CHECK(st.step == 1);
}

TEST_CASE("zero-momentum psi mode oscillates at arcsin eps") {
    const double eps = 0.6;
    const SimConfig c = config_1d(4, Mode::free, eps);
    const auto phases = oracle::eigenphases(engine_mode_matrix(c, {0, 0, 0}));
    const double w = std::asin(eps);
    REQUIRE(phases.size() == 4);
    CHECK(phases[0] == doctest::Approx(-w).epsilon(1e-12));
    CHECK(phases[1] == doctest::Approx(-w).epsilon(1e-12));
    CHECK(phases[2] == doctest::Approx(w).epsilon(1e-12));
    CHECK(phases[3] == doctest::Approx(w).epsilon(1e-12));
}

TEST_CASE("superconducting zero-momentum Phi mode mixes at arcsin eps_L") {
    const double eps_L = 0.4;
    const SimConfig c = config_1d(4, Mode::superconducting, 0.0, eps_L);
    const auto phases = oracle::eigenphases(oracle::mode_matrix(c, {0, 0, 0}, oracle::Sector::phi));
    const double w = std::asin(eps_L);
    REQUIRE(phases.size() == 8);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(phases[i] + w) < 1e-12);
    for (std::size_t i = 4; i < 8; ++i) CHECK(std::abs(phases[i] - w) < 1e-12);
}

TEST_CASE("Phi without matter or mass only streams") {
    SimConfig c = config_1d(8, Mode::qed_limit, 0.0, 0.0, 0.5);
    const LatticeField phi = noise(c.grid, PayloadKind::spinor8, 3);
    SystemState st = make_state(c, vacuum(c.grid, PayloadKind::spinor4), phi);
    step_system(st, c);
    LatticeField expected = phi;
    for (Axis a : {Axis::z, Axis::y, Axis::x}) expected = ops::stream_phi_axis(expected, a);
    CHECK(max_diff(expected, st.phi) < 1e-15);
    CHECK(st.hermitized_total == 0);
}

TEST_CASE("free mode decouples the sectors") {
    const SimConfig c = config_1d(8, Mode::free, 0.3, 0.2, 0.9);
    const LatticeField psi = noise(c.grid, PayloadKind::spinor4, 5);
    const LatticeField phi = noise(c.grid, PayloadKind::spinor8, 6);
    SystemState joint = make_state(c, psi, phi);
    SystemState alone = make_state(c, psi, vacuum(c.grid, PayloadKind::spinor8));
    step_system(joint, c);
    step_system(alone, c);
    CHECK(joint.psi == alone.psi);
}

TEST_CASE("adjoint step undoes the coupled step") {
    for (Mode mode : {Mode::qed_limit, Mode::superconducting}) {
        SimConfig c;
        c.grid.dims = {6, 4, 3};
        c.mode = mode;
        c.m = 0.4;
        c.m_L = 0.3;
        c.e = 0.8;
        c.gauge_site = ops::GaugeSite::midpoint;
        const LatticeField psi = noise(c.grid, PayloadKind::spinor4, 11, 0.2);
        const LatticeField phi = noise(c.grid, PayloadKind::spinor8, 12);
        SystemState st = make_state(c, psi, phi);
        for (int t = 0; t < 5; ++t) step_system(st, c);
        for (int t = 0; t < 5; ++t) step_system_adjoint(st, c);
        CHECK(st.step == 0);
        CHECK(max_diff(st.psi, psi) < 1e-9);
        CHECK(max_diff(st.phi, phi) < 1e-9);
    }
}

TEST_CASE("coupled evolution conserves both norms") {
    SimConfig c;
    c.grid.dims = {8, 8, 1};
    c.mode = Mode::superconducting;
    c.m = 0.5;
    c.m_L = 0.2;
    c.e = 0.6;
    SystemState st = make_state(c, noise(c.grid, PayloadKind::spinor4, 21, 0.1),
                                noise(c.grid, PayloadKind::spinor8, 22));
    const Observables o0 = observables(st, c);
    for (int t = 0; t < 20; ++t) step_system(st, c);
    const Observables o1 = observables(st, c);
    CHECK(o1.norm_psi == doctest::Approx(o0.norm_psi).epsilon(1e-12));
    CHECK(o1.norm_phi == doctest::Approx(o0.norm_phi).epsilon(1e-12));
    CHECK(o1.total_J0 == doctest::Approx(o0.total_J0).epsilon(1e-12));
}

TEST_CASE("vacuum observables vanish") {
    const SimConfig c = config_1d(16, Mode::qed_limit, 0.2, 0.0, 0.3);
    SystemState st = make_state(c);
    step_system(st, c);
    const Observables o = observables(st, c);
    CHECK(o.norm_psi == 0.0);
    CHECK(o.norm_phi == 0.0);
    CHECK(o.total_J0 == 0.0);
    CHECK(o.E_energy == 0.0);
    CHECK(o.B_energy == 0.0);
    CHECK(o.divA_max == 0.0);
    CHECK(o.dirac_energy == 0.0);
    CHECK(o.lagrangian == 0.0);
}

TEST_CASE("energy eigenvectors carry the Dirac energy") {
    const SimConfig c = config_1d(128, Mode::free, 0.05);
    const auto k = grid_wavevector(c.grid, {2, 0, 0});
    const double target = std::hypot(k[0], c.m);
    for (bool positive : {true, false}) {
        const Spinor4 v = energy_eigenvector(c, k, positive);
        SystemState st = make_state(c, init_plane_wave(c.grid, PayloadKind::spinor4, k, v),
                                    vacuum(c.grid, PayloadKind::spinor8));
        const Observables o = observables(st, c);
        const double per_norm = o.dirac_energy / o.norm_psi;
        CHECK(per_norm == doctest::Approx(positive ? target : -target).epsilon(5e-3));
        CHECK(std::abs(o.dirac_energy_imag) < 1e-12);
    }
}

TEST_CASE("transverse photon data stays divergence free") {
    SimConfig c = config_1d(32, Mode::qed_limit, 0.0, 0.0, 1.0);
    c.phi_init.kind = InitKind::plane_wave;
    c.phi_init.mode = {1, 0, 0};
    c.phi_init.amplitude = 0.1;
    SystemState st = make_state(c);
    for (int t = 0; t < 10; ++t) step_system(st, c);
    const Observables o = observables(st, c);
    CHECK(o.divA_max < 1e-12);
    CHECK(o.E_energy > 0.0);
}

TEST_CASE("dispersion measurement") {
    SimConfig c = config_1d(16, Mode::free, 0.0);
    CHECK(std::abs(measure_dispersion(c, {0, 0, 0}, 8).omega) < 1e-14);

    c.variant = ops::Variant::high_energy;
    for (double eps : {0.3, 0.7}) {
        c.m = eps;
        const DispersionResult r = measure_dispersion(c, {0, 0, 0}, 16);
        CHECK(r.zeta == doctest::Approx(std::asin(eps) / eps).epsilon(1e-10));
    }
    c.m = 1.0;
    CHECK(measure_dispersion(c, {0, 0, 0}, 16).zeta ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-10));

    c.mode = Mode::superconducting;
    CHECK_THROWS_AS(measure_dispersion(c, {0, 0, 0}, 4), DomainError);
    c.mode = Mode::free;
    CHECK_THROWS_AS(measure_dispersion(c, {0, 0, 0}, 0), DomainError);
}

TEST_CASE("stepping with a stale gauge cache is refused") {
    const SimConfig c = config_1d(4, Mode::qed_limit, 0.1, 0.0, 0.5);
    SystemState st = make_state(c);
    st.phi = noise(c.grid, PayloadKind::spinor8, 1);
    ++st.phi_version;
    CHECK_THROWS_AS(step_psi(st, c), std::logic_error);
    refresh_gauge(st, c);
    CHECK_NOTHROW(step_psi(st, c));
}

TEST_CASE("make_state rejects mismatched grids") {
    const SimConfig c = config_1d(4, Mode::free, 0.1);
    GridSpec other = c.grid;
    other.dims = {5, 1, 1};
    CHECK_THROWS_AS(make_state(c, vacuum(other, PayloadKind::spinor4), vacuum(c.grid, PayloadKind::spinor8)),
                    DomainError);
    CHECK_THROWS_AS(make_state(c, vacuum(c.grid, PayloadKind::spinor8), vacuum(c.grid, PayloadKind::spinor8)),
                    DomainError);
}

TEST_CASE("seeded random initial data is reproducible") {
    SimConfig c = config_1d(8, Mode::free, 0.2);
    c.psi_init.kind = InitKind::random;
    c.seed = 77;
    const SystemState a = make_state(c);
    const SystemState b = make_state(c);
    CHECK(a.psi == b.psi);
    CHECK(norm2(a.psi) == doctest::Approx(1.0));
    c.seed = 78;
    CHECK_FALSE(make_state(c).psi == a.psi);
}
