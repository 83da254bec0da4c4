#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qlg/algebra.hpp"
#include "qlg/operators.hpp"
#include "qlg/spinor_maps.hpp"

#include <numbers>
#include <random>

using namespace qlg;
using namespace qlg::ops;

namespace {

GridSpec grid(int lx, int ly, int lz) {
    GridSpec g;
    g.dims = {lx, ly, lz};
    return g;
}

LatticeField random_field(const GridSpec& g, PayloadKind kind, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
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

TEST_CASE("stream sign patterns are the generator spectra") {
    CHECK(psi_stream_signs() == std::array<int, 4>{1, -1, -1, 1});
    CHECK(phi_stream_signs() == std::array<int, 8>{1, -1, 1, -1, -1, 1, -1, 1});
}

TEST_CASE("rotations diagonalize the axis generators") {
    for (Axis a : kAxes) {
        CHECK(rotation_generator_defect(a) < 1e-15);
        CHECK(phi_rotation_generator_defect(a) < 1e-15);
        CHECK(algebra::unitarity_defect(psi_rotation(a)) < 1e-15);
    }
    CHECK(psi_rotation(Axis::z) == Mat4::Identity());
    CHECK(rotation_sign(Axis::z) == 1);
}

TEST_CASE("fault injection flips the rotation sign") {
    const int sx = rotation_sign(Axis::x);
    testing::inject_rotation_sign_fault(true);
    CHECK(testing::rotation_sign_fault());
    CHECK(rotation_sign(Axis::x) == -sx);
    CHECK(rotation_generator_defect(Axis::x) > 1.0);
    testing::inject_rotation_sign_fault(false);
    CHECK(rotation_generator_defect(Axis::x) < 1e-15);
}

TEST_CASE("z stream of an impulse is a masked shift") {
    const GridSpec g = grid(1, 1, 8);
    for (int c = 0; c < 4; ++c) {
        LatticeField f(g, PayloadKind::spinor4);
        f.at(3, c) = 1.0;
        const LatticeField s = stream_psi_axis(f, Axis::z);
        const int d = psi_stream_signs()[static_cast<std::size_t>(c)];
        CHECK(s.at(static_cast<std::size_t>(3 - d), c) == cplx(1.0));
        CHECK(norm2(s) == 1.0);
    }
    LatticeField f(g, PayloadKind::spinor8);
    f.at(3, 2) = 1.0;
    CHECK(stream_phi_axis(f, Axis::z).at(2, 2) == cplx(1.0));
}

TEST_CASE("streams leave constant fields unchanged") {
    const GridSpec g = grid(4, 3, 5);
    LatticeField f(g, PayloadKind::spinor4);
    for (std::size_t s = 0; s < g.sites(); ++s) f.spinor4(s) = Spinor4(0.3, cplx(0, 1), -0.2, 0.7);
    LatticeField out = f;
    for (Axis a : {Axis::z, Axis::y, Axis::x}) out = stream_psi_axis(out, a);
    CHECK(max_diff(out, f) < 1e-15);
}

TEST_CASE("uniform A_z gives the diagonal gauge phase") {
    const GridSpec g = grid(1, 1, 6);
    LatticeField A(g, PayloadKind::fourvector);
    const double a = 0.4, e = 0.9;
    for (std::size_t s = 0; s < g.sites(); ++s) A.set_fourvec(s, {0, 0, 0, a});
    LatticeField f(g, PayloadKind::spinor4);
    for (std::size_t s = 0; s < g.sites(); ++s) f.spinor4(s) = Spinor4(1, 2, 3, 4);
    for (GaugeSite site : {GaugeSite::departure, GaugeSite::arrival, GaugeSite::midpoint}) {
        const LatticeField out = stream_psi_axis(f, Axis::z, {&A, e, site});
        for (int c = 0; c < 4; ++c) {
            const cplx want = f.at(0, c) * std::polar(1.0, psi_stream_signs()[static_cast<std::size_t>(c)] * e * a);
            CHECK(std::abs(out.at(2, c) - want) < 1e-15);
        }
    }
}

TEST_CASE("stream adjoints invert the streams") {
    const GridSpec g = grid(5, 4, 3);
    const LatticeField psi = random_field(g, PayloadKind::spinor4, 1);
    const LatticeField phi = random_field(g, PayloadKind::spinor8, 2);
    LatticeField A = random_field(g, PayloadKind::fourvector, 3);
    for (cplx& v : A.data()) v = v.real();
    for (Axis a : kAxes) {
        const GaugeCoupling gc{&A, 0.8, GaugeSite::midpoint};
        const LatticeField fwd = stream_psi_axis(psi, a, gc);
        CHECK(std::abs(norm2(fwd) - norm2(psi)) < 1e-12);
        CHECK(max_diff(stream_psi_axis(fwd, a, gc, true), psi) < 1e-14);
        CHECK(max_diff(stream_phi_axis(stream_phi_axis(phi, a), a, true), phi) < 1e-14);
    }
}

TEST_CASE("stream rejects a mismatched gauge grid") {
    const LatticeField psi(grid(4, 1, 1), PayloadKind::spinor4);
    const LatticeField A(grid(5, 1, 1), PayloadKind::fourvector);
    CHECK_THROWS_AS(stream_psi_axis(psi, Axis::x, {&A, 1.0, GaugeSite::departure}), DomainError);
}

TEST_CASE("QFT-limit collide matrices") {
    CHECK(collide_psi_matrix(0.0) == Mat4::Identity());
    CHECK(algebra::max_abs_diff(collide_psi_matrix(1.0), -I * algebra::kron(algebra::pauli(1), algebra::identity(2))) == 0.0);
    const Mat4 c = collide_psi_matrix(0.6);
    CHECK(c(0, 0).real() == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(c(0, 2) == cplx(0.0, -0.6));
    CHECK(algebra::unitarity_defect(c) < 1e-15);
    CHECK_THROWS_AS(collide_psi_matrix(1.5), DomainError);

    CHECK(collide_phi_matrix(0.0) == Mat8::Identity());
    CHECK(algebra::max_abs_diff(collide_phi_matrix(1.0), -I * algebra::kron(algebra::pauli(1), algebra::identity(4))) == 0.0);
    const Mat8 p = collide_phi_matrix(0.5);
    CHECK(p(3, 3).real() == doctest::Approx(0.8660254037844386).epsilon(1e-15));
    CHECK(algebra::unitarity_defect(p) < 1e-15);

    const LatticeField f = random_field(grid(6, 1, 1), PayloadKind::spinor4, 4);
    CHECK(std::abs(norm2(collide_psi(f, 0.37)) - norm2(f)) < 1e-12);
}

TEST_CASE("high-energy collide") {
    const GridSpec g = grid(16, 1, 1);
    const LatticeField f = random_field(g, PayloadKind::spinor4, 5);
    CHECK(max_diff(collide_psi_HE(f, 0.0), f) < 1e-14);
    CHECK(std::abs(norm2(collide_psi_HE(f, 0.7)) - norm2(f)) < 1e-12);

    LatticeField c(g, PayloadKind::spinor4);
    for (std::size_t s = 0; s < g.sites(); ++s) c.spinor4(s) = Spinor4(1, cplx(0, 2), -1, 0.5);
    CHECK(max_diff(collide_psi_HE(c, 0.4), collide_psi(c, 0.4)) < 1e-14);

    // A single plane wave picks up the per-mode displacement.
    const int n = 3;
    const double kappa = 2.0 * std::numbers::pi * n / 16;
    const Spinor4 pattern(0.3, cplx(0.1, 0.2), -0.5, 1.0);
    const LatticeField w = init_plane_wave(g, PayloadKind::spinor4, {kappa, 0, 0}, pattern);
    const double eps = 0.3;
    const Mat4 m = std::sqrt(1 - eps * eps) * Mat4::Identity() -
                   I * eps * Mat4(algebra::kron(algebra::pauli(1), algebra::identity(2))) * he_displacement_psi({kappa, 0, 0});
    const LatticeField want = init_plane_wave(g, PayloadKind::spinor4, {kappa, 0, 0}, m * pattern);
    CHECK(max_diff(collide_psi_HE(w, eps), want) < 1e-13);

    const LatticeField p = random_field(grid(4, 4, 1), PayloadKind::spinor8, 6);
    CHECK(std::abs(norm2(collide_phi_HE(p, 0.9)) - norm2(p)) < 1e-12);
    LatticeField pc(grid(4, 4, 1), PayloadKind::spinor8);
    for (std::size_t s = 0; s < pc.sites(); ++s) pc.spinor8(s) = Spinor8::LinSpaced(8, 0.0, 1.0);
    CHECK(max_diff(collide_phi_HE(pc, 0.5), collide_phi(pc, 0.5)) < 1e-14);
}

TEST_CASE("FFT mode numbers") {
    CHECK(fft_mode_number(0, 8) == 0);
    CHECK(fft_mode_number(3, 8) == 3);
    CHECK(fft_mode_number(4, 8) == -4);
    CHECK(fft_mode_number(7, 8) == -1);
    CHECK(fft_mode_number(2, 5) == 2);
    CHECK(fft_mode_number(3, 5) == -2);
}

TEST_CASE("A0 phase") {
    const GridSpec g = grid(6, 1, 1);
    const LatticeField psi = random_field(g, PayloadKind::spinor4, 7);
    LatticeField A(g, PayloadKind::fourvector);
    CHECK(a0_phase(psi, A, 1.0) == psi);

    for (std::size_t s = 0; s < g.sites(); ++s) A.set_fourvec(s, {std::numbers::pi, 0, 0, 0});
    const LatticeField flipped = a0_phase(psi, A, 1.0);
    for (std::size_t i = 0; i < psi.data().size(); ++i) CHECK(std::abs(flipped.data()[i] + psi.data()[i]) < 1e-15);

    for (std::size_t s = 0; s < g.sites(); ++s) A.set_fourvec(s, {0.3 * s * s, 0, 0, 0});
    const LatticeField out = a0_phase(psi, A, 0.7);
    for (std::size_t s = 0; s < g.sites(); ++s)
        CHECK(out.spinor4(s).squaredNorm() == doctest::Approx(psi.spinor4(s).squaredNorm()).epsilon(1e-15));
    CHECK(max_diff(a0_phase(out, A, 0.7, true), psi) < 1e-15);
}

TEST_CASE("back reaction") {
    const GridSpec g = grid(20, 1, 1);
    const LatticeField phi = random_field(g, PayloadKind::spinor8, 8);
    const LatticeField psi = random_field(g, PayloadKind::spinor4, 9);

    CHECK(backreaction(phi, LatticeField(g, PayloadKind::spinor4), 0.7, 1e-12) == phi);
    CHECK(backreaction(phi, psi, 0.0, 1e-12) == phi);
    CHECK_THROWS_AS(backreaction(phi, psi, 0.5, 0.0), DomainError);

    BackreactionStats stats;
    const LatticeField out = backreaction(phi, psi, 0.9, 1e-12, &stats);
    CHECK(stats.reacted_sites == g.sites());
    CHECK(stats.hermitized_sites == g.sites());
    CHECK(std::abs(norm2(out) - norm2(phi)) < 1e-12);
    for (std::size_t s = 0; s < g.sites(); ++s) {
        const auto before = calA_complex_inverse(phi.spinor8(s).head<4>());
        const auto after = calA_complex_inverse(out.spinor8(s).head<4>());
        CHECK(std::abs(after(0) - before(0)) < 1e-15);
        CHECK(after.tail<3>().norm() == doctest::Approx(before.tail<3>().norm()).epsilon(1e-14));
        CHECK(out.spinor8(s).tail<4>() == phi.spinor8(s).tail<4>());
    }

    // Reversing the coupling undoes the rotation.
    CHECK(max_diff(backreaction(out, psi, -0.9, 1e-12), phi) < 1e-14);
}

TEST_CASE("back reaction matches the hermitian generator") {
    const GridSpec g = grid(5, 1, 1);
    const LatticeField phi = random_field(g, PayloadKind::spinor8, 10);
    const LatticeField psi = random_field(g, PayloadKind::spinor4, 11);
    const double kappa = 0.6;
    const LatticeField out = backreaction(phi, psi, kappa, 1e-12);
    const auto& maps = algebra::vec_to_spinor_maps();
    const Mat4 eta = algebra::minkowski().cast<cplx>();
    for (std::size_t s = 0; s < g.sites(); ++s) {
        const Mat4 k = kappa * maps.u * theta_matrix(psi.spinor4(s), 1e-12) * eta * maps.u.adjoint();
        const ComplexMatrix b = algebra::herm_expm(0.5 * (k + k.adjoint()), 1.0);
        const Spinor4 want = b * phi.spinor8(s).head<4>();
        CHECK(algebra::max_abs_diff(out.spinor8(s).head<4>(), want) < 1e-14);
    }
}

TEST_CASE("Weyl reference streaming") {
    const GridSpec g = grid(1, 1, 16);
    LatticeField c(g, PayloadKind::spinor4);
    for (std::size_t s = 0; s < g.sites(); ++s) c.spinor4(s) = Spinor4(1, 2, 0, 0);
    CHECK(max_diff(weyl_stream_reference(c, Chirality::left), c) < 1e-15);

    // Spin-up plane waves along z: L advances the phase by +k, R by -k.
    const double k = 2.0 * std::numbers::pi / 16;
    for (auto [chir, comp, sign] : {std::tuple{Chirality::left, 0, 1.0}, std::tuple{Chirality::right, 2, -1.0}}) {
        const LatticeField w = init_plane_wave(g, PayloadKind::spinor4, {0, 0, k}, Spinor4::Unit(comp));
        const LatticeField out = weyl_stream_reference(w, chir);
        for (std::size_t s = 0; s < g.sites(); ++s)
            CHECK(std::abs(out.at(s, comp) - std::polar(1.0, sign * k) * w.at(s, comp)) < 1e-14);
    }

    // Opposite displacements for the same data.
    LatticeField d(grid(9, 1, 1), PayloadKind::spinor4);
    d.spinor4(4) = Spinor4(1, 1, 1, 1) / 2.0;
    const LatticeField l = weyl_stream_reference(d, Chirality::left);
    const LatticeField r = weyl_stream_reference(d, Chirality::right);
    CHECK(std::abs(l.at(3, 0)) == doctest::Approx(std::abs(r.at(5, 2))));
    CHECK(std::abs(l.at(5, 0)) == doctest::Approx(std::abs(r.at(3, 2))));
    CHECK(std::abs(l.at(3, 0) - l.at(5, 0)) > 1e-3);
}

TEST_CASE("massless free step restricted to one chirality equals the Weyl reference") {
    const GridSpec g = grid(5, 4, 3);
    LatticeField psi = random_field(g, PayloadKind::spinor4, 12);
    for (Chirality chir : {Chirality::left, Chirality::right}) {
        LatticeField part = psi;
        const int zero = chir == Chirality::left ? 2 : 0;
        for (std::size_t s = 0; s < g.sites(); ++s) part.spinor4(s).segment<2>(zero).setZero();
        LatticeField step = part;
        for (Axis a : {Axis::z, Axis::y, Axis::x}) step = stream_psi_axis(step, a);
        CHECK(max_diff(step, weyl_stream_reference(part, chir)) < 1e-14);
    }
}
