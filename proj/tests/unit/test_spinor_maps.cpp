#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qlg/algebra.hpp"
#include "qlg/spinor_maps.hpp"

#include <numbers>
#include <random>

using namespace qlg;

namespace {

Spinor4 random_spinor(std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Spinor4 p;
    for (int i = 0; i < 4; ++i) {
        const double re = nd(rng);
        p(i) = {re, nd(rng)};
    }
    return p;
}

Spinor4 spinor(cplx a, cplx b, cplx c, cplx d) {
    Spinor4 s;
    s << a, b, c, d;
    return s;
}

GridSpec grid(int lx, int ly, int lz) {
    GridSpec g;
    g.dims = {lx, ly, lz};
    return g;
}

}  // namespace

TEST_CASE("four-vector images") {
    CHECK(fourvec_to_calA({0, 0, 0, 0}) == Spinor4::Zero());
    CHECK(fourvec_to_calA({1, 0, 0, 0}) == spinor(0, 1, -1, 0));
    CHECK(fourvec_to_calA({0, 1, 2, 3}) == spinor({-1, 2}, 3, 3, {1, 2}));

    CHECK(calA_to_fourvec(spinor(0, 1, -1, 0)) == FourVector{1, 0, 0, 0});
    CHECK(calA_to_fourvec(spinor({-1, 2}, 3, 3, {1, 2})) == FourVector{0, 1, 2, 3});
    CHECK_THROWS_AS(calA_to_fourvec(spinor(1, 0, 0, 1)), DomainError);
    CHECK(calA_image_defect(spinor(1, 0, 0, 1)) > 0.5);

    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 20; ++t) {
        const FourVector a{nd(rng), nd(rng), nd(rng), nd(rng)};
        const FourVector back = calA_to_fourvec(fourvec_to_calA(a));
        for (int mu = 0; mu < 4; ++mu) CHECK(back[mu] == doctest::Approx(a[mu]).epsilon(1e-15));
        CHECK(calA_real_part(fourvec_to_calA(a)) == back);
    }
}

TEST_CASE("complex inverse undoes the image map") {
    std::mt19937_64 rng(2);
    const Spinor4 s = random_spinor(rng);
    const auto v = calA_complex_inverse(s);
    const Spinor4 again = spinor(-v(1) + I * v(2), v(0) + v(3), -v(0) + v(3), v(1) + I * v(2));
    CHECK(algebra::max_abs_diff(again, s) < 1e-15);
}

TEST_CASE("Dirac current") {
    CHECK(current_from_psi(Spinor4::Zero()) == FourVector{});
    CHECK(current_from_psi(Spinor4::Unit(0)) == FourVector{1, 0, 0, -1});

    std::mt19937_64 rng(3);
    const ComplexMatrix g0 = algebra::gamma(0);
    for (int t = 0; t < 20; ++t) {
        const Spinor4 p = random_spinor(rng);
        const FourVector j = current_from_psi(p);
        for (int nu = 0; nu < 4; ++nu) {
            const cplx dense = (p.adjoint() * g0 * algebra::gamma(nu) * p)(0, 0);
            CHECK(std::abs(dense.imag()) < 1e-12);
            CHECK(std::abs(dense.real() - j[nu]) < 1e-12);
        }
        CHECK(j.spatial_norm() <= j.t + 1e-12);
    }
}

TEST_CASE("theta matrix") {
    CHECK(theta_matrix(Spinor4::Zero(), 1e-12) == ThetaMatrix::Zero());
    CHECK_THROWS_AS(theta_matrix(Spinor4::Unit(0), 0.0), DomainError);

    std::mt19937_64 rng(4);
    const ComplexMatrix g0 = algebra::gamma(0);
    for (int t = 0; t < 10; ++t) {
        const Spinor4 p = random_spinor(rng);
        const ThetaMatrix th = theta_matrix(p, 1e-12);
        const double rho = p.squaredNorm();
        for (int mu = 0; mu < 4; ++mu) {
            CHECK(th(mu, mu) == cplx(0.0));
            for (int nu = 0; nu < 4; ++nu) {
                CHECK(std::abs(th(mu, nu) + th(nu, mu)) < 1e-12);
                const ComplexMatrix comm = algebra::commutator(algebra::gamma(mu), algebra::gamma(nu));
                const cplx dense = (p.adjoint() * g0 * comm * p)(0, 0) / rho;
                CHECK(std::abs(dense - th(mu, nu)) < 1e-12);
            }
        }
    }
}

TEST_CASE("source spinor and dual spinor") {
    CHECK(source_spinor_from_J({}) == Spinor4::Zero());
    CHECK(source_spinor_from_J({1, 0, 0, 0}) == spinor(0, 1, -1, 0));
    CHECK(source_spinor_from_J({2, 1, 1, 0}) == spinor({-1, 1}, 2, -2, {1, 1}));

    CHECK(dual_spinor(Spinor4::Zero(), 3.0) == Spinor4::Zero());
    CHECK(dual_spinor(Spinor4::Unit(0), 2.0) == spinor({0, -2}, 0, 0, 0));
    CHECK_THROWS_AS(dual_spinor(Spinor4::Unit(0), 0.0), DomainError);

    std::mt19937_64 rng(6);
    const Spinor4 f = random_spinor(rng);
    const double lambda = 1.7;
    const Spinor4 back = I * dual_spinor(f, lambda) / lambda;
    CHECK(algebra::max_abs_diff(back, f) < 1e-15);
}

TEST_CASE("sigma.grad of constant and linear potentials") {
    const GridSpec g = grid(8, 1, 1);
    LatticeField c(g, PayloadKind::spinor4);
    for (std::size_t s = 0; s < g.sites(); ++s) c.spinor4(s) = fourvec_to_calA({0.3, 1, -2, 0.5});
    CHECK(norm2(curl_operator_apply(c, 1.0)) == 0.0);

    // A_y = x, periodized as a sawtooth; B_z = 1 away from the seam.
    LatticeField lin(g, PayloadKind::spinor4);
    for (std::size_t s = 0; s < g.sites(); ++s) lin.spinor4(s) = fourvec_to_calA({0, 0, static_cast<double>(s), 0});
    const LatticeField out = curl_operator_apply(lin, 1.0);
    for (std::size_t s = 1; s + 1 < g.sites(); ++s) {
        CHECK(out.at(s, 0) == cplx(0.0));
        CHECK(out.at(s, 1) == cplx(0.0, 1.0));
        CHECK(out.at(s, 3) == cplx(0.0));
    }
}

TEST_CASE("stencil grid checks") {
    CHECK_THROWS_AS(curl_operator_apply(LatticeField(grid(2, 8, 1), PayloadKind::spinor4), 1.0), DomainError);
    CHECK_THROWS_AS(curl_operator_apply(LatticeField(grid(1, 1, 1), PayloadKind::spinor4), 1.0), DomainError);
    CHECK(supports_central_difference(grid(4, 1, 1)));
    CHECK_FALSE(supports_central_difference(grid(2, 4, 1)));
    CHECK(norm2(sigma_grad_apply(LatticeField(grid(1, 1, 1), PayloadKind::spinor4), 1.0)) == 0.0);
}

TEST_CASE("field spinor from the 4-potential") {
    const GridSpec g = grid(6, 1, 1);
    LatticeField a(g, PayloadKind::fourvector);
    for (std::size_t s = 0; s < g.sites(); ++s) a.set_fourvec(s, {0.2, -1, 0.4, 2});
    CHECK(norm2(fourcurl_build_F(a, a, 0.1, 1.0)) == 0.0);

    const double dt = 0.25;
    LatticeField prev(g, PayloadKind::fourvector);
    LatticeField now(g, PayloadKind::fourvector);
    for (std::size_t s = 0; s < g.sites(); ++s) now.set_fourvec(s, {dt, 0, 0, 0});
    const LatticeField f = fourcurl_build_F(now, prev, dt, 1.0);
    for (std::size_t s = 0; s < g.sites(); ++s)
        CHECK(algebra::max_abs_diff(f.spinor4(s), spinor(0, -1, 1, 0)) < 1e-15);

    CHECK_THROWS_AS(fourcurl_build_F(now, prev, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(fourcurl_build_F(LatticeField(g, PayloadKind::spinor4), prev, dt, 1.0), DomainError);
}

TEST_CASE("plane-wave E and B") {
    // A_x = cos(k z - w t), w = k, on a z line.
    const int L = 64;
    const GridSpec g = grid(1, 1, L);
    const double k = 2.0 * std::numbers::pi / L;
    const double dt = 1e-3;
    auto slice = [&](double t) {
        LatticeField a(g, PayloadKind::fourvector);
        for (int z = 0; z < L; ++z) a.set_fourvec(static_cast<std::size_t>(z), {0, std::cos(k * z - k * t), 0, 0});
        return a;
    };
    const double t = 0.7;
    const LatticeField f = fourcurl_build_F(slice(t), slice(t - dt), dt, 1.0);
    for (int z = 0; z < L; z += 5) {
        const EBSample eb = extract_EB(f.spinor4(static_cast<std::size_t>(z)));
        const double scale = k;
        CHECK(std::abs(eb.E.norm() - eb.B.norm()) < 2e-3 * scale);
        CHECK(std::abs(eb.E.dot(eb.B)) < 2e-3 * scale * scale);
        CHECK(std::abs(eb.E.z()) < 1e-12);
        CHECK(std::abs(eb.B.z()) < 1e-12);
        CHECK(std::abs(eb.lorenz) < 1e-12);
        const double exact = k * std::sin(k * z - k * t);
        CHECK(eb.E.x() == doctest::Approx(-exact).epsilon(5e-3));
        CHECK(eb.B.y() == doctest::Approx(-exact).epsilon(5e-3));
    }

    // The reversed-momentum operator closes the vacuum wave equation.
    const LatticeField f_prev = fourcurl_build_F(slice(t - dt), slice(t - 2 * dt), dt, 1.0);
    const LatticeField box = reversed_momentum_apply(f, f_prev, dt, 1.0);
    for (std::size_t s = 0; s < g.sites(); ++s)
        CHECK(box.spinor4(s).cwiseAbs().maxCoeff() < 1e-2 * k * k);
}
