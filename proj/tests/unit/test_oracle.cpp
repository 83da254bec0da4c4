#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qlg/algebra.hpp"
#include "qlg/evolution.hpp"
#include "qlg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace qlg;
using namespace qlg::oracle;

namespace {

SimConfig line(int L, double m) {
    SimConfig c;
    c.grid.dims = {L, 1, 1};
    c.m = m;
    return c;
}

LatticeField noise(const GridSpec& g, PayloadKind kind, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    LatticeField f(g, kind);
    for (cplx& v : f.data()) {
        const double re = nd(rng);
        v = {re, nd(rng)};
    }
    return f;
}

}  // namespace

TEST_CASE("massless single site is the identity") {
    const SimConfig c = line(1, 0.0);
    const DenseStep u = dense_psi_step(c, vacuum(c.grid, PayloadKind::fourvector));
    CHECK(u.dimension() == 4);
    CHECK(u.matrix.isApprox(ComplexMatrix::Identity(4, 4), 1e-15));
}

TEST_CASE("dense steps are unitary") {
    SimConfig c = line(8, 0.35);
    c.mode = Mode::superconducting;
    c.m_L = 0.6;
    c.e = 0.4;
    const LatticeField psi = noise(c.grid, PayloadKind::spinor4, 2);
    const LatticeField phi = noise(c.grid, PayloadKind::spinor8, 3);
    const DenseStep up = dense_psi_step(c, gauge_from_phi(phi, c));
    const DenseStep uphi = dense_phi_step(c, psi);
    CHECK(up.unitarity_defect < 1e-13);
    CHECK(uphi.unitarity_defect < 1e-13);
    CHECK(uphi.dimension() == 64);
}

TEST_CASE("dense step agrees with the engine on a random field") {
    SimConfig c;
    c.grid.dims = {2, 2, 2};
    c.mode = Mode::qed_limit;
    c.m = 0.2;
    c.e = 0.9;
    const LatticeField psi = noise(c.grid, PayloadKind::spinor4, 7);
    const LatticeField phi = noise(c.grid, PayloadKind::spinor8, 8);
    const SystemState st = make_state(c, psi, phi);
    const LatticeField engine = step_psi(st, c);
    const LatticeField dense = apply_dense(dense_psi_step(c, st.A), psi);
    double d = 0.0;
    for (std::size_t i = 0; i < engine.data().size(); ++i)
        d = std::max(d, std::abs(engine.data()[i] - dense.data()[i]));
    CHECK(d < 1e-13);
}

TEST_CASE("translation-invariant spectrum splits into momentum sectors") {
    const SimConfig c = line(8, 0.4);
    const DenseStep u = dense_psi_step(c, vacuum(c.grid, PayloadKind::fourvector));
    std::vector<double> full = eigenphases(u.matrix);
    std::vector<double> sectors;
    for (int n = 0; n < 8; ++n) {
        const auto k = grid_wavevector(c.grid, {n, 0, 0});
        const auto p = eigenphases(mode_matrix(c, k));
        sectors.insert(sectors.end(), p.begin(), p.end());
    }
    std::sort(sectors.begin(), sectors.end());
    REQUIRE(full.size() == sectors.size());
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(std::abs(full[i] - sectors[i]) < 1e-12);
}

TEST_CASE("mode matrix at rest is the collide") {
    const SimConfig c = line(4, 0.5);
    const ComplexMatrix m = mode_matrix(c, {0, 0, 0});
    CHECK(algebra::unitarity_defect(m) < 1e-14);
    CHECK(std::abs(m(0, 0) - std::sqrt(1.0 - 0.25)) < 1e-15);
    CHECK(mode_matrix(c, {0, 0, 0}, Sector::phi).rows() == 8);
}

TEST_CASE("continuum dispersion") {
    CHECK(analytic_dispersion(3.0, 4.0) == 5.0);
    CHECK(analytic_dispersion(-2.0, 0.0) == 2.0);
}

TEST_CASE("path sum counts the admissible chains") {
    const SimConfig c = line(16, 0.3);
    CHECK(path_sum_kernel_1d(0, 1, 1, c).chains == 1);
    CHECK(path_sum_kernel_1d(0, 0, 1, c).chains == 0);
    CHECK(path_sum_kernel_1d(5, 5, 2, c).chains == 2);
    CHECK(path_sum_kernel_1d(3, 3, 4, c).chains == 6);
    CHECK(path_sum_kernel_1d(0, 15, 3, c).chains == 3);
    CHECK(path_sum_kernel_1d(0, 0, 0, c).kernel.isApprox(Mat4::Identity()));
}

TEST_CASE("path sum reproduces powers of the dense step") {
    const SimConfig c = line(16, 0.45);
    const DenseStep u = dense_psi_step(c, vacuum(c.grid, PayloadKind::fourvector));
    ComplexMatrix power = ComplexMatrix::Identity(u.dimension(), u.dimension());
    for (int N = 1; N <= 5; ++N) {
        power = u.matrix * power;
        for (int xb : {2, 3, 5, 15}) {
            const Mat4 ref = propagator_block(power, 3, xb);
            const Mat4 sum = path_sum_kernel_1d(3, xb, N, c).kernel;
            CHECK((ref - sum).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("massless path sum keeps chirality blocks apart") {
    const SimConfig c = line(16, 0.0);
    const PathKernel k = path_sum_kernel_1d(0, 3, 3, c);
    CHECK(k.chiral_block(ops::Chirality::left, ops::Chirality::right).isZero(1e-15));
    CHECK(k.chiral_block(ops::Chirality::right, ops::Chirality::left).isZero(1e-15));
}

TEST_CASE("oracle refuses what it cannot build") {
    SimConfig big = line(17, 0.1);
    CHECK_THROWS_AS(dense_psi_step(big, vacuum(big.grid, PayloadKind::fourvector)), DomainError);
    SimConfig c = line(16, 0.1);
    CHECK_THROWS_AS(dense_phi_step(big, vacuum(big.grid, PayloadKind::spinor4)), DomainError);
    CHECK_NOTHROW(dense_phi_step(c, vacuum(c.grid, PayloadKind::spinor4)));
    CHECK_THROWS_AS(path_sum_kernel_1d(0, 1, kMaxPathSteps + 1, c), DomainError);
    CHECK_THROWS_AS(path_sum_kernel_1d(0, 16, 1, c), DomainError);
    c.variant = ops::Variant::high_energy;
    CHECK_THROWS_AS(path_sum_kernel_1d(0, 1, 1, c), DomainError);
    SimConfig plane;
    plane.grid.dims = {4, 4, 1};
    CHECK_THROWS_AS(path_sum_kernel_1d(0, 1, 1, plane), DomainError);
    CHECK_THROWS_AS(propagator_block(ComplexMatrix::Identity(8, 8), 0, 2), DomainError);
}
