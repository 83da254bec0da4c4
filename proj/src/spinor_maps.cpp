#include "qlg/spinor_maps.hpp"

#include "qlg/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace qlg {

Spinor4 fourvec_to_calA(const FourVector& a) {
    Spinor4 s;
    s << cplx{-a.x, a.y}, cplx{a.t + a.z, 0.0}, cplx{-a.t + a.z, 0.0}, cplx{a.x, a.y};
    return s;
}

double calA_image_defect(const Spinor4& s) {
    double d = std::abs(s(0).real() + s(3).real());
    d = std::max(d, std::abs(s(0).imag() - s(3).imag()));
    d = std::max(d, std::abs(s(1).imag()));
    d = std::max(d, std::abs(s(2).imag()));
    return d;
}

FourVector calA_to_fourvec(const Spinor4& s) {
    const double defect = calA_image_defect(s);
    if (defect > kImageTolerance) {
        std::ostringstream os;
        os << "calA_to_fourvec: spinor is not the image of a real 4-vector (max violation "
           << defect << ", tolerance " << kImageTolerance << ")";
        throw DomainError(os.str());
    }
    return calA_real_part(s);
}

Eigen::Matrix<cplx, 4, 1> calA_complex_inverse(const Spinor4& s) {
    Eigen::Matrix<cplx, 4, 1> v;
    v(0) = 0.5 * (s(1) - s(2));
    v(1) = 0.5 * (s(3) - s(0));
    v(2) = -0.5 * I * (s(0) + s(3));
    v(3) = 0.5 * (s(1) + s(2));
    return v;
}

FourVector calA_real_part(const Spinor4& s) {
    const auto v = calA_complex_inverse(s);
    return {v(0).real(), v(1).real(), v(2).real(), v(3).real()};
}

Spinor4 source_spinor_from_J(const FourVector& j) { return fourvec_to_calA(j); }

FourVector current_from_psi(const Spinor4& psi) {
    // gamma^0 gamma^i = -sigma_z (x) sigma_i: the L block enters with a minus sign.
    const cplx l1 = psi(0), l2 = psi(1), r1 = psi(2), r2 = psi(3);
    auto sx = [](cplx a, cplx b) { return 2.0 * (std::conj(a) * b).real(); };
    auto sy = [](cplx a, cplx b) { return 2.0 * (std::conj(a) * b).imag(); };
    auto sz = [](cplx a, cplx b) { return std::norm(a) - std::norm(b); };
    FourVector j;
    j.t = std::norm(l1) + std::norm(l2) + std::norm(r1) + std::norm(r2);
    j.x = -sx(l1, l2) + sx(r1, r2);
    j.y = -sy(l1, l2) + sy(r1, r2);
    j.z = -sz(l1, l2) + sz(r1, r2);
    return j;
}

ThetaMatrix theta_matrix(const Spinor4& psi, double rho_floor) {
    if (!(rho_floor > 0.0)) throw DomainError("theta_matrix: rho_floor must be > 0");
    const double rho = std::max(psi.squaredNorm(), rho_floor);
    const Spinor4 bar = (psi.adjoint() * algebra::gamma(0)).transpose();
    ThetaMatrix m = ThetaMatrix::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = mu + 1; nu < 4; ++nu) {
            const ComplexMatrix c = algebra::commutator(algebra::gamma(mu), algebra::gamma(nu));
            const cplx v = bar.transpose() * (c * psi);
            m(mu, nu) = v / rho;
            m(nu, mu) = -m(mu, nu);
        }
    }
    return m;
}

Spinor4 dual_spinor(const Spinor4& calF, double lambda_L) {
    if (!(lambda_L > 0.0)) throw DomainError("dual_spinor: lambda_L must be > 0");
    return -I * lambda_L * calF;
}

namespace {

void check_stencil_grid(const GridSpec& g, const char* what) {
    bool any = false;
    for (int d : g.dims) {
        if (d == 2) {
            std::ostringstream os;
            os << what << ": axis of length 2 has a degenerate central difference";
            throw DomainError(os.str());
        }
        if (d >= 3) any = true;
    }
    if (!any) {
        std::ostringstream os;
        os << what << ": grid has no axis long enough for a central difference";
        throw DomainError(os.str());
    }
}

cplx central_diff(const LatticeField& f, std::size_t site, Axis axis, int c, double spacing) {
    const GridSpec& g = f.spec();
    if (g.extent(axis) == 1) return {0.0, 0.0};
    return (f.at(g.neighbor(site, axis, 1), c) - f.at(g.neighbor(site, axis, -1), c)) /
           (2.0 * spacing);
}

// (1 (x) sigma.grad) on each 2-spinor block.
Spinor4 sigma_grad(const LatticeField& f, std::size_t s, double spacing) {
    std::array<std::array<cplx, 4>, 3> d{};
    for (Axis a : kAxes)
        for (int c = 0; c < 4; ++c)
            d[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] =
                central_diff(f, s, a, c, spacing);
    const auto& dx = d[0];
    const auto& dy = d[1];
    const auto& dz = d[2];
    Spinor4 out;
    for (int b = 0; b < 2; ++b) {
        const auto u = static_cast<std::size_t>(2 * b);
        const auto w = u + 1;
        out(static_cast<int>(u)) = dz[u] + dx[w] - I * dy[w];
        out(static_cast<int>(w)) = dx[u] + I * dy[u] - dz[w];
    }
    return out;
}

LatticeField image_field(const LatticeField& a) {
    LatticeField out(a.spec(), PayloadKind::spinor4);
    for (std::size_t s = 0; s < a.sites(); ++s) out.spinor4(s) = fourvec_to_calA(a.fourvec(s));
    return out;
}

}  // namespace

double central_derivative(const LatticeField& f, std::size_t site, Axis axis, int c,
                          double spacing) {
    return central_diff(f, site, axis, c, spacing).real();
}

bool supports_central_difference(const GridSpec& g) {
    bool any = false;
    for (int d : g.dims) {
        if (d == 2) return false;
        if (d >= 3) any = true;
    }
    return any;
}

LatticeField sigma_grad_apply(const LatticeField& field, double spacing) {
    if (field.kind() != PayloadKind::spinor4)
        throw DomainError("sigma_grad_apply: field must carry 4-spinors");
    if (!(spacing > 0.0)) throw DomainError("sigma_grad_apply: spacing must be > 0");
    LatticeField out(field.spec(), PayloadKind::spinor4);
    for (std::size_t s = 0; s < field.sites(); ++s) out.spinor4(s) = sigma_grad(field, s, spacing);
    return out;
}

LatticeField curl_operator_apply(const LatticeField& field, double spacing) {
    check_stencil_grid(field.spec(), "curl_operator_apply");
    return sigma_grad_apply(field, spacing);
}

LatticeField fourcurl_build_F(const LatticeField& a_field, const LatticeField& a_prev, double dt,
                              double spacing) {
    if (a_field.kind() != PayloadKind::fourvector || !a_field.compatible(a_prev))
        throw DomainError("fourcurl_build_F: both slices must be 4-vector fields on one grid");
    if (!(dt > 0.0)) throw DomainError("fourcurl_build_F: dt must be > 0");
    const LatticeField now = image_field(a_field);
    const LatticeField before = image_field(a_prev);
    LatticeField out = curl_operator_apply(now, spacing);
    for (std::size_t s = 0; s < out.sites(); ++s)
        out.spinor4(s) -= (now.spinor4(s) - before.spinor4(s)) / dt;
    return out;
}

LatticeField reversed_momentum_apply(const LatticeField& f, const LatticeField& f_prev, double dt,
                                     double spacing) {
    if (f.kind() != PayloadKind::spinor4 || !f.compatible(f_prev))
        throw DomainError("reversed_momentum_apply: both slices must be 4-spinor fields on one grid");
    if (!(dt > 0.0)) throw DomainError("reversed_momentum_apply: dt must be > 0");
    LatticeField out = curl_operator_apply(f, spacing);
    for (std::size_t s = 0; s < out.sites(); ++s)
        out.spinor4(s) = -out.spinor4(s) - (f.spinor4(s) - f_prev.spinor4(s)) / dt;
    return out;
}

EBSample extract_EB(const Spinor4& calF) {
    const cplx fx = 0.5 * (calF(3) - calF(0));
    const cplx fy = -0.5 * I * (calF(0) + calF(3));
    const cplx fz = 0.5 * (calF(1) + calF(2));
    EBSample out;
    out.E = Eigen::Vector3d(fx.real(), fy.real(), fz.real());
    out.B = Eigen::Vector3d(fx.imag(), fy.imag(), fz.imag());
    out.lorenz = (0.5 * (calF(2) - calF(1))).real();
    return out;
}

}  // namespace qlg
