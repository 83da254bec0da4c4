#include "qlg/lattice.hpp"

#include <numbers>
#include <sstream>

namespace qlg {

std::size_t GridSpec::neighbor(std::size_t site, Axis axis, int offset) const {
    auto c = coords(site);
    const auto a = static_cast<std::size_t>(axis);
    const int n = dims[a];
    int v = (c[a] + offset) % n;
    if (v < 0) v += n;
    c[a] = v;
    return index(c[0], c[1], c[2]);
}

void GridSpec::validate() const {
    for (int d : dims)
        if (d < 1) throw DomainError("grid dims must all be >= 1");
    if (!(spacing > 0.0) || !(timestep > 0.0))
        throw DomainError("grid spacing and timestep must be > 0");
}

const char* payload_name(PayloadKind k) {
    switch (k) {
        case PayloadKind::spinor4: return "spinor4";
        case PayloadKind::spinor8: return "spinor8";
        case PayloadKind::fourvector: return "fourvector";
    }
    return "?";
}

LatticeField::LatticeField(GridSpec spec, PayloadKind kind)
    : spec_(spec), kind_(kind), comps_(components(kind)) {
    spec_.validate();
    data_.assign(spec_.sites() * static_cast<std::size_t>(comps_), cplx{0.0, 0.0});
}

Eigen::Map<Spinor4> LatticeField::spinor4(std::size_t site) {
    return Eigen::Map<Spinor4>(data_.data() + site * static_cast<std::size_t>(comps_));
}
Eigen::Map<const Spinor4> LatticeField::spinor4(std::size_t site) const {
    return Eigen::Map<const Spinor4>(data_.data() + site * static_cast<std::size_t>(comps_));
}
Eigen::Map<Spinor8> LatticeField::spinor8(std::size_t site) {
    return Eigen::Map<Spinor8>(data_.data() + site * static_cast<std::size_t>(comps_));
}
Eigen::Map<const Spinor8> LatticeField::spinor8(std::size_t site) const {
    return Eigen::Map<const Spinor8>(data_.data() + site * static_cast<std::size_t>(comps_));
}

FourVector LatticeField::fourvec(std::size_t site) const {
    return {at(site, 0).real(), at(site, 1).real(), at(site, 2).real(), at(site, 3).real()};
}

void LatticeField::set_fourvec(std::size_t site, const FourVector& v) {
    for (int mu = 0; mu < 4; ++mu) at(site, mu) = cplx{v[mu], 0.0};
}

void LatticeField::fill_zero() { std::fill(data_.begin(), data_.end(), cplx{0.0, 0.0}); }

LatticeField shift_masked(const LatticeField& field, Axis axis, std::span<const int> signs,
                          int steps) {
    if (static_cast<int>(signs.size()) != field.comps()) {
        std::ostringstream os;
        os << "shift_masked: mask has " << signs.size() << " entries, payload has "
           << field.comps() << " components";
        throw DomainError(os.str());
    }
    for (int s : signs)
        if (s != 1 && s != -1) throw DomainError("shift_masked: mask entries must be +1 or -1");

    LatticeField out(field.spec(), field.kind());
    const GridSpec& g = field.spec();
    const int n = g.extent(axis);
    const int eff = ((steps % n) + n) % n;
    if (eff == 0) return field;

    const std::size_t nsites = g.sites();
    for (std::size_t s = 0; s < nsites; ++s) {
        const std::size_t up = g.neighbor(s, axis, eff);
        const std::size_t down = g.neighbor(s, axis, -eff);
        for (int c = 0; c < field.comps(); ++c)
            out.at(s, c) = field.at(signs[static_cast<std::size_t>(c)] > 0 ? up : down, c);
    }
    return out;
}

std::array<double, 3> grid_wavevector(const GridSpec& spec, const std::array<int, 3>& n) {
    std::array<double, 3> k{};
    for (std::size_t a = 0; a < 3; ++a)
        k[a] = 2.0 * std::numbers::pi * n[a] / (spec.dims[a] * spec.spacing);
    return k;
}

namespace {

void check_pattern(PayloadKind kind, const ComplexVector& pattern) {
    if (pattern.size() != components(kind)) {
        std::ostringstream os;
        os << "pattern has " << pattern.size() << " entries, payload " << payload_name(kind)
           << " needs " << components(kind);
        throw DomainError(os.str());
    }
}

void check_commensurate(const GridSpec& spec, const std::array<double, 3>& k) {
    for (std::size_t a = 0; a < 3; ++a) {
        const double n = k[a] * spec.dims[a] * spec.spacing / (2.0 * std::numbers::pi);
        if (std::abs(n - std::round(n)) > 1e-9) {
            std::ostringstream os;
            os << "wave vector component " << a << " = " << k[a]
               << " is not an integer multiple of 2 pi / (L ell)";
            throw DomainError(os.str());
        }
    }
}

}  // namespace

LatticeField init_plane_wave(const GridSpec& spec, PayloadKind kind, const std::array<double, 3>& k,
                             const ComplexVector& pattern) {
    check_pattern(kind, pattern);
    check_commensurate(spec, k);
    LatticeField f(spec, kind);
    // Phases use the integer mode number so the field is exactly periodic.
    std::array<double, 3> n{};
    for (std::size_t a = 0; a < 3; ++a)
        n[a] = std::round(k[a] * spec.dims[a] * spec.spacing / (2.0 * std::numbers::pi));
    for (std::size_t s = 0; s < f.sites(); ++s) {
        const auto c = spec.coords(s);
        double turns = 0.0;
        for (std::size_t a = 0; a < 3; ++a) {
            const long long m = static_cast<long long>(n[a]) * c[a];
            const long long wrapped = ((m % spec.dims[a]) + spec.dims[a]) % spec.dims[a];
            turns += static_cast<double>(wrapped) / spec.dims[a];
        }
        const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * turns);
        for (int comp = 0; comp < f.comps(); ++comp) f.at(s, comp) = pattern(comp) * phase;
    }
    return f;
}

LatticeField init_gaussian(const GridSpec& spec, PayloadKind kind,
                           const std::array<double, 3>& center, double sigma,
                           const std::array<double, 3>& k, const ComplexVector& pattern) {
    check_pattern(kind, pattern);
    if (!(sigma > 0.0)) throw DomainError("init_gaussian: sigma must be > 0");
    LatticeField f(spec, kind);
    for (std::size_t s = 0; s < f.sites(); ++s) {
        const auto c = spec.coords(s);
        double r2 = 0.0;
        double kx = 0.0;
        for (std::size_t a = 0; a < 3; ++a) {
            if (spec.dims[a] == 1) continue;
            double d = c[a] - center[a];
            const double len = spec.dims[a];
            d -= len * std::round(d / len);
            r2 += d * d;
            kx += k[a] * c[a] * spec.spacing;
        }
        const cplx amp = std::exp(-r2 / (2.0 * sigma * sigma)) * std::polar(1.0, kx);
        for (int comp = 0; comp < f.comps(); ++comp) f.at(s, comp) = pattern(comp) * amp;
    }
    return f;
}

LatticeField vacuum(const GridSpec& spec, PayloadKind kind) { return LatticeField(spec, kind); }

namespace {

template <typename T>
T pairwise_impl(const T* v, std::size_t n) {
    if (n <= 8) {
        T acc{};
        for (std::size_t i = 0; i < n; ++i) acc += v[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_impl(v, half) + pairwise_impl(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    return pairwise_impl(values.data(), values.size());
}

cplx pairwise_sum(std::span<const cplx> values) {
    return pairwise_impl(values.data(), values.size());
}

double norm2(const LatticeField& f) {
    std::vector<double> sq(f.data().size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::norm(f.data()[i]);
    return pairwise_sum(sq);
}

cplx inner(const LatticeField& f, const LatticeField& g) {
    if (!f.compatible(g)) throw DomainError("inner: fields differ in grid or payload kind");
    std::vector<cplx> prod(f.data().size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = std::conj(f.data()[i]) * g.data()[i];
    return pairwise_sum(prod);
}

}  // namespace qlg
