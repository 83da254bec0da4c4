#pragma once

// Periodic lattice storage. Sites are laid out x-fastest; each site holds its
// components contiguously, so a field is one dense site-major array.

#include "qlg/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qlg {

struct GridSpec {
    std::array<int, 3> dims{1, 1, 1};
    double spacing = 1.0;   // ell
    double timestep = 1.0;  // tau

    std::size_t sites() const {
        return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
               static_cast<std::size_t>(dims[2]);
    }
    int extent(Axis a) const { return dims[static_cast<std::size_t>(a)]; }

    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(y) +
                    static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(z));
    }
    std::array<int, 3> coords(std::size_t site) const {
        const auto lx = static_cast<std::size_t>(dims[0]);
        const auto ly = static_cast<std::size_t>(dims[1]);
        return {static_cast<int>(site % lx), static_cast<int>((site / lx) % ly),
                static_cast<int>(site / (lx * ly))};
    }
    /// Site reached from `site` by `offset` steps along `axis`, with periodic wrap.
    std::size_t neighbor(std::size_t site, Axis axis, int offset) const;

    /// Throws DomainError unless dims >= 1 and spacing, timestep > 0.
    void validate() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

enum class PayloadKind : int { spinor4 = 0, spinor8 = 1, fourvector = 2 };

constexpr int components(PayloadKind k) { return k == PayloadKind::spinor8 ? 8 : 4; }
const char* payload_name(PayloadKind k);

class LatticeField {
public:
    LatticeField() = default;
    LatticeField(GridSpec spec, PayloadKind kind);

    const GridSpec& spec() const { return spec_; }
    PayloadKind kind() const { return kind_; }
    int comps() const { return comps_; }
    std::size_t sites() const { return spec_.sites(); }

    std::span<cplx> data() { return data_; }
    std::span<const cplx> data() const { return data_; }

    cplx& at(std::size_t site, int c) { return data_[site * static_cast<std::size_t>(comps_) + static_cast<std::size_t>(c)]; }
    cplx at(std::size_t site, int c) const { return data_[site * static_cast<std::size_t>(comps_) + static_cast<std::size_t>(c)]; }

    Eigen::Map<Spinor4> spinor4(std::size_t site);
    Eigen::Map<const Spinor4> spinor4(std::size_t site) const;
    Eigen::Map<Spinor8> spinor8(std::size_t site);
    Eigen::Map<const Spinor8> spinor8(std::size_t site) const;

    /// FourVector payloads store real values in the real part of each slot.
    FourVector fourvec(std::size_t site) const;
    void set_fourvec(std::size_t site, const FourVector& v);

    /// True if spec and payload kind agree.
    bool compatible(const LatticeField& other) const {
        return spec_ == other.spec_ && kind_ == other.kind_;
    }

    void fill_zero();

    friend bool operator==(const LatticeField&, const LatticeField&) = default;

private:
    GridSpec spec_{};
    PayloadKind kind_ = PayloadKind::spinor4;
    int comps_ = 4;
    std::vector<cplx> data_;
};

/// New field with each component c gathered from site + signs[c] * steps along
/// `axis` (periodic). A pure permutation of amplitudes.
LatticeField shift_masked(const LatticeField& field, Axis axis, std::span<const int> signs,
                          int steps = 1);

/// Integer grid mode numbers -> wave vector 2 pi n / (L ell) per axis.
std::array<double, 3> grid_wavevector(const GridSpec& spec, const std::array<int, 3>& n);

/// pattern * exp(i k.x); k must be commensurate with the periodic box.
LatticeField init_plane_wave(const GridSpec& spec, PayloadKind kind, const std::array<double, 3>& k,
                             const ComplexVector& pattern);

/// Gaussian envelope exp(-|x - center|^2 / (2 sigma^2)) * pattern * exp(i k.x), using the
/// minimum-image distance on the periodic box. sigma and center are in sites.
LatticeField init_gaussian(const GridSpec& spec, PayloadKind kind,
                           const std::array<double, 3>& center, double sigma,
                           const std::array<double, 3>& k, const ComplexVector& pattern);

LatticeField vacuum(const GridSpec& spec, PayloadKind kind);

/// Sum over sites and components of |value|^2, accumulated pairwise.
double norm2(const LatticeField& f);

/// sum conj(f) g; throws DomainError on spec/kind mismatch.
cplx inner(const LatticeField& f, const LatticeField& g);

/// Fixed-shape binary-tree summation; the result does not depend on thread count.
double pairwise_sum(std::span<const double> values);
cplx pairwise_sum(std::span<const cplx> values);

}  // namespace qlg
