#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qlg {

using cplx = std::complex<double>;

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;
using Spinor4 = Eigen::Matrix<cplx, 4, 1>;
using Spinor8 = Eigen::Matrix<cplx, 8, 1>;

inline constexpr cplx I{0.0, 1.0};

enum class Axis : int { x = 0, y = 1, z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

inline const char* axis_name(Axis a) {
    switch (a) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::z: return "z";
    }
    return "?";
}

// Real 4-tuple in (t, x, y, z) order; houses A^mu = (A0, A) and J^mu = (rho, J).
struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double& operator[](int mu) {
        switch (mu) {
            case 0: return t;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }
    double operator[](int mu) const { return const_cast<FourVector&>(*this)[mu]; }

    double spatial_norm() const { return std::sqrt(x * x + y * y + z * z); }

    friend bool operator==(const FourVector&, const FourVector&) = default;
};

// Precondition or invariant violation on a value passed in by the caller.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem failure; message carries the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qlg
