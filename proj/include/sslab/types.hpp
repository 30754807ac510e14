#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace sslab {

using Complex = std::complex<double>;
using Vec4 = Eigen::Vector4d;
using CVec4 = Eigen::Vector4cd;

inline constexpr double kPi = 3.14159265358979323846;
inline const Complex kI{0.0, 1.0};

// Lorentz form diag(+,+,+,-); x4 is the timelike axis.
template <typename A, typename B>
auto lorentz_dot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return a(0) * b(0) + a(1) * b(1) + a(2) * b(2) - a(3) * b(3);
}

// Hermitian pairing <a, conj(b)> under the Lorentz form.
template <typename A, typename B>
auto lorentz_hdot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return lorentz_dot(a, b.conjugate());
}

// A point of the Riemann sphere: either finite or the point at infinity.
struct SpherePoint {
    bool infinite = false;
    Complex z{0.0, 0.0};

    static SpherePoint at(Complex w) { return SpherePoint{false, w}; }
    static SpherePoint infinity() { return SpherePoint{true, {0.0, 0.0}}; }

    bool near(const SpherePoint& o, double tol) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return std::abs(z - o.z) <= tol * (1.0 + std::abs(z));
    }
    std::string str() const;
};

std::string format_complex(Complex c);

}  // namespace sslab
