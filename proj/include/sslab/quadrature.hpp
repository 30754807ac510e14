#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <type_traits>
#include <vector>

#include "sslab/errors.hpp"
#include "sslab/types.hpp"

namespace sslab {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

GaussRule gauss_legendre(int n);

inline double qnorm(Complex c) { return std::abs(c); }
inline double qnorm(double c) { return std::abs(c); }
inline double qnorm(const CVec4& v) { return v.norm(); }
inline double qnorm(const Vec4& v) { return v.norm(); }

template <typename T>
T qzero() {
    if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, Complex>)
        return T(0);
    else
        return T::Zero();
}

namespace detail {
// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                               0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                               0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                               0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                               0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                               0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                               0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T, typename F>
void gk15(const F& f, double a, double b, T& result, double& err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    T rk = fc * kWgk[7];
    T rg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[static_cast<size_t>(j)];
        T s = f(c - dx) + f(c + dx);
        rk = rk + s * kWgk[static_cast<size_t>(j)];
        if (j % 2 == 1) rg = rg + s * kWg[static_cast<size_t>(j / 2)];
    }
    result = rk * h;
    err = qnorm(T((rk - rg) * h));
}
}  // namespace detail

struct AdaptiveOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_depth = 40;
    int max_intervals = 20000;
};

// Adaptive Gauss-Kronrod integral of f over [a, b]; error estimate returned
// through err. Throws QuadratureError when the tolerance is not reached.
template <typename T, typename F>
T integrate_adaptive(const F& f, double a, double b, const AdaptiveOptions& opt = {}, double* err_out = nullptr) {
    struct Piece {
        double a, b;
        T val;
        double err;
        int depth;
    };
    std::vector<Piece> stack;
    T total = qzero<T>();
    double total_err = 0.0;
    {
        T v;
        double e;
        detail::gk15<T>(f, a, b, v, e);
        stack.push_back({a, b, v, e, 0});
    }
    // Accept pieces whose error is below their share of the tolerance.
    T rough = stack[0].val;
    double tol = std::max(opt.abs_tol, opt.rel_tol * qnorm(rough));
    int count = 0;
    while (!stack.empty()) {
        Piece p = stack.back();
        stack.pop_back();
        double share = tol * (p.b - p.a) / (b - a);
        if (p.err <= share || p.err <= 1e-15 * qnorm(p.val)) {
            total = total + p.val;
            total_err += p.err;
            continue;
        }
        if (p.depth >= opt.max_depth || ++count > opt.max_intervals)
            throw QuadratureError("adaptive quadrature did not converge");
        double m = 0.5 * (p.a + p.b);
        T v1, v2;
        double e1, e2;
        detail::gk15<T>(f, p.a, m, v1, e1);
        detail::gk15<T>(f, m, p.b, v2, e2);
        stack.push_back({p.a, m, v1, e1, p.depth + 1});
        stack.push_back({m, p.b, v2, e2, p.depth + 1});
    }
    if (err_out) *err_out = total_err;
    return total;
}

// Trapezoid rule for the contour integral of f(z) dz over the circle
// |z - c| = r, counterclockwise, n equally spaced nodes.
template <typename T, typename F>
T circle_integral(const F& f, Complex c, double r, int n) {
    T acc = qzero<T>();
    for (int j = 0; j < n; ++j) {
        Complex e = std::polar(1.0, 2.0 * kPi * j / n);
        acc = acc + f(c + r * e) * (kI * r * e);
    }
    return acc * (2.0 * kPi / n);
}

}  // namespace sslab
