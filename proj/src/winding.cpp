#include "sslab/winding.hpp"

#include <cmath>

#include "sslab/errors.hpp"

namespace sslab {

namespace {

bool arg_sum(const CFun& F, Complex c, double r, int n, double& total) {
    total = 0.0;
    Complex first = F(c + r);
    Complex prev = first;
    bool fine = true;
    for (int j = 1; j <= n; ++j) {
        Complex cur = j == n ? first : F(c + std::polar(r, 2.0 * kPi * j / n));
        if (cur == Complex(0.0, 0.0) || !std::isfinite(cur.real()) || !std::isfinite(cur.imag()))
            throw NotAnInteger("winding circle passes through a zero or singularity");
        double d = std::arg(cur / prev);
        if (std::abs(d) > 0.5 * kPi) fine = false;
        total += d;
        prev = cur;
    }
    return fine;
}

}  // namespace

Winding winding_number(const CFun& F, Complex c, double r, const Settings& s, const CFun* Fz, const CFun* Fzbar) {
    int n = s.winding_nodes;
    double prev_total = 0.0;
    bool prev_fine = arg_sum(F, c, r, n, prev_total);
    for (;;) {
        int m = 2 * n;
        if (m > s.winding_max_nodes) throw NotAnInteger("winding did not stabilize");
        double total = 0.0;
        bool fine = arg_sum(F, c, r, m, total);
        long a = std::lround(prev_total / (2.0 * kPi));
        long b = std::lround(total / (2.0 * kPi));
        if (prev_fine && fine && a == b) {
            Winding w;
            w.value = static_cast<int>(b);
            w.nodes = m;
            w.continuous = total / (2.0 * kPi);
            if (Fz && Fzbar) {
                Complex acc = 0.0;
                for (int j = 0; j < m; ++j) {
                    Complex e = std::polar(1.0, 2.0 * kPi * j / m);
                    Complex z = c + r * e;
                    Complex dz = kI * r * e;
                    acc += ((*Fz)(z) * dz + (*Fzbar)(z) * std::conj(dz)) / F(z);
                }
                acc *= (2.0 * kPi / m) / (2.0 * kPi * kI);
                w.continuous = acc.real();
                if (std::abs(acc.real() - w.value) > 1e-6 || std::abs(acc.imag()) > 1e-6)
                    throw NotAnInteger("winding integral " + format_complex(acc) + " is not the integer " +
                                       std::to_string(w.value));
            }
            return w;
        }
        n = m;
        prev_total = total;
        prev_fine = fine;
    }
}

}  // namespace sslab
