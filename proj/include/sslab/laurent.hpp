#pragma once

#include <map>
#include <utility>
#include <vector>

#include "sslab/types.hpp"

namespace sslab {

// Finite Laurent polynomial sum_e c_e z^e. Zero coefficients are never stored.
class LaurentPoly {
public:
    using Map = std::map<int, Complex>;

    LaurentPoly() = default;
    explicit LaurentPoly(Map coeffs);

    static LaurentPoly constant(Complex c);
    static LaurentPoly monomial(int e, Complex c = 1.0);
    // Coefficients c0, c1, ... of an ordinary polynomial.
    static LaurentPoly from_dense(const std::vector<Complex>& c);

    const Map& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const;
    bool has_negative() const { return !c_.empty() && c_.begin()->first < 0; }
    bool has_positive() const { return !c_.empty() && c_.rbegin()->first > 0; }
    int min_exp() const;
    int max_exp() const;
    Complex coeff(int e) const;
    double max_abs() const;

    Complex operator()(Complex z) const;
    // Sum of |c_e| |z|^e, the natural scale for cancellation tests.
    double magnitude_at(Complex z) const;

    LaurentPoly derivative() const;
    LaurentPoly shifted(int k) const;   // multiply by z^k
    LaurentPoly reflected() const;      // p(1/w) as a Laurent polynomial in w
    LaurentPoly conj_coeffs() const;
    LaurentPoly without_constant() const;
    // Drops coefficients below rel * max_abs().
    LaurentPoly pruned(double rel) const;

    // Dense coefficient vector of a polynomial with nonnegative exponents.
    std::vector<Complex> dense() const;
    int degree() const;  // max exponent, 0 for the zero polynomial

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(Complex s);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, Complex s) { return a *= s; }
    friend LaurentPoly operator*(Complex s, LaurentPoly a) { return a *= s; }
    friend LaurentPoly operator-(LaurentPoly a) { return a *= -1.0; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

private:
    void insert(int e, Complex c);
    Map c_;
};

// Roots of a polynomial (nonnegative exponents) grouped by multiplicity.
// Exact zero roots come from the lowest exponent; the rest from the companion
// matrix, polished and clustered.
std::vector<std::pair<Complex, int>> root_clusters(const LaurentPoly& p);

// Quotient of p by (z - r), remainder dropped.
LaurentPoly deflate(const LaurentPoly& p, Complex r);

}  // namespace sslab
