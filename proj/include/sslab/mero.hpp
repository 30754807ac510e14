#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sslab/laurent.hpp"
#include "sslab/types.hpp"

namespace sslab {

// num/den with nonnegative exponents, common roots cancelled, den monic.
class RationalPart {
public:
    RationalPart();  // zero
    RationalPart(LaurentPoly num, LaurentPoly den);
    // Skips common-root cancellation; caller guarantees num, den coprime.
    static RationalPart reduced(LaurentPoly num, LaurentPoly den);
    static RationalPart constant(Complex c);

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    // Throws PoleError at roots of den.
    Complex operator()(Complex z) const;

    RationalPart derivative() const;
    RationalPart inverse() const;  // throws on zero

    friend RationalPart operator+(const RationalPart& a, const RationalPart& b);
    friend RationalPart operator-(const RationalPart& a, const RationalPart& b);
    friend RationalPart operator*(const RationalPart& a, const RationalPart& b);
    friend RationalPart operator*(const RationalPart& a, Complex s);
    friend bool operator==(const RationalPart& a, const RationalPart& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    // z^k as a rational part, k of either sign.
    static RationalPart power(int k, Complex c = 1.0);
    static RationalPart from_laurent(const LaurentPoly& p);

private:
    void normalize(bool cancel);
    void factor_den();
    LaurentPoly num_, den_;
    // den = prod (z - r)^m when factored is set; evaluates accurately near poles
    std::vector<std::pair<Complex, int>> den_roots_;
    bool factored_ = false;
};

// Sum of rat_i(z) * exp(expo_i(z)). Constant parts of expo are folded into
// rat, so a term is algebraic exactly when its expo is zero.
class MeroExpr {
public:
    struct Term {
        RationalPart rat;
        LaurentPoly expo;
    };

    MeroExpr() = default;  // zero
    MeroExpr(Complex c);   // NOLINT: constants convert implicitly
    MeroExpr(double c) : MeroExpr(Complex(c, 0.0)) {}
    explicit MeroExpr(RationalPart r);
    MeroExpr(RationalPart r, LaurentPoly expo);

    static MeroExpr z();
    static MeroExpr monomial(int k, Complex c = 1.0);
    static MeroExpr poly(const std::vector<Complex>& coeffs);
    static MeroExpr rational(const std::vector<Complex>& num, const std::vector<Complex>& den);
    static MeroExpr exp(const LaurentPoly& expo);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_algebraic() const;
    bool is_single_term() const { return terms_.size() <= 1; }
    bool is_constant() const;
    // Rational part of an algebraic expression (zero if empty).
    RationalPart rational_part() const;
    // True when some expo has negative (0) or positive (infinity) exponents.
    bool essential_at_zero() const;
    bool essential_at_infinity() const;

    Complex operator()(Complex z) const;
    // log of the value for a single term: log(rat(z)) + expo(z), computed
    // without forming exp(expo), so huge or tiny magnitudes stay finite.
    Complex log_eval(Complex z) const;
    // f'/f for a single term.
    Complex log_derivative(Complex z) const;

    MeroExpr derivative() const;

    MeroExpr& operator+=(const MeroExpr& o);
    friend MeroExpr operator+(MeroExpr a, const MeroExpr& b) { return a += b; }
    friend MeroExpr operator-(const MeroExpr& a) { return a * Complex(-1.0, 0.0); }
    friend MeroExpr operator-(MeroExpr a, const MeroExpr& b) { return a += -b; }
    friend MeroExpr operator*(const MeroExpr& a, const MeroExpr& b);
    friend MeroExpr operator*(const MeroExpr& a, Complex s);
    friend MeroExpr operator*(Complex s, const MeroExpr& a) { return a * s; }
    friend MeroExpr operator*(const MeroExpr& a, double s) { return a * Complex(s, 0.0); }
    friend MeroExpr operator*(double s, const MeroExpr& a) { return a * Complex(s, 0.0); }
    // Division needs an algebraic or single-term divisor.
    friend MeroExpr operator/(const MeroExpr& a, const MeroExpr& b);

private:
    void add_term(const RationalPart& r, const LaurentPoly& expo);
    std::vector<Term> terms_;
};

struct ZeroPole {
    SpherePoint point;
    int order = 0;  // > 0 zero, < 0 pole
};

struct Divisor {
    std::vector<ZeroPole> points;
    std::vector<SpherePoint> essential;

    // Order at p (0 when absent); zeros positive, poles negative.
    int order_at(const SpherePoint& p, double tol = 1e-8) const;
    std::vector<ZeroPole> zeros() const;
    std::vector<ZeroPole> poles() const;
};

using Mat2c = Eigen::Matrix2cd;

Complex eval(const MeroExpr& f, Complex z);
MeroExpr differentiate(const MeroExpr& f);
Divisor zeros_and_poles(const MeroExpr& f);
int degree(const MeroExpr& f);
// Order of f at p (zero positive, pole negative); p = infinity uses the
// function chart. Throws NotAlgebraic when f has an essential point at p.
int order_at(const MeroExpr& f, const SpherePoint& p);
Complex residue(const MeroExpr& f, Complex p);
Complex residue_at_radius(const MeroExpr& f, Complex p, double radius, int nodes = 512);
MeroExpr mobius(const MeroExpr& f, const Mat2c& A);
MeroExpr change_chart_to_infinity(const MeroExpr& f, bool as_form);
// Finite singular points of f: roots of every term's den, plus 0 when
// some expo has negative exponents.
std::vector<Complex> finite_singularities(const MeroExpr& f);

std::string to_string(const MeroExpr& f);
MeroExpr parse_mero(const std::string& text);
Complex parse_complex(const std::string& text);

}  // namespace sslab
