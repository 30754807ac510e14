#include "sslab/mero.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sslab/errors.hpp"

namespace sslab {

namespace {

constexpr double kPrune = 1e-14;
constexpr double kRootMatch = 1e-10;

LaurentPoly one() { return LaurentPoly::constant(1.0); }

}  // namespace

// ---------------------------------------------------------------- RationalPart

RationalPart::RationalPart() : num_(), den_(one()) {}

RationalPart::RationalPart(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize(true);
}

RationalPart RationalPart::reduced(LaurentPoly num, LaurentPoly den) {
    RationalPart r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.normalize(false);
    return r;
}

RationalPart RationalPart::constant(Complex c) { return RationalPart::reduced(LaurentPoly::constant(c), one()); }

RationalPart RationalPart::power(int k, Complex c) {
    if (k >= 0) return reduced(LaurentPoly::monomial(k, c), one());
    return reduced(LaurentPoly::constant(c), LaurentPoly::monomial(-k));
}

RationalPart RationalPart::from_laurent(const LaurentPoly& p) {
    int lo = std::min(0, p.min_exp());
    return RationalPart(p.shifted(-lo), LaurentPoly::monomial(-lo));
}

void RationalPart::normalize(bool cancel) {
    if (den_.is_zero()) throw PoleError("rational part with zero denominator");
    if (den_.has_negative() || num_.has_negative()) {
        int lo = std::min(num_.min_exp(), den_.min_exp());
        num_ = num_.shifted(-lo);
        den_ = den_.shifted(-lo);
    }
    num_ = num_.pruned(kPrune);
    den_ = den_.pruned(kPrune);
    if (num_.is_zero()) {
        den_ = one();
        return;
    }
    int k = std::min(num_.min_exp(), den_.min_exp());
    if (k != 0) {
        num_ = num_.shifted(-k);
        den_ = den_.shifted(-k);
    }
    if (cancel && num_.degree() > 0 && den_.degree() > 0) {
        auto rn = root_clusters(num_);
        auto rd = root_clusters(den_);
        for (auto& [a, ma] : rn) {
            if (a == Complex(0.0, 0.0)) continue;
            for (auto& [b, mb] : rd) {
                if (mb == 0 || b == Complex(0.0, 0.0)) continue;
                if (std::abs(a - b) <= kRootMatch * (1.0 + std::abs(a))) {
                    int c = std::min(ma, mb);
                    Complex r = 0.5 * (a + b);
                    for (int i = 0; i < c; ++i) {
                        num_ = deflate(num_, r);
                        den_ = deflate(den_, r);
                    }
                    ma -= c;
                    mb -= c;
                }
            }
        }
        num_ = num_.pruned(kPrune);
        den_ = den_.pruned(kPrune);
    }
    Complex lead = den_.coeff(den_.degree());
    if (lead != Complex(1.0, 0.0)) {
        num_ *= 1.0 / lead;
        den_ *= 1.0 / lead;
    }
    factor_den();
}

void RationalPart::factor_den() {
    factored_ = false;
    den_roots_.clear();
    if (den_.degree() <= 0) return;
    auto roots = root_clusters(den_);
    // accept the factorization only if it reproduces den at a few probe points
    for (Complex probe : {Complex(1.3, 0.7), Complex(-0.6, 1.9), Complex(2.1, -1.4)}) {
        double scale = 1.0;
        for (auto& [r, m] : roots) scale = std::max(scale, std::abs(r));
        Complex z = probe * scale, prod = 1.0;
        for (auto& [r, m] : roots)
            for (int i = 0; i < m; ++i) prod *= z - r;
        if (std::abs(prod - den_(z)) > 1e-10 * den_.magnitude_at(z)) return;
    }
    den_roots_ = std::move(roots);
    factored_ = true;
}

Complex RationalPart::operator()(Complex z) const {
    if (factored_) {
        Complex d = 1.0;
        for (auto& [r, m] : den_roots_) {
            Complex f = z - r;
            if (std::abs(f) <= 1e-15 * (1.0 + std::abs(r))) throw PoleError("pole at z = " + format_complex(z));
            for (int i = 0; i < m; ++i) d *= f;
        }
        return num_(z) / d;
    }
    Complex d = den_(z);
    if (d == Complex(0.0, 0.0) || std::abs(d) <= 1e-15 * den_.magnitude_at(z))
        throw PoleError("pole at z = " + format_complex(z));
    return num_(z) / d;
}

RationalPart RationalPart::derivative() const {
    if (num_.is_zero() || is_constant()) return RationalPart();
    if (den_.is_constant()) return reduced(num_.derivative() * (1.0 / den_.coeff(0)), one());
    // D = prod (z-r_i)^{m_i}, S = prod (z-r_i), T = S * sum m_i/(z-r_i):
    // (N/D)' = (N' S - N T) / (D S), already in lowest terms.
    auto roots = root_clusters(den_);
    LaurentPoly S = one(), T;
    for (size_t i = 0; i < roots.size(); ++i) {
        LaurentPoly lin = LaurentPoly::from_dense({-roots[i].first, 1.0});
        LaurentPoly prod = LaurentPoly::constant(static_cast<double>(roots[i].second));
        for (size_t j = 0; j < roots.size(); ++j)
            if (j != i) prod = prod * LaurentPoly::from_dense({-roots[j].first, 1.0});
        T += prod;
        S = S * lin;
    }
    return reduced(num_.derivative() * S - num_ * T, den_ * S);
}

RationalPart RationalPart::inverse() const {
    if (num_.is_zero()) throw PoleError("inverse of zero");
    return RationalPart::reduced(den_, num_);
}

RationalPart operator+(const RationalPart& a, const RationalPart& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RationalPart(a.num_ + b.num_, a.den_);
    return RationalPart(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalPart operator-(const RationalPart& a, const RationalPart& b) { return a + b * Complex(-1.0, 0.0); }

RationalPart operator*(const RationalPart& a, const RationalPart& b) {
    if (a.is_zero() || b.is_zero()) return RationalPart();
    if (a.den_.is_constant() && b.den_.is_constant())
        return RationalPart::reduced(a.num_ * b.num_, a.den_ * b.den_);
    return RationalPart(a.num_ * b.num_, a.den_ * b.den_);
}

RationalPart operator*(const RationalPart& a, Complex s) {
    if (s == Complex(0.0, 0.0)) return RationalPart();
    RationalPart r = a;
    r.num_ *= s;
    return r;
}

// ---------------------------------------------------------------- MeroExpr

MeroExpr::MeroExpr(Complex c) {
    if (c != Complex(0.0, 0.0)) add_term(RationalPart::constant(c), LaurentPoly());
}

MeroExpr::MeroExpr(RationalPart r) { add_term(r, LaurentPoly()); }

MeroExpr::MeroExpr(RationalPart r, LaurentPoly expo) { add_term(r, expo); }

MeroExpr MeroExpr::z() { return monomial(1); }

MeroExpr MeroExpr::monomial(int k, Complex c) { return MeroExpr(RationalPart::power(k, c)); }

MeroExpr MeroExpr::poly(const std::vector<Complex>& coeffs) {
    return MeroExpr(RationalPart::reduced(LaurentPoly::from_dense(coeffs), LaurentPoly::constant(1.0)));
}

MeroExpr MeroExpr::rational(const std::vector<Complex>& num, const std::vector<Complex>& den) {
    return MeroExpr(RationalPart(LaurentPoly::from_dense(num), LaurentPoly::from_dense(den)));
}

MeroExpr MeroExpr::exp(const LaurentPoly& expo) { return MeroExpr(RationalPart::constant(1.0), expo); }

void MeroExpr::add_term(const RationalPart& r0, const LaurentPoly& expo0) {
    if (r0.is_zero()) return;
    RationalPart r = r0;
    LaurentPoly expo = expo0;
    Complex c0 = expo.coeff(0);
    if (c0 != Complex(0.0, 0.0)) {
        r = r * std::exp(c0);
        expo = expo.without_constant();
    }
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->expo == expo) {
            RationalPart s = it->rat + r;
            if (s.is_zero())
                terms_.erase(it);
            else
                it->rat = s;
            return;
        }
    }
    Term t{r, expo};
    auto pos = std::upper_bound(terms_.begin(), terms_.end(), t,
                                [](const Term& a, const Term& b) { return a.expo < b.expo; });
    terms_.insert(pos, t);
}

bool MeroExpr::is_algebraic() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.expo.is_zero(); });
}

bool MeroExpr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].expo.is_zero() && terms_[0].rat.is_constant());
}

RationalPart MeroExpr::rational_part() const {
    if (!is_algebraic()) throw NotAlgebraic("expression has exponential factors");
    return terms_.empty() ? RationalPart() : terms_[0].rat;
}

bool MeroExpr::essential_at_zero() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.expo.has_negative(); });
}

bool MeroExpr::essential_at_infinity() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.expo.has_positive(); });
}

Complex MeroExpr::operator()(Complex z) const {
    Complex acc = 0.0;
    for (auto& t : terms_) {
        if (t.expo.is_zero()) {
            acc += t.rat(z);
            continue;
        }
        if (z == Complex(0.0, 0.0) && t.expo.has_negative()) throw EssentialPointError("essential point at z = 0");
        acc += t.rat(z) * std::exp(t.expo(z));
    }
    return acc;
}

Complex MeroExpr::log_eval(Complex z) const {
    if (terms_.size() != 1) throw UnsupportedExpr("log_eval needs a single term");
    const Term& t = terms_[0];
    if (z == Complex(0.0, 0.0) && t.expo.has_negative()) throw EssentialPointError("essential point at z = 0");
    Complex d = t.rat.den()(z);
    if (d == Complex(0.0, 0.0)) throw PoleError("pole at z = " + format_complex(z));
    return std::log(t.rat.num()(z)) - std::log(d) + t.expo(z);
}

Complex MeroExpr::log_derivative(Complex z) const {
    if (terms_.size() != 1) throw UnsupportedExpr("log_derivative needs a single term");
    const Term& t = terms_[0];
    const auto& N = t.rat.num();
    const auto& D = t.rat.den();
    return N.derivative()(z) / N(z) - D.derivative()(z) / D(z) + t.expo.derivative()(z);
}

MeroExpr MeroExpr::derivative() const {
    MeroExpr out;
    for (auto& t : terms_) {
        RationalPart d = t.rat.derivative();
        if (!t.expo.is_zero()) d = d + t.rat * RationalPart::from_laurent(t.expo.derivative());
        out.add_term(d, t.expo);
    }
    return out;
}

MeroExpr& MeroExpr::operator+=(const MeroExpr& o) {
    for (auto& t : o.terms_) add_term(t.rat, t.expo);
    return *this;
}

MeroExpr operator*(const MeroExpr& a, const MeroExpr& b) {
    MeroExpr out;
    for (auto& s : a.terms_)
        for (auto& t : b.terms_) out.add_term(s.rat * t.rat, s.expo + t.expo);
    return out;
}

MeroExpr operator*(const MeroExpr& a, Complex s) {
    MeroExpr out;
    for (auto& t : a.terms_) out.add_term(t.rat * s, t.expo);
    return out;
}

MeroExpr operator/(const MeroExpr& a, const MeroExpr& b) {
    if (b.is_zero()) throw PoleError("division by the zero expression");
    if (b.terms_.size() != 1) throw UnsupportedExpr("division by a multi-term transcendental expression");
    const auto& t = b.terms_[0];
    return a * MeroExpr(t.rat.inverse(), -t.expo);
}

// ---------------------------------------------------------------- Divisor

int Divisor::order_at(const SpherePoint& p, double tol) const {
    for (auto& zp : points)
        if (zp.point.near(p, tol)) return zp.order;
    return 0;
}

std::vector<ZeroPole> Divisor::zeros() const {
    std::vector<ZeroPole> v;
    for (auto& zp : points)
        if (zp.order > 0) v.push_back(zp);
    return v;
}

std::vector<ZeroPole> Divisor::poles() const {
    std::vector<ZeroPole> v;
    for (auto& zp : points)
        if (zp.order < 0) v.push_back(zp);
    return v;
}

// ---------------------------------------------------------------- operations

Complex eval(const MeroExpr& f, Complex z) { return f(z); }

MeroExpr differentiate(const MeroExpr& f) { return f.derivative(); }

Divisor zeros_and_poles(const MeroExpr& f) {
    if (f.is_zero()) throw UnsupportedExpr("the zero expression has no divisor");
    if (!f.is_single_term()) throw UnsupportedExpr("multi-term transcendental expression");
    const auto& t = f.terms()[0];
    Divisor d;
    bool ess0 = t.expo.has_negative();
    bool essInf = t.expo.has_positive();
    for (auto& [r, m] : root_clusters(t.rat.num()))
        if (!(ess0 && r == Complex(0.0, 0.0))) d.points.push_back({SpherePoint::at(r), m});
    for (auto& [r, m] : root_clusters(t.rat.den()))
        if (!(ess0 && r == Complex(0.0, 0.0))) d.points.push_back({SpherePoint::at(r), -m});
    if (ess0) d.essential.push_back(SpherePoint::at(0.0));
    if (essInf)
        d.essential.push_back(SpherePoint::infinity());
    else if (t.expo.is_zero()) {
        int k = t.rat.den().degree() - t.rat.num().degree();
        if (k != 0) d.points.push_back({SpherePoint::infinity(), k});
    }
    return d;
}

int degree(const MeroExpr& f) {
    if (!f.is_algebraic()) throw NotAlgebraic("degree of a transcendental expression");
    if (f.is_zero()) return 0;
    RationalPart r = f.rational_part();
    return std::max(r.num().degree(), r.den().degree());
}

int order_at(const MeroExpr& f, const SpherePoint& p) {
    if (f.is_zero()) throw UnsupportedExpr("order of the zero expression");
    if (!f.is_single_term()) throw UnsupportedExpr("multi-term transcendental expression");
    const auto& t = f.terms()[0];
    if (p.infinite) {
        if (t.expo.has_positive()) throw NotAlgebraic("essential point at infinity");
        return t.rat.den().degree() - t.rat.num().degree();
    }
    if (p.z == Complex(0.0, 0.0) && t.expo.has_negative()) throw NotAlgebraic("essential point at 0");
    auto mult = [&](const LaurentPoly& q) {
        if (p.z == Complex(0.0, 0.0)) return q.min_exp();
        for (auto& [r, m] : root_clusters(q))
            if (std::abs(r - p.z) <= 1e-8 * (1.0 + std::abs(p.z))) return m;
        return 0;
    };
    return mult(t.rat.num()) - mult(t.rat.den());
}

std::vector<Complex> finite_singularities(const MeroExpr& f) {
    std::vector<Complex> out;
    auto add = [&](Complex s) {
        for (auto& o : out)
            if (std::abs(o - s) <= 1e-12 * (1.0 + std::abs(s))) return;
        out.push_back(s);
    };
    for (auto& t : f.terms()) {
        for (auto& [r, m] : root_clusters(t.rat.den())) add(r);
        if (t.expo.has_negative()) add(0.0);
    }
    return out;
}

Complex residue_at_radius(const MeroExpr& f, Complex p, double radius, int nodes) {
    for (Complex s : finite_singularities(f)) {
        double d = std::abs(s - p);
        if (d > 1e-12 * (1.0 + std::abs(p)) && d <= radius * (1.0 + 1e-12))
            throw NotIsolated("singularity " + format_complex(s) + " inside the residue circle");
    }
    Complex acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        Complex e = std::polar(1.0, 2.0 * kPi * j / nodes);
        acc += f(p + radius * e) * e;
    }
    return acc * (radius / nodes);
}

Complex residue(const MeroExpr& f, Complex p) {
    if (p == Complex(0.0, 0.0) && f.essential_at_zero()) throw EssentialPointError("residue at an essential point");
    double d = std::numeric_limits<double>::infinity();
    for (Complex s : finite_singularities(f)) {
        double e = std::abs(s - p);
        if (e > 1e-12 * (1.0 + std::abs(p))) d = std::min(d, e);
    }
    double r = std::min(0.5, 0.4 * d);
    Complex r1 = residue_at_radius(f, p, r);
    Complex r2 = residue_at_radius(f, p, 0.5 * r);
    if (std::abs(r1 - r2) > 1e-9 * std::max(1.0, std::abs(r1)))
        throw NonConvergent("residue radii disagree: " + format_complex(r1) + " vs " + format_complex(r2));
    return r1;
}

MeroExpr mobius(const MeroExpr& f, const Mat2c& A) {
    if (!f.is_algebraic()) throw NotAlgebraic("Mobius transform of a transcendental expression");
    RationalPart r = f.rational_part();
    const LaurentPoly& N = r.num();
    const LaurentPoly& D = r.den();
    LaurentPoly num = A(0, 0) * N + A(0, 1) * D;
    LaurentPoly den = A(1, 0) * N + A(1, 1) * D;
    if (den.pruned(1e-14).is_zero()) throw PoleError("Mobius image is identically infinite");
    return MeroExpr(RationalPart(num, den));
}

MeroExpr change_chart_to_infinity(const MeroExpr& f, bool as_form) {
    MeroExpr out;
    for (auto& t : f.terms()) {
        const LaurentPoly& N = t.rat.num();
        const LaurentPoly& D = t.rat.den();
        int n = N.degree(), m = D.degree();
        LaurentPoly rn = N.reflected().shifted(n);
        LaurentPoly rd = D.reflected().shifted(m);
        int k = m - n;
        Complex c = 1.0;
        if (as_form) {
            k -= 2;
            c = -1.0;
        }
        RationalPart r = k >= 0 ? RationalPart(rn.shifted(k) * c, rd) : RationalPart(rn * c, rd.shifted(-k));
        out += MeroExpr(r, t.expo.reflected());
    }
    return out;
}

}  // namespace sslab
