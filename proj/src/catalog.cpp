#include "sslab/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "sslab/errors.hpp"

namespace sslab {

// ---------------------------------------------------------------- params

namespace {

std::string fmt_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

Params& Params::set(const std::string& key, const std::string& value) {
    items_[key] = value;
    return *this;
}
Params& Params::set(const std::string& key, double value) { return set(key, fmt_real(value)); }
Params& Params::set(const std::string& key, Complex value) {
    if (value.imag() == 0.0) return set(key, value.real());
    return set(key, "(" + fmt_real(value.real()) + "," + fmt_real(value.imag()) + ")");
}
Params& Params::set(const std::string& key, int value) { return set(key, std::to_string(value)); }
Params& Params::set(const std::string& key, bool value) { return set(key, std::string(value ? "true" : "false")); }

Params& Params::parse_assignment(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || trim(text.substr(0, eq)).empty())
        throw ParamError("parameter must look like key=value: \"" + text + "\"");
    return set(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
}

int Params::get_int(const std::string& key, int fallback) const {
    auto it = items_.find(key);
    if (it == items_.end()) return fallback;
    try {
        size_t used = 0;
        int v = std::stoi(it->second, &used);
        if (used == it->second.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParamError("parameter " + key + " must be an integer, got \"" + it->second + "\"");
}

Complex Params::get_complex(const std::string& key, Complex fallback) const {
    auto it = items_.find(key);
    if (it == items_.end()) return fallback;
    try {
        return parse_complex(it->second);
    } catch (const ParseError&) {
        throw ParamError("parameter " + key + " must be a number, got \"" + it->second + "\"");
    }
}

double Params::get_real(const std::string& key, double fallback) const {
    Complex v = get_complex(key, fallback);
    if (v.imag() != 0.0) throw ParamError("parameter " + key + " must be real");
    return v.real();
}

bool Params::get_bool(const std::string& key, bool fallback) const {
    auto it = items_.find(key);
    if (it == items_.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw ParamError("parameter " + key + " must be true or false");
}

std::string Params::get_string(const std::string& key, const std::string& fallback) const {
    auto it = items_.find(key);
    return it == items_.end() ? fallback : it->second;
}

std::string Params::str() const {
    std::string out;
    for (const auto& [k, v] : items_) out += (out.empty() ? "" : " ") + k + "=" + v;
    return out;
}

// ---------------------------------------------------------------- helpers

namespace {

const SpherePoint kZero = SpherePoint::at(0.0);
const SpherePoint kInf = SpherePoint::infinity();
const PuncturedSphere kPlane{{kInf}};
const PuncturedSphere kPunctured{{kZero, kInf}};

MeroExpr z() { return MeroExpr::z(); }
MeroExpr zpow(int k, Complex c = 1.0) { return MeroExpr::monomial(k, c); }
MeroExpr expz(double a) { return MeroExpr::exp(LaurentPoly::monomial(1, a)); }

void require(bool ok, const std::string& what) {
    if (!ok) throw ParamError(what);
}

std::string cfmt(Complex c) { return format_complex(c); }

ExpectedEnd end_at(SpherePoint p, EndKind kind, std::optional<int> index = std::nullopt,
                   std::optional<int> d = std::nullopt, std::optional<int> d_tilde = std::nullopt) {
    return ExpectedEnd{p, kind, index, d, d_tilde};
}

// Total curvature of an algebraic surface with only regular ends: -4 pi deg phi.
Expected algebraic_regular(int deg_phi, const std::string& citation) {
    Expected e;
    e.K_total = -4.0 * kPi * deg_phi;
    e.Kperp_total = 0.0;
    e.citation = citation;
    return e;
}

}  // namespace

// ---------------------------------------------------------------- constructors

CatalogEntry catenoid(double t, double s, bool allow_bad) {
    bool in_range = -1.0 < t && t < 1.0;
    require(in_range || (allow_bad && std::abs(t) == 1.0), "catenoid requires -1 < t < 1 (got t = " + fmt_real(t) + ")");
    require(s != 0.0, "catenoid requires s != 0");
    WeierstrassData d(z() + t, MeroExpr::rational({-1.0}, {-t, 1.0}), MeroExpr::rational({-t * s, s}, {0.0, 0.0, 1.0}),
                      kPunctured, "catenoid");
    Params p;
    p.set("t", t).set("s", s);
    if (allow_bad) p.set("allow_bad", true);
    Expected e;
    e.citation = "generalized catenoid: regular ends, embedded, total curvature -4pi";
    if (in_range) {
        e = algebraic_regular(1, e.citation);
        e.periods_pass = true;
        e.locus_empty = true;
        e.ends = {end_at(kZero, EndKind::Regular), end_at(kInf, EndKind::Regular)};
        e.completeness = {{kZero, true}, {kInf, true}};
        e.embedded = true;
        e.intersection_clusters = 0;
        if (t == 0.0) e.notes = "t = 0 is the classical catenoid in R^3";
    } else {
        e.citation = "generalized catenoid at the boundary t = +-1: bad singular end";
        e.ends = {end_at(kZero, EndKind::BadSingular)};
        e.notes = "total curvature diverges; the limit depends on the exhaustion";
    }
    return {"catenoid", d, e, "generalized catenoid family phi = z+t, psi = -1/(z-t), dh = s(z-t)/z^2 dz", p};
}

CatalogEntry helicoid_family(double t, Complex lambda) {
    require(-1.0 < t && t < 1.0, "helicoid family requires -1 < t < 1 (got t = " + fmt_real(t) + ")");
    require(lambda != 0.0, "helicoid family requires lambda != 0");
    WeierstrassData d(z() + t, MeroExpr::rational({-1.0}, {-t, 1.0}),
                      MeroExpr::rational({-t * lambda, lambda}, {0.0, 0.0, 1.0}), kPunctured, "helicoid");
    Params p;
    p.set("t", t).set("lambda", lambda);
    Expected e = algebraic_regular(1, "associated family of the generalized catenoid: periods close iff lambda is real");
    e.periods_pass = lambda.imag() == 0.0;
    e.locus_empty = true;
    e.ends = {end_at(kZero, EndKind::Regular), end_at(kInf, EndKind::Regular)};
    e.embedded = lambda.imag() == 0.0 || lambda.real() == 0.0;
    if (lambda.imag() != 0.0)
        e.notes = "Re of the dh period is -2pi Im(lambda); the surface lives on the universal cover";
    if (lambda.real() == 0.0) e.notes += "; purely imaginary lambda gives the generalized helicoid";
    else if (lambda.imag() != 0.0) e.notes += "; generic associate with self-intersections";
    return {"helicoid", d, e, "associated family: catenoid data with dh = lambda(z-t)/z^2 dz", p};
}

CatalogEntry maximal_catenoid() {
    WeierstrassData d(z(), zpow(-1), zpow(-1), kPunctured, "maximal_catenoid");
    Expected e;
    e.citation = "catenoid in R^3_1: singular along the circle |z| = 1 where phi = conj psi";
    e.periods_pass = true;
    e.locus_empty = false;
    return {"maximal_catenoid", d, e, "rotational maximal surface phi = z, psi = 1/z, dh = dz/z", {}};
}

CatalogEntry enneper1(Complex c, Complex s, bool allow_irregular) {
    require(c != 0.0 && s != 0.0, "enneper1 requires c, s != 0");
    bool regular = !(c.imag() == 0.0 && c.real() > 0.0);
    require(regular || allow_irregular, "enneper1 is singular for real c > 0 (got c = " + cfmt(c) + ")");
    WeierstrassData d(z(), zpow(-1, c), zpow(1, s), kPlane, "enneper1");
    Params p;
    p.set("c", c).set("s", s);
    if (allow_irregular) p.set("allow_irregular", true);
    Expected e;
    e.citation = "generalized Enneper surface phi = z, psi = c/z: regular iff c is not a nonnegative real";
    e.periods_pass = true;
    e.locus_empty = regular;
    if (regular) {
        e = algebraic_regular(1, e.citation);
        e.periods_pass = true;
        e.locus_empty = true;
        e.ends = {end_at(kInf, EndKind::Regular)};
        e.completeness = {{kInf, true}};
    } else {
        e.notes = "singular along |z|^2 = c";
    }
    if (c.imag() == 0.0 && c.real() < 0.0) e.notes = "negative real c is the classical Enneper surface in R^3";
    return {"enneper1", d, e, "generalized Enneper surface, first family", p};
}

CatalogEntry enneper2(Complex c, Complex s, bool allow_irregular) {
    require(c != 0.0 && s != 0.0, "enneper2 requires c, s != 0");
    double margin = c.real() - c.imag() * c.imag() + 0.25;
    bool regular = margin < 0.0;
    require(regular || allow_irregular,
            "enneper2 requires c1 - c2^2 + 1/4 < 0 (got " + fmt_real(margin) + " for c = " + cfmt(c) + ")");
    WeierstrassData d(z() + 1.0, zpow(-1, c), zpow(1, s), kPlane, "enneper2");
    Params p;
    p.set("c", c).set("s", s);
    if (allow_irregular) p.set("allow_irregular", true);
    Expected e;
    e.citation = "generalized Enneper surface phi = z+1, psi = c/z: regular iff c1 - c2^2 + 1/4 < 0";
    e.periods_pass = true;
    e.locus_empty = regular;
    if (regular) {
        std::string cit = e.citation;
        e = algebraic_regular(1, cit);
        e.periods_pass = true;
        e.locus_empty = true;
        e.ends = {end_at(kInf, EndKind::Regular)};
        if (c.imag() == 0.0 && s.imag() != 0.0) e.embedded = true;
    }
    return {"enneper2", d, e, "generalized Enneper surface, second family", p};
}

CatalogEntry enneper_k(int k, Complex c, Complex s, bool allow_irregular) {
    require(k >= 1, "enneper_k requires k >= 1");
    require(c != 0.0 && s != 0.0, "enneper_k requires c, s != 0");
    bool regular = !(c.imag() == 0.0 && c.real() > 0.0);
    require(regular || allow_irregular, "enneper_k is singular for real c > 0 (got c = " + cfmt(c) + ")");
    WeierstrassData d(zpow(k), zpow(-k, c), zpow(k, s), kPlane, "enneper_k");
    Params p;
    p.set("k", k).set("c", c).set("s", s);
    if (allow_irregular) p.set("allow_irregular", true);
    Expected e;
    e.citation = "Enneper-type surface phi = z^k, psi = c/z^k: two self-intersection points for non-real c";
    e.periods_pass = true;
    e.locus_empty = regular;
    if (regular) {
        std::string cit = e.citation;
        e = algebraic_regular(k, cit);
        e.periods_pass = true;
        e.locus_empty = true;
        e.ends = {end_at(kInf, EndKind::Regular, std::nullopt, 2 * k + 1)};
        if (c.imag() != 0.0) {
            e.embedded = false;
            e.intersection_clusters = 2;
            e.notes = "self-intersection preimages have modulus ((2k+1)|c|)^(1/2k)";
        }
    }
    return {"enneper_k", d, e, "Enneper-type surfaces with k-fold symmetry", p};
}

CatalogEntry knoid(int k, Complex a, Complex b) {
    require(k >= 2, "knoid requires k >= 2");
    require(std::abs(a * a - b * b - 1.0) <= 1e-12, "knoid requires a^2 - b^2 = 1");
    require(std::norm(a) - std::norm(b) > 0.0, "knoid requires |a|^2 - |b|^2 > 0");
    require(std::abs((a * std::conj(b)).imag()) > 1e-12 * (1.0 + std::norm(a) + std::norm(b)),
            "knoid requires a, b linearly independent over R");
    PuncturedSphere dom;
    for (int j = 0; j < k; ++j) dom.punctures.push_back(SpherePoint::at(std::polar(1.0, 2.0 * kPi * j / k)));
    MeroExpr zk1 = zpow(k) - 1.0;
    WeierstrassData classical(zpow(k - 1), zpow(1 - k, -1.0), zpow(k - 1) / (zk1 * zk1), dom, "knoid_r3");
    XzForms v = classical.xz();
    XzForms w = {v[0], v[1], v[2] * a, v[2] * b};
    WeierstrassData d = WeierstrassData::from_components(w, dom, "knoid");
    Params p;
    p.set("k", k).set("a", a).set("b", b);
    Expected e = algebraic_regular(k - 1, "generalized Jorge-Meeks k-noid: k catenoid ends, embedded");
    e.periods_pass = true;
    e.locus_empty = true;
    for (const auto& q : dom.punctures) e.ends.push_back(end_at(q, EndKind::Regular, std::nullopt, 1, 1));
    e.embedded = true;
    e.intersection_clusters = 0;
    return {"knoid", d, e, "deformation (v1, v2, a v3, b v3) of the Jorge-Meeks k-noid", p};
}

CatalogEntry graph1() {
    double r2 = std::sqrt(2.0);
    WeierstrassData d(expz(-1.0) * (1.0 - r2), expz(-1.0) * (1.0 + r2), expz(1.0) * 0.5, kPlane, "graph1");
    Expected e;
    e.citation = "complete embedded stationary graph x_z = (1, sqrt2 i, cosh z, sinh z)";
    e.periods_pass = true;
    e.locus_empty = true;
    e.ends = {end_at(kInf, EndKind::Transcendental)};
    e.density_range = std::make_pair(4.0, 8.0);
    e.embedded = true;
    e.notes = "|x_z|^2 lies in [2,4]; the metric density 2|x_z|^2 lies in [4,8]";
    return {"graph1", d, e, "entire graph over a spacelike plane", {}};
}

CatalogEntry graph2(int n) {
    require(n >= 2, "graph2 requires n >= 2");
    Complex lam(0.5, std::sqrt(3.0) / 2.0);
    WeierstrassData d(zpow(n, std::conj(lam)), zpow(-n, std::conj(lam)), MeroExpr(lam), kPunctured, "graph2");
    Params p;
    p.set("n", n);
    Expected e = algebraic_regular(n, "complete graph over a punctured timelike plane: end multiplicities n-1 and n+1");
    e.periods_pass = true;
    e.locus_empty = true;
    e.ends = {end_at(kZero, EndKind::Regular, std::nullopt, n - 1), end_at(kInf, EndKind::Regular, std::nullopt, n + 1)};
    e.embedded = true;
    return {"graph2", d, e, "graph with x_z = (z^n + z^-n, -i(z^n - z^-n), sqrt3 i, 1)", p};
}

namespace {

void check_essential(const char* name, int k, double a, bool allow_k1, bool allow_a0) {
    std::string n(name);
    require(k >= 2 || (k == 1 && allow_k1), n + " requires k >= 2 (k = 1 has divergent total curvature; opt in explicitly)");
    require((0.0 < a && a < kPi / 2) || (a == 0.0 && allow_a0),
            n + " requires 0 < a < pi/2 (got a = " + fmt_real(a) + ")");
}

MeroExpr ess_phi(int k, double a) { return a == 0.0 ? zpow(k) : zpow(k) * expz(a); }
MeroExpr ess_psi(int k, double a) { return a == 0.0 ? zpow(-k, -1.0) : zpow(-k, -1.0) * expz(a); }
MeroExpr ess_emaz(double a) { return a == 0.0 ? MeroExpr(1.0) : expz(-a); }

Params ess_params(int k, double a, bool allow_k1, bool allow_a0) {
    Params p;
    p.set("k", k).set("a", a);
    if (allow_k1) p.set("allow_k1", true);
    if (allow_a0) p.set("allow_a0", true);
    return p;
}

}  // namespace

CatalogEntry essential_M(int k, double a, bool allow_k1) {
    check_essential("essential_M", k, a, allow_k1, false);
    WeierstrassData d(ess_phi(k, a), ess_psi(k, a), ess_emaz(a), kPunctured, "essential_M");
    Expected e;
    e.citation = "M_{k,a} with essential singularities: total curvature -4pi k, normal curvature 0";
    e.periods_pass = true;
    e.locus_empty = true;
    e.ends = {end_at(kZero, EndKind::Regular), end_at(kInf, EndKind::Transcendental)};
    e.completeness = {{kZero, true}, {kInf, true}};
    if (k >= 2) {
        e.K_total = -4.0 * kPi * k;
        e.Kperp_total = 0.0;
        e.tol = 5e-3;
    } else {
        e.notes = "k = 1: total curvature does not converge absolutely";
    }
    return {"essential_M", d, e, "phi = z^k e^{az}, psi = -e^{az}/z^k, dh = e^{-az} dz on C minus 0",
            ess_params(k, a, allow_k1, false)};
}

CatalogEntry essential_E(int k, double a, bool allow_k1, bool allow_a0) {
    check_essential("essential_E", k, a, allow_k1, allow_a0);
    WeierstrassData d(ess_phi(k, a), ess_psi(k, a), zpow(k) * ess_emaz(a), kPlane, "essential_E");
    Expected e;
    e.citation = "Enneper surface E_{k,a} with essential singularities";
    e.periods_pass = true;
    e.locus_empty = true;
    if (a == 0.0) {
        e = algebraic_regular(k, e.citation);
        e.periods_pass = true;
        e.locus_empty = true;
        e.ends = {end_at(kInf, EndKind::Regular)};
        e.notes = "a = 0: Enneper surface in R^3 with higher dihedral symmetry";
    } else {
        e.ends = {end_at(kInf, EndKind::Transcendental)};
    }
    return {"essential_E", d, e, "phi = z^k e^{az}, psi = -e^{az}/z^k, dh = z^k e^{-az} dz on C",
            ess_params(k, a, allow_k1, allow_a0)};
}

CatalogEntry essential_C(int k, double a, bool allow_k1, bool allow_a0) {
    check_essential("essential_C", k, a, allow_k1, allow_a0);
    WeierstrassData d(ess_phi(k, a), ess_psi(k, a), zpow(-k) * ess_emaz(a), kPunctured, "essential_C");
    Expected e;
    e.citation = "catenoid C_{k,a} with essential singularities";
    e.periods_pass = true;
    e.locus_empty = true;
    if (a == 0.0) {
        e = algebraic_regular(k, e.citation);
        e.periods_pass = true;
        e.locus_empty = true;
        e.ends = {end_at(kZero, EndKind::Regular), end_at(kInf, EndKind::Regular)};
        if (k == 1) e.notes = "a = 0, k = 1: the classical catenoid in R^3";
    } else {
        e.ends = {end_at(kZero, EndKind::Regular), end_at(kInf, EndKind::Transcendental)};
    }
    return {"essential_C", d, e, "phi = z^k e^{az}, psi = -e^{az}/z^k, dh = e^{-az}/z^k dz on C minus 0",
            ess_params(k, a, allow_k1, allow_a0)};
}

CatalogEntry singular1(Complex a) {
    require(a != 0.0, "singular1 requires a != 0");
    MeroExpr q = MeroExpr::poly({a, 0.0, 1.0});
    WeierstrassData d(zpow(2) * q, zpow(4) / q, q * zpow(-4), kPunctured, "singular1");
    Params p;
    p.set("a", a);
    Expected e;
    e.citation = "genus zero with two good singular ends: indices +2/-2, reduced multiplicities 1/3, total curvature -8pi";
    e.K_total = -8.0 * kPi;
    e.Kperp_total = 0.0;
    e.periods_pass = true;
    e.ends = {end_at(kZero, EndKind::GoodSingular, 2, std::nullopt, 1),
              end_at(kInf, EndKind::GoodSingular, -2, std::nullopt, 3)};
    if (a.imag() == 0.0 && a.real() > 1.0) e.locus_empty = true;
    else e.notes = "regularity is only claimed for real a > 1";
    return {"singular1", d, e, "phi = z^2(z^2+a), psi = z^4/(z^2+a), dh = (z^2+a)/z^4 dz", p};
}

CatalogEntry singular2(Complex a, Complex b) {
    require(b != 0.0, "singular2 requires b != 0");
    MeroExpr q = MeroExpr::poly({b, a, 1.0});
    WeierstrassData d(z() * q, zpow(2) / q, q * zpow(-7), PuncturedSphere{{kZero}}, "singular2");
    Params p;
    p.set("a", a).set("b", b);
    Expected e;
    e.citation = "genus zero with one good singular end: index 1, reduced multiplicity 5, total curvature -8pi";
    e.K_total = -8.0 * kPi;
    e.Kperp_total = 0.0;
    e.periods_pass = true;
    e.ends = {end_at(kZero, EndKind::GoodSingular, 1, std::nullopt, 5)};
    if (a == 0.0 && b == 2.0) e.locus_empty = true;
    e.notes = "default parameters a = 0, b = 2 make phi != conj psi on the domain";
    return {"singular2", d, e, "phi = z(z^2+az+b), psi = z^2/(z^2+az+b), dh = (z^2+az+b)/z^7 dz", p};
}

CatalogEntry incomplete_demo() {
    WeierstrassData d(zpow(-2), zpow(-3), MeroExpr(1.0), kPlane, "incomplete_demo");
    Expected e;
    e.citation = "incomplete end at infinity where phi(inf) = conj psi(inf)";
    e.completeness = {{kInf, false}};
    e.pole_conditions = false;
    e.locus_empty = false;
    e.notes = "phi and psi share a pole at 0; phi = conj psi also at five interior points";
    return {"incomplete_demo", d, e, "phi = z^-2, psi = z^-3, dh = dz", {}};
}

CatalogEntry alias_palmer(const CatalogEntry& base, Complex a) {
    require(a != 0.0 && !(a.imag() == 0.0 && a.real() < 0.0),
            "alias_palmer requires a not a nonpositive real (got a = " + cfmt(a) + ")");
    const WeierstrassData& b = base.data;
    require(b.is_algebraic(), "alias_palmer requires an algebraic base");
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 8; ++i) {
        Complex w(u(gen), u(gen));
        Complex prod;
        try {
            prod = b.phi()(w) * b.psi()(w);
        } catch (const Error&) {
            continue;
        }
        require(std::abs(prod + 1.0) <= 1e-10, "alias_palmer requires a base surface in R^3 (psi = -1/phi)");
    }
    WeierstrassData d(b.phi(), b.psi() * a, b.dh(), b.domain(), "alias_palmer");
    Params p = base.params;
    p.set("base", base.name).set("a", a);
    Expected e;
    e.citation = "Alias-Palmer deformation psi -> a psi of a surface in R^3";
    if (base.expected) {
        e.K_total = base.expected->K_total;
        e.Kperp_total = base.expected->Kperp_total;
        e.ends = base.expected->ends;
    }
    e.locus_empty = true;
    bool residue_free = true;
    for (const auto& q : b.domain().punctures) {
        if (q.infinite) continue;
        residue_free = false;
    }
    e.periods_pass = residue_free || a.imag() == 0.0;
    if (!residue_free) e.notes = "a finite puncture: the phi psi dh period picks up Im(a)";
    return {"alias_palmer", d, e, "deformation phi = 1/g, psi = -a g, dh = g omega", p};
}

double graph1_form_mismatch(int samples) {
    WeierstrassData d = graph1().data;
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        Complex w(u(gen), u(gen));
        CVec4 v = d.xz_at(w);
        CVec4 ref(1.0, Complex(0.0, std::sqrt(2.0)), std::cosh(w), std::sinh(w));
        worst = std::max(worst, (v - ref).norm() / (1.0 + ref.norm()));
    }
    return worst;
}

// ---------------------------------------------------------------- registry

namespace {

struct Maker {
    CatalogInfo info;
    std::vector<std::string> keys;
    std::function<CatalogEntry(const Params&)> make;
};

const std::vector<Maker>& makers() {
    static const std::vector<Maker> table = {
        {{"catenoid", "t in (-1,1) [0.5], s real != 0 [1], allow_bad [false]",
          "generalized catenoid: total curvature -4pi, embedded"},
         {"t", "s", "allow_bad"},
         [](const Params& p) { return catenoid(p.get_real("t", 0.5), p.get_real("s", 1.0), p.get_bool("allow_bad", false)); }},
        {{"helicoid", "t in (-1,1) [0], lambda complex != 0 [i]",
          "associated family of the generalized catenoid"},
         {"t", "lambda"},
         [](const Params& p) { return helicoid_family(p.get_real("t", 0.0), p.get_complex("lambda", kI)); }},
        {{"maximal_catenoid", "none", "catenoid in R^3_1, singular on |z| = 1"},
         {},
         [](const Params&) { return maximal_catenoid(); }},
        {{"enneper1", "c != 0, not a positive real [-1], s != 0 [1], allow_irregular [false]",
          "generalized Enneper surface phi = z"},
         {"c", "s", "allow_irregular"},
         [](const Params& p) {
             return enneper1(p.get_complex("c", -1.0), p.get_complex("s", 1.0), p.get_bool("allow_irregular", false));
         }},
        {{"enneper2", "c with c1 - c2^2 + 1/4 < 0 [-1], s != 0 [i], allow_irregular [false]",
          "generalized Enneper surface phi = z + 1"},
         {"c", "s", "allow_irregular"},
         [](const Params& p) {
             return enneper2(p.get_complex("c", -1.0), p.get_complex("s", kI), p.get_bool("allow_irregular", false));
         }},
        {{"enneper_k", "k >= 1 [1], c != 0 [i], s != 0 [1], allow_irregular [false]",
          "Enneper-type surface with two self-intersection points"},
         {"k", "c", "s", "allow_irregular"},
         [](const Params& p) {
             return enneper_k(p.get_int("k", 1), p.get_complex("c", kI), p.get_complex("s", 1.0),
                              p.get_bool("allow_irregular", false));
         }},
        {{"knoid", "k >= 2 [3], a^2 - b^2 = 1, |a| > |b|, a, b R-independent [a = sqrt3/2, b = i/2]",
          "generalized Jorge-Meeks k-noid: embedded, total curvature 4pi(1-k)"},
         {"k", "a", "b"},
         [](const Params& p) {
             return knoid(p.get_int("k", 3), p.get_complex("a", std::sqrt(3.0) / 2.0), p.get_complex("b", 0.5 * kI));
         }},
        {{"graph1", "none", "complete embedded stationary graph"}, {}, [](const Params&) { return graph1(); }},
        {{"graph2", "n >= 2 [2]", "complete graph over a punctured timelike plane"},
         {"n"},
         [](const Params& p) { return graph2(p.get_int("n", 2)); }},
        {{"essential_M", "k >= 2 [2], a in (0, pi/2) [0.3], allow_k1 [false]",
          "M_{k,a}: essential singularity at infinity, total curvature -4pi k"},
         {"k", "a", "allow_k1"},
         [](const Params& p) {
             return essential_M(p.get_int("k", 2), p.get_real("a", 0.3), p.get_bool("allow_k1", false));
         }},
        {{"essential_E", "k >= 2 [2], a in (0, pi/2) [0.3], allow_k1 [false], allow_a0 [false]",
          "Enneper surface E_{k,a} with essential singularities"},
         {"k", "a", "allow_k1", "allow_a0"},
         [](const Params& p) {
             return essential_E(p.get_int("k", 2), p.get_real("a", 0.3), p.get_bool("allow_k1", false),
                                p.get_bool("allow_a0", false));
         }},
        {{"essential_C", "k >= 2 [2], a in (0, pi/2) [0.3], allow_k1 [false], allow_a0 [false]",
          "catenoid C_{k,a} with essential singularities"},
         {"k", "a", "allow_k1", "allow_a0"},
         [](const Params& p) {
             return essential_C(p.get_int("k", 2), p.get_real("a", 0.3), p.get_bool("allow_k1", false),
                                p.get_bool("allow_a0", false));
         }},
        {{"singular1", "a != 0, real a > 1 for regularity [2]", "two good singular ends, total curvature -8pi"},
         {"a"},
         [](const Params& p) { return singular1(p.get_complex("a", 2.0)); }},
        {{"singular2", "a [0], b != 0 [2]", "one good singular end, total curvature -8pi"},
         {"a", "b"},
         [](const Params& p) { return singular2(p.get_complex("a", 0.0), p.get_complex("b", 2.0)); }},
        {{"incomplete_demo", "none", "incomplete end at infinity"},
         {},
         [](const Params&) { return incomplete_demo(); }},
        {{"alias_palmer", "base in {enneper1, catenoid} [enneper1] with base parameters, a not in (-inf, 0] [i]",
          "Alias-Palmer deformation of a surface in R^3"},
         {"base", "a", "c", "s", "t"},
         [](const Params& p) {
             std::string base = p.get_string("base", "enneper1");
             Params bp;
             if (base == "enneper1") {
                 bp.set("c", p.get_string("c", "-1")).set("s", p.get_string("s", "1"));
             } else if (base == "catenoid") {
                 bp.set("t", p.get_string("t", "0")).set("s", p.get_string("s", "1"));
             } else {
                 throw ParamError("alias_palmer base must be enneper1 or catenoid");
             }
             return alias_palmer(make_entry(base, bp), p.get_complex("a", kI));
         }},
    };
    return table;
}

}  // namespace

const std::vector<CatalogInfo>& list_entries() {
    static const std::vector<CatalogInfo> infos = [] {
        std::vector<CatalogInfo> out;
        for (const auto& m : makers()) out.push_back(m.info);
        return out;
    }();
    return infos;
}

CatalogEntry make_entry(const std::string& name, const Params& params) {
    for (const auto& m : makers()) {
        if (m.info.name != name) continue;
        for (const auto& [k, v] : params.items()) {
            bool known = false;
            for (const auto& key : m.keys) known = known || key == k;
            if (!known) throw ParamError("unknown parameter \"" + k + "\" for " + name);
        }
        return m.make(params);
    }
    throw ParamError("unknown catalog entry \"" + name + "\"");
}

}  // namespace sslab
