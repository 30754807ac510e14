#include "sslab/ends.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sslab/errors.hpp"

namespace sslab {

std::string to_string(EndKind k) {
    switch (k) {
        case EndKind::Regular: return "Regular";
        case EndKind::GoodSingular: return "GoodSingular";
        case EndKind::BadSingular: return "BadSingular";
        case EndKind::Transcendental: return "Transcendental";
    }
    return "?";
}

namespace {

bool essential_at(const MeroExpr& f, const SpherePoint& p) {
    if (p.infinite) return f.essential_at_infinity();
    return p.z == Complex(0.0, 0.0) && f.essential_at_zero();
}

// Largest pole order over the terms of f at p (0 when finite).
int pole_order(const MeroExpr& f, const SpherePoint& p) {
    int worst = 0;
    for (auto& t : f.terms()) worst = std::max(worst, -order_at(MeroExpr(t.rat), p));
    return worst;
}

}  // namespace

int predicted_index(int m, int n) { return m < n ? m : -n; }

namespace {

CFun evaluator(const MeroExpr& f) {
    return [f](Complex z) { return f(z); };
}

void set_from_exprs(EndChart& ch, const MeroExpr& phi, const MeroExpr& psi) {
    ch.phi_expr = phi;
    ch.psi_expr = psi;
    ch.phi = evaluator(phi);
    ch.psi = evaluator(psi);
    ch.dphi = evaluator(phi.derivative());
    ch.dpsi = evaluator(psi.derivative());
}

}  // namespace

EndChart end_chart(const WeierstrassData& data, const SpherePoint& p) {
    EndChart ch;
    const MeroExpr& phi = data.phi();
    const MeroExpr& psi = data.psi();
    auto in_chart = [&](const MeroExpr& f) { return p.infinite ? change_chart_to_infinity(f, false) : f; };
    ch.center = p.infinite ? Complex(0.0, 0.0) : p.z;
    int pp = pole_order(phi, p), ps = pole_order(psi, p);
    if (pp == 0 && ps == 0) {
        set_from_exprs(ch, in_chart(phi), in_chart(psi));
    } else {
        MeroExpr cphi = in_chart(phi), cpsi = in_chart(psi);
        ch.one_pole = (pp == 0) != (ps == 0);
        static const Complex candidates[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {2, 0}, {0, 0.5}, {1, 1}, {3, -1}};
        bool found = false;
        for (Complex c : candidates) {
            if (pp == 0 && std::abs(c * cphi(ch.center) + 1.0) < 1e-6) continue;
            if (ps == 0 && std::abs(std::conj(c) * cpsi(ch.center) + 1.0) < 1e-6) continue;
            ch.frame << 1.0, 0.0, c, 1.0;
            found = true;
            break;
        }
        if (!found) throw UnsupportedExpr("no frame makes phi and psi finite at " + p.str());
        if (phi.is_algebraic() && psi.is_algebraic()) {
            set_from_exprs(ch, in_chart(mobius(phi, ch.frame)), in_chart(mobius(psi, ch.frame.conjugate())));
        } else {
            // (f)/(c f + 1) evaluated numerically, derivative f'/(c f + 1)^2
            Complex c = ch.frame(1, 0), cb = std::conj(c);
            MeroExpr dphi = cphi.derivative(), dpsi = cpsi.derivative();
            auto mob = [](Complex f, Complex k) { return std::isfinite(std::abs(f)) ? f / (k * f + 1.0) : 1.0 / k; };
            ch.phi = [=](Complex z) { return mob(cphi(z), c); };
            ch.psi = [=](Complex z) { return mob(cpsi(z), cb); };
            ch.dphi = [=](Complex z) {
                Complex f = cphi(z), q = c * f + 1.0;
                return dphi(z) / (q * q);
            };
            ch.dpsi = [=](Complex z) {
                Complex f = cpsi(z), q = cb * f + 1.0;
                return dpsi(z) / (q * q);
            };
        }
    }
    std::vector<Complex> sing;
    if (p.infinite) {
        for (Complex s : data.singular_points())
            if (s != Complex(0.0, 0.0)) sing.push_back(1.0 / s);
        for (const MeroExpr* f : {&phi, &psi})
            for (Complex s : finite_singularities(change_chart_to_infinity(*f, false))) sing.push_back(s);
    } else {
        sing = data.singular_points();
        for (const MeroExpr* f : {&phi, &psi})
            for (Complex s : finite_singularities(*f)) sing.push_back(s);
    }
    // poles introduced by the frame change
    if (ch.phi_expr && !ch.frame.isIdentity())
        for (const MeroExpr* f : {&*ch.phi_expr, &*ch.psi_expr})
            for (Complex s : finite_singularities(*f)) sing.push_back(s);
    for (Complex s : sing)
        if (std::abs(s - ch.center) > 1e-12 * (1.0 + std::abs(ch.center))) ch.singular.push_back(s);
    return ch;
}

int vanishing_order(const MeroExpr& f, Complex p, double tol, int max_order) {
    Complex f0 = f(p);
    double scale = std::max(1.0, std::abs(f0));
    MeroExpr fk = f;
    double fact = 1.0;
    for (int k = 1; k <= max_order; ++k) {
        fk = fk.derivative();
        fact *= k;
        if (std::abs(fk(p)) / fact > tol * scale) return k;
    }
    throw NotIsolated("no nonzero Taylor coefficient up to order " + std::to_string(max_order));
}

Winding local_winding(const CFun& f, const CFun& g, const CFun& df, const CFun& dg, Complex c, double r,
                      const Settings& s) {
    CFun F = [&](Complex z) { return f(z) - std::conj(g(z)); };
    CFun Fzb = [&](Complex z) { return -std::conj(dg(z)); };
    return winding_number(F, c, r, s, &df, &Fzb);
}

Winding local_winding(const MeroExpr& f, const MeroExpr& g, Complex c, double r, const Settings& s) {
    return local_winding(evaluator(f), evaluator(g), evaluator(f.derivative()), evaluator(g.derivative()), c, r, s);
}

EndRecord classify_end(const WeierstrassData& data, const SpherePoint& p) {
    EndRecord rec;
    rec.puncture = p;
    if (essential_at(data.phi(), p) || essential_at(data.psi(), p)) {
        rec.kind = EndKind::Transcendental;
        return rec;
    }
    EndChart ch = end_chart(data, p);
    if (ch.one_pole) {
        rec.kind = EndKind::Regular;
        return rec;
    }
    Complex f0 = ch.phi(ch.center), g0 = ch.psi(ch.center);
    if (std::abs(f0 - std::conj(g0)) > 1e-10 * (1.0 + std::abs(f0))) {
        rec.kind = EndKind::Regular;
        return rec;
    }
    if (!ch.phi_expr || !ch.psi_expr)
        throw UnsupportedExpr("vanishing orders at " + p.str() + " need a symbolic frame change");
    rec.m = vanishing_order(*ch.phi_expr, ch.center);
    rec.n = vanishing_order(*ch.psi_expr, ch.center);
    rec.kind = rec.m == rec.n ? EndKind::BadSingular : EndKind::GoodSingular;
    return rec;
}

namespace {

Winding certified_winding(const WeierstrassData& data, const EndRecord& rec, const Settings& s) {
    if (rec.kind == EndKind::BadSingular) throw BadEndError("bad singular end at " + rec.puncture.str());
    if (rec.kind == EndKind::Transcendental)
        throw UnsupportedExpr("no index at the transcendental end " + rec.puncture.str());
    int want = rec.kind == EndKind::Regular ? 0 : predicted_index(rec.m, rec.n);
    EndChart ch = end_chart(data, rec.puncture);
    double d = std::numeric_limits<double>::infinity();
    for (Complex q : ch.singular) d = std::min(d, std::abs(q - ch.center));
    double r = std::min(0.5, 0.5 * d);
    int agree = 0;
    Winding last;
    for (int j = 0; j < 14; ++j, r *= 0.5) {
        Winding w = local_winding(ch.phi, ch.psi, ch.dphi, ch.dpsi, ch.center, r, s);
        if (w.value == want) {
            last = w;
            if (++agree == 2) return last;
        } else {
            agree = 0;
        }
    }
    throw InconsistentLedger("winding at " + rec.puncture.str() + " does not settle on the predicted index " +
                             std::to_string(want));
}

}  // namespace

int end_index(const WeierstrassData& data, const SpherePoint& p, const Settings& s) {
    return certified_winding(data, classify_end(data, p), s).value;
}

namespace {

// Largest pole order of the x_z components at p (forms at infinity).
int form_pole_order(const WeierstrassData& data, const SpherePoint& p) {
    int pole = 0;
    for (const auto& v : data.xz()) {
        if (v.is_zero()) continue;
        if (!v.is_algebraic()) throw NotAlgebraic("x_z component not algebraic at " + p.str());
        int ord = p.infinite ? order_at(change_chart_to_infinity(v, true), SpherePoint::at(0.0)) : order_at(v, p);
        pole = std::max(pole, -ord);
    }
    return pole;
}

}  // namespace

std::pair<int, int> end_multiplicity(const WeierstrassData& data, const SpherePoint& p, const Settings& s) {
    int d = form_pole_order(data, p) - 1;
    return {d, d - std::abs(end_index(data, p, s))};
}

EndRecord analyze_end(const WeierstrassData& data, const SpherePoint& p, const Settings& s) {
    EndRecord rec = classify_end(data, p);
    if (rec.kind == EndKind::Transcendental) return rec;
    try {
        rec.d = form_pole_order(data, p) - 1;
    } catch (const NotAlgebraic&) {
    }
    if (rec.kind == EndKind::BadSingular) return rec;
    Winding w = certified_winding(data, rec, s);
    rec.index = w.value;
    rec.winding = w.continuous;
    rec.ind_plus = std::abs(w.value);
    if (rec.d) rec.d_tilde = *rec.d - rec.ind_plus;
    return rec;
}

std::vector<EndRecord> end_table(const WeierstrassData& data, const Settings& s) {
    std::vector<EndRecord> out;
    for (const auto& p : data.domain().punctures) out.push_back(analyze_end(data, p, s));
    return out;
}

IndexCheck index_theorem_check(const WeierstrassData& data, const std::vector<EndRecord>& ends,
                               const std::vector<int>& interior_indices) {
    if (!data.phi().is_algebraic() || !data.psi().is_algebraic())
        throw NotAlgebraic("index theorem needs algebraic phi and psi");
    IndexCheck c;
    c.deg_phi = degree(data.phi());
    c.deg_psi = degree(data.psi());
    for (auto& e : ends) {
        if (!e.index) throw BadEndError("end at " + e.puncture.str() + " has no index");
        c.index_sum += *e.index;
    }
    for (int i : interior_indices) c.index_sum += i;
    c.pass = c.index_sum == c.deg_phi - c.deg_psi;
    if (!c.pass)
        throw InconsistentLedger("index sum " + std::to_string(c.index_sum) + " differs from deg phi - deg psi = " +
                                 std::to_string(c.deg_phi - c.deg_psi));
    return c;
}

}  // namespace sslab
