#include "sslab/wdata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sslab/errors.hpp"
#include "sslab/quadrature.hpp"

namespace sslab {

// ---------------------------------------------------------------- domain

bool PuncturedSphere::is_puncture(const SpherePoint& p, double tol) const {
    return std::any_of(punctures.begin(), punctures.end(), [&](const SpherePoint& q) { return q.near(p, tol); });
}

bool PuncturedSphere::infinity_punctured() const { return is_puncture(SpherePoint::infinity()); }

std::vector<Complex> PuncturedSphere::finite_punctures() const {
    std::vector<Complex> v;
    for (auto& p : punctures)
        if (!p.infinite) v.push_back(p.z);
    return v;
}

// ---------------------------------------------------------------- data

WeierstrassData::WeierstrassData(MeroExpr phi, MeroExpr psi, MeroExpr dh, PuncturedSphere domain, std::string label,
                                 bool degenerate_ok) {
    auto c = std::make_shared<Cache>();
    c->phi = std::move(phi);
    c->psi = std::move(psi);
    c->dh = std::move(dh);
    c->domain = std::move(domain);
    c->label = std::move(label);
    c->degenerate_ok = degenerate_ok;
    c_ = c;
    build(false);
}

WeierstrassData WeierstrassData::from_components(const XzForms& v, PuncturedSphere domain, std::string label) {
    MeroExpr s34 = v[2] + v[3];
    if (s34.is_zero()) throw ParamError("x_z components give dh = 0");
    auto c = std::make_shared<Cache>();
    c->phi = (v[0] + kI * v[1]) / s34;
    c->psi = (v[0] - kI * v[1]) / s34;
    c->dh = s34 * 0.5;
    c->domain = std::move(domain);
    c->label = std::move(label);
    c->xz = v;
    WeierstrassData d;
    d.c_ = c;
    d.build(true);
    return d;
}

void WeierstrassData::build(bool explicit_components) {
    auto c = std::make_shared<Cache>(*c_);
    for (size_t i = 0; i < c->domain.punctures.size(); ++i)
        for (size_t j = i + 1; j < c->domain.punctures.size(); ++j)
            if (c->domain.punctures[i].near(c->domain.punctures[j], 1e-12))
                throw ParamError("punctures must be distinct");
    if (c->dh.is_zero()) throw ParamError("dh must not vanish identically");
    if ((c->phi.is_constant() || c->psi.is_constant()) && !c->degenerate_ok)
        throw ParamError("phi and psi must be nonconstant (degenerate case is opt-in)");
    c->explicit_xz = explicit_components;
    c->dphi = c->phi.derivative();
    c->dpsi = c->psi.derivative();
    if (explicit_components) {
        const auto& v = c->xz;
        c->forms = {(v[0] + kI * v[1]) * 0.5, (v[0] - kI * v[1]) * 0.5, (v[2] + v[3]) * 0.5, (v[3] - v[2]) * 0.5};
    } else {
        MeroExpr ph = c->phi * c->dh, sh = c->psi * c->dh, pps = c->phi * c->psi * c->dh;
        c->forms = {ph, sh, c->dh, pps};
        c->xz = {ph + sh, (ph - sh) * (-kI), c->dh - pps, c->dh + pps};
    }
    bool alg = c->phi.is_algebraic() && c->psi.is_algebraic() && c->dh.is_algebraic();
    c->log_mode = !alg && c->phi.is_single_term() && c->psi.is_single_term() && !c->phi.is_zero() &&
                  !c->psi.is_zero() && c->dh.is_single_term();
    auto add = [&](Complex s) {
        for (auto& o : c->singular)
            if (std::abs(o - s) <= 1e-12 * (1.0 + std::abs(s))) return;
        c->singular.push_back(s);
    };
    for (auto& f : c->xz)
        for (Complex s : finite_singularities(f)) add(s);
    for (Complex s : c->domain.finite_punctures()) add(s);
    c_ = c;
}

bool WeierstrassData::is_algebraic() const {
    return phi().is_algebraic() && psi().is_algebraic() && dh().is_algebraic();
}

CVec4 WeierstrassData::xz_at(Complex z) const {
    const auto& v = c_->xz;
    return CVec4(v[0](z), v[1](z), v[2](z), v[3](z));
}

double WeierstrassData::log_rho_h(Complex z) const {
    if (!c_->log_mode) return std::log(std::abs(phi()(z) - std::conj(psi()(z))) * std::abs(dh()(z)));
    Complex lp = phi().log_eval(z), ls = psi().log_eval(z), lh = dh().log_eval(z);
    Complex q = std::exp(std::conj(ls) - lp);  // conj(psi)/phi
    double lr = std::abs(q) <= 1.0 ? lp.real() + std::log(std::abs(1.0 - q))
                                   : ls.real() + std::log(std::abs(1.0 / q - 1.0));
    return lr + lh.real();
}

// ---------------------------------------------------------------- pointwise

XzForms xz_components(const WeierstrassData& data) { return data.xz(); }

double lorentz_isotropy_check(const WeierstrassData& data, const std::vector<Complex>& points) {
    double worst = 0.0;
    for (Complex z : points) {
        CVec4 v = data.xz_at(z);
        worst = std::max(worst, std::abs(lorentz_dot(v, v)) / (1.0 + v.squaredNorm()));
    }
    return worst;
}

double metric_density(const WeierstrassData& data, Complex z) { return 4.0 * std::exp(2.0 * data.log_rho_h(z)); }

// ---------------------------------------------------------------- paths

Complex PathPiece::at(double s) const {
    if (kind == Line) return a + s * (b - a);
    return center + std::polar(radius, t0 + s * (t1 - t0));
}

Complex PathPiece::tangent(double s) const {
    if (kind == Line) return b - a;
    return kI * std::polar(radius, t0 + s * (t1 - t0)) * (t1 - t0);
}

double PathPiece::distance_to(Complex p) const {
    if (kind == Line) {
        Complex d = b - a;
        double len2 = std::norm(d);
        double s = len2 == 0.0 ? 0.0 : std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
        return std::abs(p - (a + s * d));
    }
    double best = std::min(std::abs(p - start()), std::abs(p - end()));
    Complex rel = p - center;
    if (std::abs(rel) > 0.0) {
        double lo = std::min(t0, t1), hi = std::max(t0, t1);
        double ang = std::arg(rel);
        // shift the angle into [lo, lo + 2 pi)
        double k = std::floor((ang - lo) / (2.0 * kPi));
        ang -= k * 2.0 * kPi;
        if (ang <= hi || hi - lo >= 2.0 * kPi) best = std::min(best, std::abs(std::abs(rel) - radius));
    } else {
        best = std::min(best, radius);
    }
    return best;
}

PathSpec PathSpec::line(Complex a, Complex b) {
    PathSpec p;
    PathPiece q;
    q.kind = PathPiece::Line;
    q.a = a;
    q.b = b;
    p.pieces.push_back(q);
    return p;
}

PathSpec PathSpec::arc(Complex center, double radius, double t0, double t1) {
    PathSpec p;
    p.then_arc(center, radius, t0, t1);
    return p;
}

PathSpec& PathSpec::then_line(Complex b) {
    PathPiece q;
    q.kind = PathPiece::Line;
    q.a = endpoint();
    q.b = b;
    pieces.push_back(q);
    return *this;
}

PathSpec& PathSpec::then_arc(Complex center, double radius, double t0, double t1) {
    PathPiece q;
    q.kind = PathPiece::Arc;
    q.center = center;
    q.radius = radius;
    q.t0 = t0;
    q.t1 = t1;
    pieces.push_back(q);
    return *this;
}

Complex PathSpec::basepoint() const { return pieces.empty() ? Complex(0.0, 0.0) : pieces.front().start(); }
Complex PathSpec::endpoint() const { return pieces.empty() ? Complex(0.0, 0.0) : pieces.back().end(); }

CVec4 integrate_xz(const WeierstrassData& data, const PathSpec& path, const Settings& s) {
    for (auto& piece : path.pieces)
        for (Complex q : data.singular_points())
            if (piece.distance_to(q) < s.clearance)
                throw ClearanceError("path passes within " + std::to_string(s.clearance) + " of singular point " +
                                     format_complex(q));
    CVec4 total = CVec4::Zero();
    AdaptiveOptions opt;
    opt.abs_tol = s.quad_abs_tol;
    opt.rel_tol = s.quad_rel_tol;
    for (auto& piece : path.pieces) {
        if (piece.kind == PathPiece::Line && piece.a == piece.b) continue;
        auto f = [&](double t) -> CVec4 { return data.xz_at(piece.at(t)) * piece.tangent(t); };
        double err = 0.0;
        CVec4 v = integrate_adaptive<CVec4>(f, 0.0, 1.0, opt, &err);
        if (err > 1e-9 * (1.0 + v.norm())) throw QuadratureError("immersion quadrature error estimate too large");
        total += v;
    }
    return total;
}

Vec4 immerse(const WeierstrassData& data, const PathSpec& path, const Settings& s) {
    return 2.0 * integrate_xz(data, path, s).real();
}

// ---------------------------------------------------------------- regularity

namespace {

struct Orders {
    int phi = 0, psi = 0, dh = 0;
};

}  // namespace

RegularityReport regularity_report(const WeierstrassData& data) {
    RegularityReport rep;
    const auto& dom = data.domain();
    std::vector<Divisor> div;
    for (const MeroExpr* f : {&data.phi(), &data.psi(), &data.dh()}) {
        if (f->is_single_term() && !f->is_zero()) {
            div.push_back(zeros_and_poles(*f));
        } else {
            div.push_back(Divisor{});
            if (!f->is_zero()) {
                rep.partial = true;
                rep.notes.push_back("multi-term transcendental expression: divisor not examined");
            }
        }
    }
    // finite interior points carrying a zero or pole of phi, psi or dh
    std::vector<SpherePoint> pts;
    for (auto& d : div) {
        for (auto& zp : d.points)
            if (!zp.point.infinite && !dom.is_puncture(zp.point) &&
                std::none_of(pts.begin(), pts.end(), [&](const SpherePoint& q) { return q.near(zp.point, 1e-8); }))
                pts.push_back(zp.point);
        for (auto& e : d.essential) {
            if (!dom.is_puncture(e)) {
                rep.condition2 = false;
                rep.notes.push_back("essential singularity at interior point " + e.str());
            }
            if (std::none_of(rep.essential.begin(), rep.essential.end(), [&](const SpherePoint& q) { return q.near(e, 1e-12); }))
                rep.essential.push_back(e);
        }
    }
    auto check = [&](const SpherePoint& q, Orders o) {
        if (o.phi < 0 && o.psi < 0) {
            rep.condition1 = false;
            rep.notes.push_back("phi and psi share a pole at " + q.str());
        }
        int want = std::max({0, -o.phi, -o.psi});
        if (o.dh != want) {
            rep.condition2 = false;
            rep.notes.push_back("dh has order " + std::to_string(o.dh) + " at " + q.str() + ", expected " +
                                std::to_string(want));
        }
    };
    for (auto& q : pts) check(q, {div[0].order_at(q), div[1].order_at(q), div[2].order_at(q)});
    if (!dom.infinity_punctured()) {
        try {
            Orders o;
            o.phi = order_at(data.phi(), SpherePoint::infinity());
            o.psi = order_at(data.psi(), SpherePoint::infinity());
            o.dh = order_at(change_chart_to_infinity(data.dh(), true), SpherePoint::at(0.0));
            check(SpherePoint::infinity(), o);
        } catch (const Error& e) {
            rep.partial = true;
            rep.notes.push_back(std::string("infinity not examined: ") + e.what());
        }
    }
    return rep;
}

// ---------------------------------------------------------------- periods

namespace {

double nearest(const std::vector<Complex>& pts, Complex c) {
    double d = std::numeric_limits<double>::infinity();
    for (Complex s : pts) {
        double e = std::abs(s - c);
        if (e > 1e-12 * (1.0 + std::abs(c))) d = std::min(d, e);
    }
    return d;
}

}  // namespace

PeriodReport period_report(const WeierstrassData& data, const Settings& s) {
    PeriodReport rep;
    for (const auto& p : data.domain().punctures) {
        std::array<MeroExpr, 4> forms = data.period_forms();
        std::vector<Complex> sing;
        Complex center = p.z;
        if (p.infinite) {
            center = 0.0;
            for (auto& f : forms) f = change_chart_to_infinity(f, true);
            for (auto& f : forms)
                for (Complex q : finite_singularities(f)) sing.push_back(q);
            for (Complex q : data.domain().finite_punctures())
                if (q != Complex(0.0, 0.0)) sing.push_back(1.0 / q);
        } else {
            sing = data.singular_points();
        }
        double r = std::min(s.period_radius_cap, 0.5 * nearest(sing, center));
        std::array<Complex, 4> P1, P2;
        for (size_t k = 0; k < 4; ++k) {
            auto f = [&](Complex z) { return forms[k](z); };
            P1[k] = circle_integral<Complex>(f, center, r, s.period_nodes);
            P2[k] = circle_integral<Complex>(f, center, 0.5 * r, s.period_nodes);
        }
        double scale = 1.0;
        for (size_t k = 0; k < 4; ++k) scale = std::max(scale, std::abs(P1[k]));
        for (size_t k = 0; k < 4; ++k)
            if (std::abs(P1[k] - P2[k]) > s.period_tol * scale)
                throw NonConvergent("period circles at " + p.str() + " disagree between radius " + std::to_string(r) +
                                    " and its half");
        PeriodRow row;
        row.puncture = p;
        row.radius = r;
        row.phi_dh = P1[0];
        row.psi_dh = P1[1];
        row.dh = P1[2];
        row.phipsi_dh = P1[3];
        row.antisymmetry = std::abs(P1[0] + std::conj(P1[1]));
        row.re_dh = std::abs(P1[2].real());
        row.re_phipsi_dh = std::abs(P1[3].real());
        double tol = s.period_tol * scale;
        row.pass = row.antisymmetry <= tol && row.re_dh <= tol && row.re_phipsi_dh <= tol;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------- frame change

WeierstrassData lorentz_frame_change(const WeierstrassData& data, const Mat2c& A) {
    if (!data.is_algebraic()) throw NotAlgebraic("frame change needs algebraic data");
    Mat2c Ac = A.conjugate();
    MeroExpr phi = mobius(data.phi(), A);
    MeroExpr psi = mobius(data.psi(), Ac);
    MeroExpr dh = (data.phi() * A(1, 0) + A(1, 1)) * (data.psi() * Ac(1, 0) + Ac(1, 1)) * data.dh();
    return WeierstrassData(phi, psi, dh, data.domain(), data.label(), data.degenerate_ok());
}

// ---------------------------------------------------------------- completeness

CompletenessResult completeness_probe(const WeierstrassData& data, const SpherePoint& puncture, const Settings& s,
                                      double ray_angle) {
    CompletenessResult res;
    Complex dir = std::polar(1.0, ray_angle);
    double d;
    if (puncture.infinite) {
        std::vector<Complex> img;
        for (Complex q : data.singular_points())
            if (q != Complex(0.0, 0.0)) img.push_back(1.0 / q);
        d = nearest(img, 0.0);
    } else {
        d = nearest(data.singular_points(), puncture.z);
    }
    double r0 = std::min(s.completeness_r0, 0.5 * d);
    // log of the chart density sqrt at radius r along the ray
    auto log_ds = [&](double r) {
        if (puncture.infinite) {
            Complex w = r * dir;
            return std::log(2.0) + data.log_rho_h(1.0 / w) - 2.0 * std::log(r);
        }
        return std::log(2.0) + data.log_rho_h(puncture.z + r * dir);
    };
    GaussRule g = gauss_legendre(16);
    std::vector<double> xs, ys;
    double sum = 0.0;
    for (int j = 0; j < s.completeness_levels; ++j) {
        double hi = std::log(r0) - j * std::log(2.0), lo = hi - std::log(2.0);
        double inc = 0.0;
        bool ok = true;
        for (size_t i = 0; i < g.x.size(); ++i) {
            double u = 0.5 * (hi + lo) + 0.5 * (hi - lo) * g.x[i];
            double v;
            try {
                v = std::exp(log_ds(std::exp(u)) + u);
            } catch (const Error&) {
                ok = false;
                break;
            }
            if (!std::isfinite(v)) {
                ok = false;
                break;
            }
            inc += 0.5 * (hi - lo) * g.w[i] * v;
        }
        if (!ok || !(inc > 0.0)) break;
        sum += inc;
        res.partial_sums.push_back(sum);
        xs.push_back(hi);
        ys.push_back(std::log(inc));
    }
    res.levels = static_cast<int>(xs.size());
    if (res.levels < 4) throw NonConvergent("completeness probe: too few finite levels at " + puncture.str());
    size_t k = std::min<size_t>(12, xs.size());
    size_t off = xs.size() - k;
    double mx = 0, my = 0;
    for (size_t i = off; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0, sxx = 0;
    for (size_t i = off; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    double slope = sxy / sxx;  // increment ~ r^(exponent + 1)
    res.exponent = slope - 1.0;
    res.divergent = slope < 0.5;
    return res;
}

}  // namespace sslab
