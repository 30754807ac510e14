#include "sslab/curv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sslab/errors.hpp"
#include "sslab/quadrature.hpp"

namespace sslab {

namespace {

// a = phi'/(phi - conj psi), b = conj(psi')/(phi - conj psi)
struct Pieces {
    Complex a, b;
};

Pieces pieces(const WeierstrassData& d, Complex z) {
    if (d.log_mode()) {
        Complex lp = d.phi().log_eval(z), ls = d.psi().log_eval(z);
        Complex Lp = d.phi().log_derivative(z), Ls = d.psi().log_derivative(z);
        Complex e = std::conj(ls) - lp;  // log(conj psi / phi)
        if (e.real() <= 0.0) {
            Complex q = std::exp(e), one = 1.0 - q;
            if (std::abs(one) < 1e-14) throw SingularPointError("phi = conj psi at " + format_complex(z));
            return {Lp / one, std::conj(Ls) * q / one};
        }
        Complex iq = std::exp(-e), one = 1.0 - iq;
        if (std::abs(one) < 1e-14) throw SingularPointError("phi = conj psi at " + format_complex(z));
        return {-Lp * iq / one, -std::conj(Ls) / one};
    }
    Complex p = d.phi()(z), q = d.psi()(z);
    Complex F = p - std::conj(q);
    if (std::abs(F) <= 1e-14 * (std::abs(p) + std::abs(q)) || F == Complex(0.0, 0.0))
        throw SingularPointError("phi = conj psi at " + format_complex(z));
    return {d.dphi()(z) / F, std::conj(d.dpsi()(z)) / F};
}

Complex density_form(const WeierstrassData& d, Complex z) {
    Pieces p = pieces(d, z);
    return 4.0 * p.a * p.b;
}

}  // namespace

// ---------------------------------------------------------------- pointwise

CurvatureSample curvature_at(const WeierstrassData& data, Complex z) {
    CurvatureSample c;
    c.z = z;
    Pieces p = pieces(data, z);
    double lr = data.log_rho_h(z);
    c.conformal = 4.0 * std::exp(2.0 * lr);
    Complex v = 4.0 * std::exp(-std::log(4.0) - 2.0 * lr) * p.a * p.b;
    c.K = -v.real();
    c.Kperp = v.imag();
    double r2 = std::sqrt(2.0);
    if (data.log_mode()) {
        Complex lp = data.phi().log_eval(z), ls = data.psi().log_eval(z), lh = data.dh().log_eval(z);
        Complex Lp = data.phi().log_derivative(z), Ls = data.psi().log_derivative(z);
        Complex e = std::conj(ls) - lp;
        double theta = e.real() <= 0.0 ? lp.imag() + std::arg(1.0 - std::exp(e))
                                       : -ls.imag() + std::arg(std::exp(-e) - 1.0);
        c.Omega = r2 * std::exp(Complex(0.0, -theta) + lh + lp) * Lp;
        c.OmegaStar = r2 * std::exp(Complex(0.0, theta) + lh + ls) * Ls;
    } else {
        Complex F = data.phi()(z) - std::conj(data.psi()(z));
        double theta = std::arg(F);
        Complex h = data.dh()(z);
        c.Omega = r2 * std::polar(1.0, -theta) * h * data.dphi()(z);
        c.OmegaStar = r2 * std::polar(1.0, theta) * h * data.dpsi()(z);
    }
    return c;
}

double hopf_consistency(const WeierstrassData& data, const std::vector<Complex>& samples) {
    double worst = 0.0;
    for (Complex z : samples) {
        CurvatureSample c = curvature_at(data, z);
        Complex lhs(-c.K, c.Kperp);
        Complex rhs = 8.0 / (c.conformal * c.conformal) * c.Omega * std::conj(c.OmegaStar);
        double scale = std::max(std::abs(lhs), std::numeric_limits<double>::min());
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

// ---------------------------------------------------------------- contour

Complex phi_side_circle(const WeierstrassData& data, Complex c, double r, int nodes) {
    Complex acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        Complex e = std::polar(1.0, 2.0 * kPi * (j + 0.5) / nodes);
        acc += pieces(data, c + r * e).a * (kI * r * e);
    }
    return acc * (2.0 * kPi / nodes);
}

Complex psi_side_circle(const WeierstrassData& data, Complex c, double r, int nodes) {
    Complex acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        Complex e = std::polar(1.0, 2.0 * kPi * (j + 0.5) / nodes);
        acc += pieces(data, c + r * e).b * std::conj(kI * r * e);
    }
    return acc * (2.0 * kPi / nodes);
}

namespace {

struct Limit {
    Complex value;
    bool converged = false;
    double error = 0.0;
};

Complex aitken(Complex a, Complex b, Complex c) {
    Complex d1 = b - a, d2 = c - b, dd = d2 - d1;
    if (std::abs(dd) <= 1e-300 || std::abs(d2) <= 1e-15 * (1.0 + std::abs(c))) return c;
    Complex x = c - d2 * d2 / dd;
    // only trust the correction when it is no larger than the last step
    return std::abs(x - c) <= 2.0 * std::abs(d2) ? x : c;
}

Limit extrapolate(const std::vector<Complex>& v, double agree) {
    Limit L;
    if (v.empty()) throw NonConvergent("no finite contour values");
    size_t n = v.size();
    if (n < 3) {
        L.value = v.back();
        L.error = n == 2 ? std::abs(v[1] - v[0]) : std::numeric_limits<double>::infinity();
        return L;
    }
    double scale = std::max(1.0, std::abs(v[n - 1]));
    L.converged = std::abs(v[n - 1] - v[n - 2]) <= agree * scale && std::abs(v[n - 2] - v[n - 3]) <= agree * scale;
    L.value = aitken(v[n - 3], v[n - 2], v[n - 1]);
    L.error = std::abs(L.value - v[n - 1]);
    return L;
}

void add_unique(std::vector<SpherePoint>& pts, const SpherePoint& p) {
    for (auto& q : pts)
        if (q.near(p, 1e-10)) return;
    pts.push_back(p);
}

// Finite poles of f plus infinity when f has a pole or essential point there.
std::vector<SpherePoint> poles_of(const MeroExpr& f) {
    std::vector<SpherePoint> out;
    for (Complex s : finite_singularities(f)) add_unique(out, SpherePoint::at(s));
    if (f.essential_at_infinity()) {
        add_unique(out, SpherePoint::infinity());
    } else {
        for (auto& t : f.terms())
            if (t.rat.num().degree() > t.rat.den().degree()) add_unique(out, SpherePoint::infinity());
    }
    return out;
}

}  // namespace

ContourSums contour_sums(const WeierstrassData& data, const Settings& s) {
    ContourSums out;
    std::vector<SpherePoint> phi_pts = data.domain().punctures, psi_pts = data.domain().punctures;
    for (auto& p : poles_of(data.phi())) add_unique(phi_pts, p);
    for (auto& p : poles_of(data.psi())) add_unique(psi_pts, p);
    std::vector<Complex> sing = data.singular_points();
    for (auto* v : {&phi_pts, &psi_pts})
        for (auto& p : *v)
            if (!p.infinite) sing.push_back(p.z);
    double far = 0.0;
    for (Complex q : sing) far = std::max(far, std::abs(q));

    auto limit_at = [&](const SpherePoint& p, bool phi_side) {
        std::vector<Complex> vals;
        double r0 = s.contour_r0, R0 = std::max(s.contour_R0, 2.0 * far + 1.0);
        if (!p.infinite) {
            for (Complex q : sing) {
                double d = std::abs(q - p.z);
                if (d > 1e-12 * (1.0 + std::abs(p.z))) r0 = std::min(r0, 0.5 * d);
            }
        }
        for (int j = 0; j < s.contour_levels; ++j) {
            Complex v;
            try {
                if (p.infinite) {
                    double R = std::ldexp(R0, j);
                    v = phi_side ? -phi_side_circle(data, 0.0, R, s.contour_nodes)
                                 : -psi_side_circle(data, 0.0, R, s.contour_nodes);
                } else {
                    double r = std::ldexp(r0, -j);
                    v = phi_side ? phi_side_circle(data, p.z, r, s.contour_nodes)
                                 : psi_side_circle(data, p.z, r, s.contour_nodes);
                }
            } catch (const Error&) {
                break;
            }
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) break;
            vals.push_back(2.0 * kI * v);
            // stop once phi - conj psi is dominated by rounding on the circle
            if (vals.size() >= 3 && !data.log_mode()) {
                Complex z = p.infinite ? Complex(std::ldexp(R0, j)) : p.z + std::ldexp(r0, -j);
                Complex a = data.phi()(z), b = std::conj(data.psi()(z));
                if (std::abs(a - b) < 1e-7 * std::max(std::abs(a), std::abs(b))) break;
            }
        }
        Limit L = extrapolate(vals, s.contour_agree);
        return ContourTerm{p, L.value, L.converged};
    };

    for (auto& p : phi_pts) {
        ContourTerm t = limit_at(p, true);
        out.phi_side += t.value;
        out.converged = out.converged && t.converged;
        out.phi_terms.push_back(t);
    }
    for (auto& p : psi_pts) {
        ContourTerm t = limit_at(p, false);
        out.psi_side += t.value;
        out.converged = out.converged && t.converged;
        out.psi_terms.push_back(t);
    }
    out.error = std::abs(out.phi_side - out.psi_side);
    return out;
}

TotalCurvature total_curvature_contour(const WeierstrassData& data, const Settings& s) {
    for (auto& p : data.domain().punctures)
        if (classify_end(data, p).kind == EndKind::BadSingular)
            throw BadEndError("bad singular end at " + p.str() + ": the boundary limit depends on the exhaustion");
    ContourSums cs = contour_sums(data, s);
    TotalCurvature t;
    t.method = "contour";
    t.K_total = -cs.phi_side.real();
    t.Kperp_total = cs.phi_side.imag();
    t.dual_residual = std::abs(cs.phi_side - cs.psi_side);
    t.error = t.dual_residual;
    t.levels = s.contour_levels;
    double scale = std::max(1.0, std::abs(cs.phi_side));
    t.certified = cs.converged && t.dual_residual <= s.contour_agree * scale;
    if (!cs.converged) throw NonConvergent("contour radius sequence did not settle");
    return t;
}

// ---------------------------------------------------------------- area

namespace {

struct Ring {
    Complex value;
    double abs_value = 0.0;
};

// Integral over s in [a, b] and the full circle in theta, z = e^{s + i theta}.
Ring ring(const WeierstrassData& data, double a, double b, int panels, int order, int ntheta) {
    GaussRule g = gauss_legendre(order);
    Ring out;
    double h = (b - a) / panels, dt = 2.0 * kPi / ntheta;
    for (int k = 0; k < panels; ++k) {
        double lo = a + k * h;
        for (size_t i = 0; i < g.x.size(); ++i) {
            double sv = lo + 0.5 * h * (g.x[i] + 1.0);
            double w = 0.5 * h * g.w[i] * dt;
            double r = std::exp(sv), r2 = r * r;
            for (int j = 0; j < ntheta; ++j) {
                Complex z = std::polar(r, (j + 0.5) * dt);
                Complex v;
                try {
                    v = density_form(data, z) * r2;
                } catch (const PoleError&) {
                    continue;
                } catch (const SingularPointError&) {
                    continue;
                }
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) continue;
                out.value += w * v;
                out.abs_value += w * std::abs(v);
            }
        }
    }
    return out;
}

}  // namespace

TotalCurvature total_curvature_area(const WeierstrassData& data, const Settings& s) {
    for (Complex p : data.domain().finite_punctures()) {
        if (p == Complex(0.0, 0.0)) continue;
        if (classify_end(data, SpherePoint::at(p)).kind != EndKind::Regular)
            throw UnsupportedExpr("area method needs regular ends away from 0 and infinity");
    }
    auto band = [&](double a, double b, int mult, Ring& acc, double& res_err) {
        int panels = std::max(1, static_cast<int>(std::ceil((b - a) * s.area_panels_per_unit)));
        Ring coarse = ring(data, a, b, panels * mult, s.area_gauss_order, s.area_theta_nodes * mult);
        Ring fine = ring(data, a, b, 2 * panels * mult, s.area_gauss_order, 2 * s.area_theta_nodes * mult);
        acc.value += fine.value;
        acc.abs_value += fine.abs_value;
        res_err += std::abs(fine.value - coarse.value);
    };
    std::vector<Complex> totals;
    std::vector<double> abs_totals, abs_steps;
    double res_err = 0.0;
    Ring acc;
    double m = s.area_margin0;
    band(std::log(m), -std::log(m), 1, acc, res_err);
    totals.push_back(acc.value);
    abs_totals.push_back(acc.abs_value);
    for (int j = 1; j < s.area_levels; ++j) {
        double mn = 0.5 * m;
        double before = acc.abs_value;
        band(std::log(mn), std::log(m), 1, acc, res_err);
        band(-std::log(m), -std::log(mn), 1, acc, res_err);
        m = mn;
        totals.push_back(acc.value);
        abs_totals.push_back(acc.abs_value);
        abs_steps.push_back(acc.abs_value - before);
    }
    size_t n = abs_steps.size();
    if (n >= 2) {
        double last = abs_steps[n - 1], prev = abs_steps[n - 2];
        double scale = std::max(1.0, abs_totals.back());
        if (last > 1e-6 * scale && last >= 0.9 * prev)
            throw NonConvergent("total curvature does not converge absolutely under the margin schedule");
    }
    TotalCurvature t;
    t.method = "area";
    t.levels = s.area_levels;
    size_t k = totals.size();
    Complex v = k >= 3 ? aitken(totals[k - 3], totals[k - 2], totals[k - 1]) : totals.back();
    t.K_total = -v.real();
    t.Kperp_total = v.imag();
    t.error = std::abs(v - totals.back()) + res_err;
    t.certified = t.error <= s.ledger_tol;
    return t;
}

// ---------------------------------------------------------------- ledger

std::string LedgerReport::failures() const {
    std::ostringstream o;
    for (auto& l : lines)
        if (!l.pass) o << l.name << " off by " << l.residual << "; ";
    return o.str();
}

LedgerReport assemble_ledger(const WeierstrassData& data, const std::vector<EndRecord>& ends,
                             const TotalCurvature& measured, const Settings& s) {
    if (!data.phi().is_algebraic() || !data.psi().is_algebraic())
        throw NotAlgebraic("the ledger needs algebraic phi and psi");
    LedgerReport r;
    r.deg_phi = degree(data.phi());
    r.deg_psi = degree(data.psi());
    r.ends = static_cast<int>(ends.size());
    for (auto& e : ends) {
        if (!e.index || !e.d_tilde) throw BadEndError("end at " + e.puncture.str() + " has no index or multiplicity");
        r.index_sum += *e.index;
        r.ind_plus_sum += e.ind_plus;
        r.d_tilde_sum += *e.d_tilde;
    }
    double K = measured.K_total, tol = s.ledger_tol;
    auto line = [&](const std::string& name, double predicted, double against, double t) {
        LedgerLine l{name, predicted, against, std::abs(predicted - against), false};
        l.pass = l.residual <= t;
        r.pass = r.pass && l.pass;
        r.lines.push_back(l);
    };
    int sp = r.ind_plus_sum + r.index_sum, sm = r.ind_plus_sum - r.index_sum;
    line("deg1", -4.0 * kPi * r.deg_phi + 2.0 * kPi * sp, K, tol);
    line("deg2", -4.0 * kPi * r.deg_psi + 2.0 * kPi * sm, K, tol);
    line("deg3", r.index_sum, r.deg_phi - r.deg_psi, 0.0);
    line("deg4", -2.0 * kPi * (r.deg_phi + r.deg_psi - r.ind_plus_sum), K, tol);
    line("jorge_meeks", 2.0 * kPi * (2 - r.ends - r.d_tilde_sum), K, tol);
    line("deg0", 0.0, measured.Kperp_total, s.kperp_tol);
    double q = K / (-4.0 * kPi);
    double qi = std::max(1.0, std::round(q));
    line("quantization", qi, q, tol);
    double bound = 4.0 * kPi * (1 - r.ends);
    LedgerLine co{"chern_osserman", bound, K, std::max(0.0, K - bound), false};
    co.pass = K <= bound + tol;
    r.pass = r.pass && co.pass;
    r.lines.push_back(co);
    return r;
}

LedgerReport gauss_bonnet_ledger(const WeierstrassData& data, const std::vector<EndRecord>& ends,
                                 const TotalCurvature& measured, const Settings& s) {
    LedgerReport r = assemble_ledger(data, ends, measured, s);
    if (!r.pass) throw InconsistentLedger("Gauss-Bonnet ledger: " + r.failures());
    return r;
}

}  // namespace sslab
