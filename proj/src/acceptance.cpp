#include "sslab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "sslab/catalog.hpp"
#include "sslab/curv.hpp"
#include "sslab/ends.hpp"
#include "sslab/errors.hpp"
#include "sslab/locus.hpp"
#include "sslab/mesh.hpp"

namespace sslab {

namespace {

const SpherePoint kZero = SpherePoint::at(0.0);
const SpherePoint kInf = SpherePoint::infinity();

std::string g(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Collects failures; the criterion passes when none were recorded.
struct Tally {
    std::vector<std::string> fails;
    std::string info;

    void need(bool ok, const std::string& what) {
        if (!ok) fails.push_back(what);
    }
    CriterionResult result(int id, const std::string& title) const {
        CriterionResult r;
        r.id = id;
        r.title = title;
        r.pass = fails.empty();
        std::string d;
        for (const auto& f : fails) d += (d.empty() ? "" : "; ") + f;
        r.detail = fails.empty() ? info : d;
        return r;
    }
};

std::vector<Complex> sample_points(const WeierstrassData& d, int n, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    std::vector<Complex> out;
    while (static_cast<int>(out.size()) < n) {
        Complex z(u(gen), u(gen));
        bool ok = std::abs(z) > 0.05 && std::abs(std::abs(z) - 1.0) > 0.02;
        for (Complex q : d.singular_points()) ok = ok && std::abs(z - q) > 0.05;
        if (ok) out.push_back(z);
    }
    return out;
}

Mat2c unimodular(std::mt19937& gen) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    Complex a(1.2 + u(gen), u(gen)), b(u(gen), u(gen)), c(u(gen), u(gen));
    Mat2c A;
    A << a, b, c, (1.0 + b * c) / a;
    return A;
}

// ---------------------------------------------------------------- criteria

Tally c1(const Settings& s) {
    Tally t;
    double worst_c = 0.0, worst_a = 0.0;
    for (double tt : {0.0, 0.4, 0.9}) {
        CatalogEntry e = catenoid(tt, 1.0);
        TotalCurvature c = total_curvature_contour(e.data, s);
        TotalCurvature a = total_curvature_area(e.data, s);
        double dc = std::hypot(c.K_total + 4.0 * kPi, c.Kperp_total);
        double da = std::hypot(a.K_total - c.K_total, a.Kperp_total - c.Kperp_total);
        worst_c = std::max(worst_c, dc);
        worst_a = std::max(worst_a, da);
        t.need(dc <= 1e-8, "t=" + g(tt) + " contour off by " + g(dc));
        t.need(da <= 1e-3, "t=" + g(tt) + " area differs by " + g(da));
    }
    t.info = "contour within " + g(worst_c) + ", area within " + g(worst_a);
    return t;
}

Tally c2(const Settings& s) {
    Tally t;
    std::string info;
    for (int k : {2, 3}) {
        CatalogEntry e = essential_M(k, 0.3);
        double K = -4.0 * kPi * k;
        TotalCurvature c = total_curvature_contour(e.data, s);
        TotalCurvature a = total_curvature_area(e.data, s);
        for (const auto* m : {&c, &a}) {
            std::string tag = "k=" + std::to_string(k) + " " + m->method;
            t.need(std::abs(m->K_total - K) <= 5e-3, tag + " K off by " + g(std::abs(m->K_total - K)));
            t.need(std::abs(m->Kperp_total) <= 5e-3, tag + " Kperp " + g(m->Kperp_total));
        }
        info += (info.empty() ? "" : ", ") + std::string("k=") + std::to_string(k) + ": contour " +
                g(std::abs(c.K_total - K)) + ", area " + g(std::abs(a.K_total - K));
    }
    t.info = "deviations " + info;
    return t;
}

Tally c3(const Settings& s) {
    Tally t;
    CatalogEntry e = singular1(2.0);
    auto ends = end_table(e.data, s);
    const EndRecord* e0 = nullptr;
    const EndRecord* einf = nullptr;
    for (const auto& r : ends) (r.puncture.infinite ? einf : e0) = &r;
    t.need(e0 && e0->index == 2, "ind_0 is not +2");
    t.need(einf && einf->index == -2, "ind_inf is not -2");
    t.need(e0 && e0->d_tilde == 1, "d_tilde_0 is not 1");
    t.need(einf && einf->d_tilde == 3, "d_tilde_inf is not 3");
    for (const auto* r : {e0, einf})
        if (r) t.need(std::abs(r->winding - *r->index) <= 1e-6, "winding not certified at " + r->puncture.str());
    TotalCurvature c = total_curvature_contour(e.data, s);
    LedgerReport L = assemble_ledger(e.data, ends, c, s);
    double target = -8.0 * kPi;
    t.need(std::abs(c.K_total - target) <= 1e-3, "measured K " + g(c.K_total));
    for (const auto& l : L.lines) {
        if (l.name == "deg3") {
            t.need(l.pass, "deg3 index sum fails");
        } else if (l.name == "deg1" || l.name == "deg2" || l.name == "deg4" || l.name == "jorge_meeks") {
            t.need(std::abs(l.predicted - target) <= 1e-3, l.name + " predicts " + g(l.predicted));
            t.need(l.pass, l.name + " inconsistent");
        }
    }
    t.info = "indices +2/-2, d_tilde 1/3, all identities at -8pi (K " + g(c.K_total) + ")";
    return t;
}

Tally c4(const Settings& s) {
    Tally t;
    double worst = 0.0;
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) {
            if (m == n) continue;
            Winding w = local_winding(MeroExpr::monomial(m), MeroExpr::monomial(n), 0.0, 0.5, s);
            int want = predicted_index(m, n);
            worst = std::max(worst, std::abs(w.continuous - want));
            t.need(w.value == want && std::abs(w.continuous - want) <= 1e-6,
                   "m=" + std::to_string(m) + " n=" + std::to_string(n) + " gives " + g(w.continuous));
        }
    t.info = "6 pairs, largest deviation " + g(worst);
    return t;
}

Tally c5(const Settings& s) {
    Tally t;
    std::vector<CatalogEntry> passing = {catenoid(0.5), enneper1(-1.0), enneper2(-1.0, kI), enneper_k(2, kI),
                                         knoid(3, std::sqrt(3.0) / 2.0, 0.5 * kI), graph1(), graph2(2),
                                         essential_M(2, 0.3), singular1(2.0), singular2()};
    for (const auto& e : passing) t.need(period_report(e.data, s).pass, e.name + " periods fail");
    Complex lam = kI;
    PeriodReport h = period_report(helicoid_family(0.0, lam).data, s);
    t.need(!h.pass, "helicoid periods pass");
    double dev = 1e300;
    for (const auto& row : h.rows)
        if (!row.puncture.infinite) dev = std::abs(row.dh.real() + 2.0 * kPi * lam.imag());
    t.need(dev <= 1e-9, "Re of the dh period off by " + g(dev));
    t.info = std::to_string(passing.size()) + " entries pass, helicoid fails with Re period error " + g(dev);
    return t;
}

Tally c6(const Settings& s) {
    Tally t;
    CatalogEntry neg = enneper2(-1.0);
    CatalogEntry pos = enneper2(1.0, 1.0, true);
    LocusFinding a = scan(neg.data, default_window(neg.data, s), s.locus_grid, s);
    LocusFinding b = scan(pos.data, default_window(pos.data, s), s.locus_grid, s);
    t.need(a.empty(), "c=-1 locus not empty");
    t.need(!b.empty(), "c=1 locus empty");
    double off_axis = 0.0;
    for (Complex z : b.roots()) off_axis = std::max(off_axis, std::abs(z.imag()));
    t.need(off_axis <= 1e-8, "c=1 roots leave Im z = 0 by " + g(off_axis));
    auto margin = [](Complex c) { return c.real() - c.imag() * c.imag() + 0.25; };
    t.need((margin(-1.0) < 0.0) == a.empty(), "c=-1 verdict disagrees with the sign of the margin");
    t.need((margin(1.0) < 0.0) == b.empty(), "c=1 verdict disagrees with the sign of the margin");
    t.info = "c=-1 empty, c=1 " + std::to_string(b.roots().size()) + " real roots";
    return t;
}

Tally c7(const Settings& s) {
    Tally t;
    for (const CatalogEntry& e : {enneper1(1.0, 1.0, true), maximal_catenoid()}) {
        LocusFinding f = scan(e.data, default_window(e.data, s), s.locus_grid, s);
        t.need(!f.curves.empty(), e.name + " has no curve finding");
        double res = 0.0, rad = 0.0;
        size_t n = 0;
        for (const auto& c : f.curves) {
            res = std::max(res, c.max_residual);
            for (Complex z : c.samples) rad = std::max(rad, std::abs(std::abs(z) - 1.0)), ++n;
        }
        t.need(res <= 1e-10, e.name + " residual " + g(res));
        t.need(rad <= 1e-8, e.name + " samples leave |z| = 1 by " + g(rad));
        t.info += (t.info.empty() ? "" : ", ") + e.name + " " + std::to_string(n) + " samples";
    }
    return t;
}

Tally c8(const Settings& s) {
    Tally t;
    CatalogEntry e = enneper_k(1, kI, 1.0);
    IntersectionReport r = self_intersection_scan(e.data, sample_mesh(e.data, default_chart(e.data, 128, s), s), true, s);
    t.need(r.clusters.size() == 2, "enneper_k gives " + std::to_string(r.clusters.size()) + " clusters");
    double dev = 0.0;
    for (const auto& c : r.clusters) {
        t.need(c.preimages.size() == 2, "cluster with " + std::to_string(c.preimages.size()) + " preimages");
        for (Complex z : c.preimages) dev = std::max(dev, std::abs(std::abs(z) - std::sqrt(3.0)));
    }
    t.need(dev <= 1e-4, "preimage moduli off sqrt3 by " + g(dev));
    for (const CatalogEntry& x : {catenoid(0.5), knoid(3, std::sqrt(3.0) / 2.0, 0.5 * kI)}) {
        IntersectionReport q = self_intersection_scan(x.data, sample_mesh(x.data, default_chart(x.data, 128, s), s), true, s);
        t.need(q.clusters.empty(), x.name + " reports " + std::to_string(q.clusters.size()) + " clusters");
    }
    t.info = "2 clusters, moduli within " + g(dev) + " of sqrt3; catenoid and knoid empty";
    return t;
}

// Five-point Laplacian of the position at steps h and h/2. Polynomial
// coordinates of degree <= 3 make it vanish to rounding.
std::pair<double, double> discrete_laplacian(const WeierstrassData& d, Complex z, const Settings& s) {
    auto lap = [&](double h) {
        Vec4 acc = Vec4::Zero();
        for (Complex dz : {Complex(h, 0), Complex(-h, 0), Complex(0, h), Complex(0, -h)})
            acc += immerse(d, PathSpec::line(z, z + dz), s);
        return acc.norm() / (h * h);
    };
    return {lap(0.1), lap(0.05)};
}

Tally c9(const Settings& s) {
    Tally t;
    double iso = 0.0, met = 0.0, hopf = 0.0;
    int entries = 0;
    for (const auto& info : list_entries()) {
        CatalogEntry e = make_entry(info.name);
        auto pts = sample_points(e.data, 60, 21);
        iso = std::max(iso, lorentz_isotropy_check(e.data, pts));
        for (Complex z : pts) {
            CVec4 v = e.data.xz_at(z);
            double a = metric_density(e.data, z), b = 2.0 * lorentz_hdot(v, v).real();
            met = std::max(met, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
        std::vector<Complex> regular;
        for (Complex z : pts) {
            try {
                curvature_at(e.data, z);
                regular.push_back(z);
            } catch (const Error&) {
            }
        }
        hopf = std::max(hopf, hopf_consistency(e.data, regular));
        ++entries;
    }
    t.need(iso <= 1e-10, "isotropy " + g(iso));
    t.need(met <= 1e-10, "metric identity " + g(met));
    t.need(hopf <= 1e-9, "hopf consistency " + g(hopf));

    std::string ratios;
    for (const CatalogEntry& e : {catenoid(0.5), enneper2(-1.0), singular1(2.0), essential_M(2, 0.3), graph1()}) {
        auto [a, b] = discrete_laplacian(e.data, Complex(0.7, 0.4), s);
        if (a <= 1e-6) {
            t.need(b <= 1e-6, e.name + " Laplacian grows on refinement");
            ratios += " exact";
            continue;
        }
        double r = a / b;
        t.need(r > 3.5 && r < 4.5, e.name + " Laplacian ratio " + g(r));
        ratios += " " + g(r);
    }

    int dt_checked = 0;
    double integrality = 0.0;
    for (const auto& info : list_entries()) {
        CatalogEntry e = make_entry(info.name);
        if (!e.expected || !e.expected->periods_pass.value_or(false) || !e.expected->locus_empty.value_or(false))
            continue;
        std::vector<EndRecord> ends;
        bool complete = true;
        for (const auto& p : e.data.domain().punctures) {
            EndRecord r;
            try {
                r = analyze_end(e.data, p, s);
            } catch (const Error& x) {
                t.need(false, e.name + " end at " + p.str() + ": " + x.what());
                complete = false;
                continue;
            }
            if (r.d_tilde) {
                t.need(*r.d_tilde >= 1, e.name + " d_tilde " + std::to_string(*r.d_tilde) + " at " + p.str());
                ++dt_checked;
            } else {
                complete = false;
            }
            ends.push_back(r);
        }
        if (!e.data.is_algebraic() || !complete) continue;
        TotalCurvature c;
        try {
            c = total_curvature_contour(e.data, s);
        } catch (const Error& x) {
            t.need(false, e.name + " contour: " + x.what());
            continue;
        }
        double q = c.K_total / (-4.0 * kPi);
        integrality = std::max(integrality, std::abs(q - std::round(q)));
        t.need(std::abs(q - std::round(q)) <= 1e-6, e.name + " K/(-4pi) = " + g(q));
        LedgerReport L = assemble_ledger(e.data, ends, c, s);
        for (const auto& l : L.lines)
            if (l.name == "chern_osserman") t.need(l.pass, e.name + " violates the Chern-Osserman bound");
    }

    std::mt19937 gen(31);
    double moeb = 0.0;
    for (const CatalogEntry& e : {catenoid(0.4), singular1(2.0), enneper2(-1.0)}) {
        TotalCurvature c0 = total_curvature_contour(e.data, s);
        auto ends0 = end_table(e.data, s);
        for (int rep = 0; rep < 2; ++rep) {
            WeierstrassData f = lorentz_frame_change(e.data, unimodular(gen));
            TotalCurvature c1;
            try {
                c1 = total_curvature_contour(f, s);
            } catch (const Error& x) {
                t.need(false, e.name + " frame change " + std::to_string(rep) + ": " + x.what());
                continue;
            }
            moeb = std::max(moeb, std::hypot(c1.K_total - c0.K_total, c1.Kperp_total - c0.Kperp_total));
            auto ends1 = end_table(f, s);
            for (size_t i = 0; i < ends0.size() && i < ends1.size(); ++i)
                t.need(ends0[i].index == ends1[i].index, e.name + " index changes under a frame change");
        }
    }
    t.need(moeb <= 1e-6, "totals move by " + g(moeb) + " under frame changes");
    t.info = std::to_string(entries) + " entries: isotropy " + g(iso) + ", metric " + g(met) + ", hopf " + g(hopf) +
             ", " + std::to_string(dt_checked) + " ends with d_tilde >= 1, integrality " + g(integrality) +
             ", frame invariance " + g(moeb) + ", Laplacian ratios" + ratios;
    return t;
}

Tally c10(const Settings& s) {
    Tally t;
    CatalogEntry cat = catenoid(0.5), m = essential_M(2, 0.3), inc = incomplete_demo();
    for (const auto* e : {&cat, &m})
        for (const auto& p : {kZero, kInf}) {
            CompletenessResult r = completeness_probe(e->data, p, s);
            t.need(r.divergent, e->name + " at " + p.str() + " looks convergent");
        }
    CompletenessResult r = completeness_probe(inc.data, kInf, s);
    t.need(!r.divergent, "incomplete_demo at inf looks divergent");
    t.info = "catenoid and M_{2,0.3} divergent at both ends; incomplete_demo convergent at inf (ds ~ r^" +
             g(r.exponent) + " dr)";
    return t;
}

Tally c11(const Settings& s) {
    Tally t;
    CatalogEntry e = catenoid(1.0, 1.0, true);
    EndRecord r = classify_end(e.data, kZero);
    t.need(r.kind == EndKind::BadSingular, "z=0 classified " + to_string(r.kind));
    std::string contour = "returned a value", area = "returned a value";
    try {
        total_curvature_contour(e.data, s);
    } catch (const BadEndError&) {
        contour = "BadEndError";
    } catch (const Error& x) {
        contour = x.what();
    }
    try {
        total_curvature_area(e.data, s);
    } catch (const NonConvergent&) {
        area = "NonConvergent";
    } catch (const Error& x) {
        area = x.what();
    }
    t.need(contour == "BadEndError", "contour " + contour);
    t.need(area == "NonConvergent", "area " + area);
    t.info = "BadSingular at 0; contour BadEndError; area NonConvergent";
    return t;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Tally(const Settings&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "catenoid quantization", c1},
        {2, "essential-singularity totals", c2},
        {3, "index ledger", c3},
        {4, "winding table", c4},
        {5, "period discrimination", c5},
        {6, "regularity frontier", c6},
        {7, "curve locus", c7},
        {8, "self-intersection", c8},
        {9, "structural identities", c9},
        {10, "completeness and incompleteness", c10},
        {11, "bad-end refusal", c11},
    };
    return list;
}

}  // namespace

bool AcceptanceReport::pass() const {
    return !results.empty() && std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

AcceptanceReport run_acceptance(const Settings& s, const std::vector<int>& only, std::ostream* progress) {
    AcceptanceReport rep;
    for (const auto& c : criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = c.run(s).result(c.id, c.title);
        } catch (const std::exception& e) {
            r.id = c.id;
            r.title = c.title;
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (progress) *progress << format_result(r) << std::endl;
        rep.results.push_back(r);
    }
    return rep;
}

std::string format_result(const CriterionResult& r) {
    char t[32];
    std::snprintf(t, sizeof t, "%.1fs", r.seconds);
    return "criterion " + std::to_string(r.id) + ": " + (r.pass ? "PASS" : "FAIL") + " " + r.title + " (" + r.detail +
           ", " + t + ")";
}

std::string format_acceptance(const AcceptanceReport& r) {
    std::ostringstream o;
    for (const auto& c : r.results) o << format_result(c) << "\n";
    int passed = static_cast<int>(std::count_if(r.results.begin(), r.results.end(), [](auto& c) { return c.pass; }));
    o << passed << "/" << r.results.size() << " criteria passed\n";
    return o.str();
}

std::string format_acceptance_kv(const AcceptanceReport& r) {
    std::ostringstream o;
    for (const auto& c : r.results) o << "criterion." << c.id << "=" << (c.pass ? "pass" : "fail") << "\n";
    o << "result=" << (r.pass() ? "pass" : "fail") << "\n";
    return o.str();
}

}  // namespace sslab
