#include "sslab/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "sslab/errors.hpp"

namespace sslab {

namespace {

std::string num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

const EndRecord* find_end(const std::vector<EndRecord>& ends, const SpherePoint& p) {
    for (const auto& e : ends)
        if (e.puncture.near(p, 1e-9)) return &e;
    return nullptr;
}

void check(AnalysisReport& r, std::string name, std::string expected, std::string measured, bool pass) {
    r.checks.push_back({std::move(name), std::move(expected), std::move(measured), pass, false});
}

// Boolean verdict; a reproduced failure counts as a pass flagged expected-fail.
void verdict(AnalysisReport& r, const std::string& name, bool expected, bool measured) {
    Check c{name, expected ? "pass" : "fail", measured ? "pass" : "fail", expected == measured, false};
    c.expected_fail = !expected && !measured;
    r.checks.push_back(c);
}

std::vector<Complex> density_samples(const WeierstrassData& d, const Window& w, int n) {
    std::mt19937 gen(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Complex> out;
    while (static_cast<int>(out.size()) < n) {
        Complex z;
        if (w.shape == Window::Rect) {
            z = {w.lo.real() + u(gen) * (w.hi.real() - w.lo.real()), w.lo.imag() + u(gen) * (w.hi.imag() - w.lo.imag())};
        } else {
            double lo = w.shape == Window::Annulus ? std::log(w.rmin) : std::log(w.rmax) - 6.0;
            z = std::polar(std::exp(lo + u(gen) * (std::log(w.rmax) - lo)), 2.0 * kPi * u(gen));
        }
        bool ok = true;
        for (Complex q : d.singular_points()) ok = ok && std::abs(z - q) > 1e-3;
        if (ok) out.push_back(z);
    }
    return out;
}

}  // namespace

bool AnalysisReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

AnalysisReport analyze(const CatalogEntry& entry, const Settings& s, const AnalyzeOptions& opt) {
    AnalysisReport r;
    const WeierstrassData& d = entry.data;
    Expected ex = entry.expected.value_or(Expected{});
    r.name = entry.name;
    r.params = entry.params.str();
    r.citation = ex.citation.empty() ? entry.provenance : ex.citation;
    r.notes = ex.notes;
    r.algebraic = d.is_algebraic();
    auto guard = [&](const std::string& what, auto&& fn) {
        try {
            fn();
            return true;
        } catch (const Error& e) {
            r.errors.push_back(what + ": " + e.what());
            return false;
        }
    };

    // regularity and locus
    r.regularity = regularity_report(d);
    check(r, "pole_conditions", yesno(ex.pole_conditions), yesno(r.regularity.condition1 && r.regularity.condition2),
          (r.regularity.condition1 && r.regularity.condition2) == ex.pole_conditions);
    Window win = default_window(d, s);
    guard("locus", [&] {
        r.locus = scan(d, win, opt.locus_grid > 0 ? opt.locus_grid : s.locus_grid, s);
        r.regularity.locus_empty = r.locus->empty();
    });
    if (ex.locus_empty) {
        if (r.locus) verdict(r, "locus_empty", *ex.locus_empty, r.locus->empty());
        else check(r, "locus_empty", yesno(*ex.locus_empty), "error", false);
    }

    // periods
    bool periods_ok = guard("periods", [&] { r.periods = period_report(d, s); });
    if (ex.periods_pass) {
        if (periods_ok) verdict(r, "periods", *ex.periods_pass, r.periods.pass);
        else check(r, "periods", *ex.periods_pass ? "pass" : "fail", "error", false);
    }

    // ends
    for (const auto& p : d.domain().punctures)
        guard("end " + p.str(), [&] { r.ends.push_back(analyze_end(d, p, s)); });
    for (const auto& x : ex.ends) {
        std::string tag = "end " + x.puncture.str();
        const EndRecord* rec = find_end(r.ends, x.puncture);
        if (!rec) {
            check(r, tag + " kind", to_string(x.kind), "error", false);
            continue;
        }
        check(r, tag + " kind", to_string(x.kind), to_string(rec->kind), rec->kind == x.kind);
        if (x.index) check(r, tag + " index", opt_int(x.index), opt_int(rec->index), rec->index == x.index);
        if (x.d) check(r, tag + " d", opt_int(x.d), opt_int(rec->d), rec->d == x.d);
        if (x.d_tilde) check(r, tag + " d_tilde", opt_int(x.d_tilde), opt_int(rec->d_tilde), rec->d_tilde == x.d_tilde);
    }

    // completeness
    for (const auto& p : d.domain().punctures)
        guard("completeness " + p.str(), [&] { r.completeness.emplace_back(p, completeness_probe(d, p, s)); });
    for (const auto& c : ex.completeness) {
        std::string tag = "complete " + c.puncture.str();
        const CompletenessResult* got = nullptr;
        for (const auto& [p, res] : r.completeness)
            if (p.near(c.puncture, 1e-9)) got = &res;
        check(r, tag, c.divergent ? "divergent" : "convergent",
              got ? (got->divergent ? "divergent" : "convergent") : "error", got && got->divergent == c.divergent);
    }

    // total curvature
    bool bad_end = std::any_of(r.ends.begin(), r.ends.end(), [](const EndRecord& e) { return e.kind == EndKind::BadSingular; });
    guard("contour", [&] { r.contour = total_curvature_contour(d, s); });
    if (opt.area && (ex.K_total || bad_end)) guard("area", [&] { r.area = total_curvature_area(d, s); });
    if (ex.K_total) {
        double tol = ex.tol;
        check(r, "K_total contour", num(*ex.K_total), r.contour ? num(r.contour->K_total) : "error",
              r.contour && std::abs(r.contour->K_total - *ex.K_total) <= tol);
        if (ex.Kperp_total)
            check(r, "Kperp_total contour", num(*ex.Kperp_total), r.contour ? num(r.contour->Kperp_total) : "error",
                  r.contour && std::abs(r.contour->Kperp_total - *ex.Kperp_total) <= tol);
        if (opt.area) {
            double atol = std::max({1e-3, tol, r.area ? r.area->error : 0.0});
            check(r, "K_total area", num(*ex.K_total), r.area ? num(r.area->K_total) : "error",
                  r.area && std::abs(r.area->K_total - *ex.K_total) <= atol);
        }
    }
    if (bad_end) {
        bool refused = !r.contour;
        check(r, "bad end refusal", "contour refuses", refused ? "refused" : "returned a value", refused);
    }

    // Gauss-Bonnet ledger
    bool good_ends = !r.ends.empty() && r.ends.size() == d.domain().punctures.size() &&
                     std::all_of(r.ends.begin(), r.ends.end(), [](const EndRecord& e) { return e.index && e.d_tilde; });
    if (r.algebraic && good_ends && r.contour && ex.pole_conditions && ex.locus_empty.value_or(false)) {
        guard("ledger", [&] { r.ledger = assemble_ledger(d, r.ends, *r.contour, s); });
        if (r.ledger) check(r, "ledger", "consistent", r.ledger->pass ? "consistent" : r.ledger->failures(), r.ledger->pass);
    }

    // metric density bounds
    if (ex.density_range) {
        double lo = 1e300, hi = -1e300;
        for (Complex z : density_samples(d, win, 1000)) {
            double m = metric_density(d, z);
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        r.density_seen = std::make_pair(lo, hi);
        auto [elo, ehi] = *ex.density_range;
        check(r, "density range", "[" + num(elo) + ", " + num(ehi) + "]", "[" + num(lo) + ", " + num(hi) + "]",
              lo >= elo - 1e-9 && hi <= ehi + 1e-9);
    }

    // self-intersections
    if (opt.mesh && ex.intersection_clusters) {
        guard("self-intersections", [&] {
            SurfaceMesh m = sample_mesh(d, default_chart(d, s.mesh_res, s), s);
            r.intersections = self_intersection_scan(d, m, true, s);
        });
        int got = r.intersections ? static_cast<int>(r.intersections->clusters.size()) : -1;
        check(r, "self-intersection clusters", std::to_string(*ex.intersection_clusters),
              got < 0 ? "error" : std::to_string(got), got == *ex.intersection_clusters);
    }
    return r;
}

// ---------------------------------------------------------------- formats

std::string format_text(const AnalysisReport& r) {
    std::ostringstream o;
    o << r.name << (r.params.empty() ? "" : " (" + r.params + ")") << "\n";
    o << "  " << r.citation << "\n";
    if (!r.notes.empty()) o << "  note: " << r.notes << "\n";
    o << "regularity: pole conditions " << yesno(r.regularity.condition1 && r.regularity.condition2);
    if (r.regularity.partial) o << " (partial)";
    o << "\n";
    if (r.locus)
        o << "locus: " << to_string(r.locus->kind) << " in " << r.locus->window.str() << ", " << r.locus->points.size()
          << " points, " << r.locus->curves.size() << " curves, min |phi - conj psi| on grid " << num(r.locus->min_abs_F)
          << "\n";
    o << "periods: " << (r.periods.pass ? "pass" : "FAIL") << "\n";
    for (const auto& row : r.periods.rows)
        o << "  at " << row.puncture.str() << ": antisymmetry " << num(row.antisymmetry) << ", Re dh " << num(row.re_dh)
          << ", Re phi psi dh " << num(row.re_phipsi_dh) << "\n";
    o << "ends:\n";
    for (const auto& e : r.ends)
        o << "  " << e.puncture.str() << ": " << to_string(e.kind) << ", m " << e.m << ", n " << e.n << ", index "
          << opt_int(e.index) << ", d " << opt_int(e.d) << ", d_tilde " << opt_int(e.d_tilde) << "\n";
    for (const auto& [p, c] : r.completeness)
        o << "completeness at " << p.str() << ": " << (c.divergent ? "divergent" : "convergent") << " (ds ~ r^"
          << num(c.exponent) << " dr)\n";
    auto tc = [&](const char* tag, const std::optional<TotalCurvature>& t) {
        if (t)
            o << "total curvature (" << tag << "): K " << num(t->K_total) << ", Kperp " << num(t->Kperp_total)
              << ", error " << num(t->error) << (t->certified ? ", certified" : "") << "\n";
    };
    tc("contour", r.contour);
    tc("area", r.area);
    if (r.ledger) {
        o << "ledger: deg phi " << r.ledger->deg_phi << ", deg psi " << r.ledger->deg_psi << ", ends " << r.ledger->ends
          << "\n";
        for (const auto& l : r.ledger->lines)
            o << "  " << l.name << ": " << num(l.predicted) << " vs " << num(l.measured) << (l.pass ? "" : "  FAIL")
              << "\n";
    }
    if (r.density_seen) o << "metric density sampled in [" << num(r.density_seen->first) << ", " << num(r.density_seen->second) << "]\n";
    if (r.intersections) {
        o << "self-intersections: " << r.intersections->clusters.size() << " clusters\n";
        for (const auto& c : r.intersections->clusters) {
            o << "  at (" << num(c.position(0)) << ", " << num(c.position(1)) << ", " << num(c.position(2)) << ", "
              << num(c.position(3)) << ") preimages";
            for (Complex z : c.preimages) o << " " << format_complex(z);
            o << "\n";
        }
    }
    for (const auto& e : r.errors) o << "not computed: " << e << "\n";
    o << "checks:\n";
    for (const auto& c : r.checks)
        o << "  [" << (c.pass ? (c.expected_fail ? "expected-fail" : "ok") : "MISMATCH") << "] " << c.name << ": expected "
          << c.expected << ", measured " << c.measured << "\n";
    o << "result: " << (r.pass() ? "PASS" : "FAIL") << "\n";
    return o.str();
}

std::string format_kv(const AnalysisReport& r) {
    std::ostringstream o;
    o << "entry=" << r.name << "\n";
    o << "params=" << r.params << "\n";
    o << "pole_conditions=" << yesno(r.regularity.condition1 && r.regularity.condition2) << "\n";
    if (r.locus) o << "locus.kind=" << to_string(r.locus->kind) << "\nlocus.roots=" << r.locus->roots().size() << "\n";
    o << "periods.pass=" << yesno(r.periods.pass) << "\n";
    for (size_t i = 0; i < r.ends.size(); ++i) {
        const auto& e = r.ends[i];
        std::string k = "end." + std::to_string(i) + ".";
        o << k << "point=" << e.puncture.str() << "\n" << k << "kind=" << to_string(e.kind) << "\n"
          << k << "index=" << opt_int(e.index) << "\n" << k << "d=" << opt_int(e.d) << "\n"
          << k << "d_tilde=" << opt_int(e.d_tilde) << "\n";
    }
    for (size_t i = 0; i < r.completeness.size(); ++i)
        o << "complete." << i << "=" << r.completeness[i].first.str() << ":"
          << (r.completeness[i].second.divergent ? "divergent" : "convergent") << "\n";
    if (r.contour) o << "contour.K=" << num(r.contour->K_total) << "\ncontour.Kperp=" << num(r.contour->Kperp_total) << "\n";
    if (r.area) o << "area.K=" << num(r.area->K_total) << "\narea.Kperp=" << num(r.area->Kperp_total) << "\n";
    if (r.ledger)
        for (const auto& l : r.ledger->lines) o << "ledger." << l.name << "=" << (l.pass ? "pass" : "fail") << "\n";
    if (r.intersections) o << "intersections=" << r.intersections->clusters.size() << "\n";
    for (size_t i = 0; i < r.checks.size(); ++i) {
        const auto& c = r.checks[i];
        o << "check." << i << "=" << c.name << ":" << (c.pass ? (c.expected_fail ? "expected-fail" : "ok") : "mismatch")
          << "\n";
    }
    o << "result=" << (r.pass() ? "pass" : "fail") << "\n";
    return o.str();
}

}  // namespace sslab
