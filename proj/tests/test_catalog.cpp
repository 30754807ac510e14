#include <cmath>
#include <random>

#include "doctest.h"
#include "sslab/catalog.hpp"
#include "sslab/curv.hpp"
#include "sslab/errors.hpp"
#include "sslab/locus.hpp"
#include "test_util.hpp"

using namespace sslab;
using testutil::rand_c;

namespace {

std::vector<Complex> regular_samples(const WeierstrassData& d, int n, unsigned seed) {
    std::mt19937 g(seed);
    std::vector<Complex> out;
    while (static_cast<int>(out.size()) < n) {
        Complex w = rand_c(g, 2.5);
        bool ok = std::abs(w) > 0.05;
        for (Complex s : d.singular_points()) ok = ok && std::abs(w - s) > 0.05;
        if (ok) out.push_back(w);
    }
    return out;
}

bool same_point(const SpherePoint& a, const SpherePoint& b) { return a.near(b, 1e-9); }

}  // namespace

TEST_CASE("params parse and reject") {
    Params p;
    p.parse_assignment("t = 0.25").parse_assignment("lambda=1+2i").parse_assignment("k=3").set("flag", true);
    CHECK(p.get_real("t", 0.0) == 0.25);
    CHECK(p.get_complex("lambda", 0.0) == Complex(1.0, 2.0));
    CHECK(p.get_int("k", 0) == 3);
    CHECK(p.get_bool("flag", false));
    CHECK(p.get_real("missing", 7.0) == 7.0);
    CHECK_THROWS_AS(p.get_real("lambda", 0.0), ParamError);
    CHECK_THROWS_AS(p.get_int("t", 0), ParamError);
    CHECK_THROWS_AS(Params().parse_assignment("novalue"), ParamError);
    Params q;
    q.set("c", Complex(0.1, -3.0));
    CHECK(q.get_complex("c", 0.0) == Complex(0.1, -3.0));
    CHECK_THROWS_AS(make_entry("catenoid", Params{{"tt", "0"}}), ParamError);
    CHECK_THROWS_AS(make_entry("no_such_surface"), ParamError);
}

TEST_CASE("parameter validation is sharp at the documented boundaries") {
    CHECK_THROWS_AS(catenoid(1.0), ParamError);
    CHECK_THROWS_AS(catenoid(-1.0), ParamError);
    CHECK_NOTHROW(catenoid(0.999));
    CHECK_NOTHROW(catenoid(1.0, 1.0, true));
    CHECK_THROWS_AS(catenoid(0.5, 0.0), ParamError);
    CHECK_THROWS_AS(helicoid_family(0.0, 0.0), ParamError);

    CHECK_THROWS_AS(enneper1(1.0), ParamError);
    CHECK_NOTHROW(enneper1(1.0, 1.0, true));
    CHECK_NOTHROW(enneper1(Complex(1.0, 1e-3)));
    CHECK_THROWS_AS(enneper2(-0.25), ParamError);
    CHECK_THROWS_AS(enneper2(Complex(0.0, 0.5)), ParamError);
    CHECK_NOTHROW(enneper2(-0.2500001));
    CHECK_NOTHROW(enneper2(Complex(0.0, 0.5000001)));
    CHECK_THROWS_AS(enneper_k(0, kI), ParamError);

    CHECK_THROWS_AS(knoid(3, 1.0, 0.0), ParamError);
    CHECK_THROWS_AS(knoid(3, 2.0, kI), ParamError);
    CHECK_THROWS_AS(knoid(1, std::sqrt(3.0) / 2.0, 0.5 * kI), ParamError);
    CHECK_THROWS_AS(knoid(3, 0.5 * kI, Complex(0.0, 0.0) + std::sqrt(1.25) * kI), ParamError);
    CHECK_NOTHROW(knoid(3, std::sqrt(3.0) / 2.0, 0.5 * kI));

    CHECK_THROWS_AS(graph2(1), ParamError);
    CHECK_THROWS_AS(essential_M(2, 0.0), ParamError);
    CHECK_THROWS_AS(essential_M(2, kPi / 2), ParamError);
    CHECK_THROWS_AS(essential_M(1, 0.3), ParamError);
    CHECK_NOTHROW(essential_M(1, 0.3, true));
    CHECK_NOTHROW(essential_E(2, 0.0, false, true));
    CHECK_THROWS_AS(essential_E(2, 0.0), ParamError);
    CHECK_THROWS_AS(singular1(0.0), ParamError);
    CHECK_THROWS_AS(singular2(0.0, 0.0), ParamError);
    CHECK_THROWS_AS(alias_palmer(enneper1(-1.0), -2.0), ParamError);
    CHECK_THROWS_AS(alias_palmer(enneper2(-1.0), kI), ParamError);
}

TEST_CASE("every default entry is isotropic and matches its regularity and period records") {
    for (const auto& info : list_entries()) {
        CAPTURE(info.name);
        CatalogEntry e = make_entry(info.name);
        REQUIRE(e.expected.has_value());
        auto pts = regular_samples(e.data, 100, 3);
        CHECK(lorentz_isotropy_check(e.data, pts) <= 1e-10);
        RegularityReport reg = regularity_report(e.data);
        CHECK((reg.condition1 && reg.condition2) == e.expected->pole_conditions);
        if (e.expected->periods_pass) {
            CAPTURE(e.expected->citation);
            CHECK(period_report(e.data).pass == *e.expected->periods_pass);
        }
    }
}

TEST_CASE("end tables match the expected records") {
    for (const auto& info : list_entries()) {
        CatalogEntry e = make_entry(info.name);
        if (e.expected->ends.empty()) continue;
        CAPTURE(info.name);
        auto table = end_table(e.data);
        for (const auto& x : e.expected->ends) {
            const EndRecord* rec = nullptr;
            for (const auto& r : table)
                if (same_point(r.puncture, x.puncture)) rec = &r;
            REQUIRE(rec != nullptr);
            CHECK(rec->kind == x.kind);
            if (x.index) CHECK(rec->index == x.index);
            if (x.d) CHECK(rec->d == x.d);
            if (x.d_tilde) CHECK(rec->d_tilde == x.d_tilde);
        }
    }
}

TEST_CASE("expected totals agree with the boundary integral for algebraic entries") {
    for (const auto& info : list_entries()) {
        CatalogEntry e = make_entry(info.name);
        if (!e.expected->K_total || !e.data.is_algebraic()) continue;
        CAPTURE(info.name);
        TotalCurvature tc = total_curvature_contour(e.data);
        CHECK(std::abs(tc.K_total - *e.expected->K_total) <= e.expected->tol);
        CHECK(std::abs(tc.Kperp_total - *e.expected->Kperp_total) <= e.expected->tol);
    }
    CatalogEntry g2 = graph2(3);
    CHECK(std::abs(total_curvature_contour(g2.data).K_total + 12.0 * kPi) < 1e-6);
    CatalogEntry kn = knoid(4, std::sqrt(3.0) / 2.0, 0.5 * kI);
    CHECK(std::abs(total_curvature_contour(kn.data).K_total + 12.0 * kPi) < 1e-6);
}

TEST_CASE("locus verdicts match the expected records") {
    for (const char* name : {"catenoid", "enneper1", "enneper2", "knoid", "graph2", "singular1", "singular2",
                             "maximal_catenoid", "incomplete_demo", "alias_palmer"}) {
        CAPTURE(name);
        CatalogEntry e = make_entry(name);
        REQUIRE(e.expected->locus_empty.has_value());
        LocusFinding f = scan(e.data, default_window(e.data), 256);
        CHECK(f.empty() == *e.expected->locus_empty);
    }
}

TEST_CASE("graph1: explicit components and Weierstrass data agree") {
    CHECK(graph1_form_mismatch() <= 1e-12);
    CatalogEntry e = graph1();
    auto [lo, hi] = *e.expected->density_range;
    std::mt19937 g(5);
    for (int i = 0; i < 1000; ++i) {
        double m = metric_density(e.data, rand_c(g, 4.0));
        CHECK(m >= lo - 1e-9);
        CHECK(m <= hi + 1e-9);
    }
}

TEST_CASE("knoid is stored as deformed components") {
    Complex a(std::sqrt(3.0) / 2.0, 0.0), b(0.0, 0.5);
    CatalogEntry e = knoid(3, a, b);
    CHECK(e.data.has_explicit_components());
    std::mt19937 g(9);
    for (int i = 0; i < 20; ++i) {
        Complex w = rand_c(g, 2.0);
        if (std::abs(std::abs(w) - 1.0) < 0.05) continue;
        CHECK(testutil::rel(e.data.phi()(w), w * w / (a + b)) < 1e-12);
        CHECK(testutil::rel(e.data.psi()(w), -1.0 / (w * w * (a + b))) < 1e-12);
        CVec4 v = e.data.xz_at(w);
        CHECK(std::abs(v(3) * a - v(2) * b) < 1e-12 * (1.0 + std::abs(v(2))));
    }
}

TEST_CASE("helicoid family period discrimination") {
    for (Complex lam : {Complex(0.0, 1.0), Complex(1.0, 1.0), Complex(0.0, -0.5)}) {
        CatalogEntry e = helicoid_family(0.3, lam);
        PeriodReport r = period_report(e.data);
        CHECK_FALSE(r.pass);
        CHECK(*e.expected->periods_pass == false);
        for (const auto& row : r.rows)
            if (!row.puncture.infinite) CHECK(std::abs(row.dh.real() + 2.0 * kPi * lam.imag()) <= 1e-9);
    }
    CHECK(period_report(helicoid_family(0.3, 2.0).data).pass);
    CHECK(*helicoid_family(0.3, kI).expected->embedded);
    CHECK_FALSE(*helicoid_family(0.3, Complex(1.0, 1.0)).expected->embedded);
}

TEST_CASE("Alias-Palmer deformation of the Enneper surface") {
    CatalogEntry e = alias_palmer(enneper1(-1.0), kI);
    CatalogEntry ref = enneper1(-kI);
    std::mt19937 g(2);
    for (int i = 0; i < 10; ++i) {
        Complex w = rand_c(g, 2.0);
        CHECK(testutil::rel(e.data.psi()(w), ref.data.psi()(w)) < 1e-14);
    }
    CHECK(regularity_report(e.data).pass());
    CHECK(period_report(e.data).pass);
    CHECK(scan(e.data, default_window(e.data), 256).empty());
    CatalogEntry c = alias_palmer(catenoid(0.0), kI);
    CHECK_FALSE(period_report(c.data).pass);
    CHECK_FALSE(*c.expected->periods_pass);
    CHECK_THROWS_AS(alias_palmer(catenoid(0.5), kI), ParamError);
}

TEST_CASE("completeness records") {
    CatalogEntry inc = incomplete_demo();
    CHECK_FALSE(completeness_probe(inc.data, SpherePoint::infinity()).divergent);
    CatalogEntry cat = catenoid(0.4);
    for (const auto& c : cat.expected->completeness) CHECK(completeness_probe(cat.data, c.puncture).divergent == c.divergent);
}

TEST_CASE("classical limits reduce to R^3") {
    for (const CatalogEntry& e : {catenoid(0.0), enneper1(-1.0), essential_E(2, 0.0, false, true),
                                  essential_C(1, 0.0, true, true)}) {
        CAPTURE(e.name);
        std::mt19937 g(4);
        for (int i = 0; i < 20; ++i) {
            Complex w = rand_c(g, 2.0);
            if (std::abs(w) < 0.05) continue;
            CHECK(std::abs(e.data.phi()(w) * e.data.psi()(w) + 1.0) < 1e-12);
            CHECK(std::abs(e.data.xz_at(w)(3)) < 1e-12 * (1.0 + e.data.xz_at(w).norm()));
        }
    }
}
