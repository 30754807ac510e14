#include <random>

#include "doctest.h"
#include "sslab/ends.hpp"
#include "sslab/errors.hpp"
#include "test_util.hpp"

using namespace sslab;

namespace {

MeroExpr z() { return MeroExpr::z(); }

const SpherePoint kZero = SpherePoint::at(0.0);
const SpherePoint kInf = SpherePoint::infinity();

WeierstrassData catenoid(double t) {
    return WeierstrassData(z() + t, MeroExpr::rational({-1.0}, {-t, 1.0}), MeroExpr::rational({-t, 1.0}, {0.0, 0.0, 1.0}),
                           PuncturedSphere{{kZero, kInf}}, "catenoid");
}

WeierstrassData singular1(Complex a) {
    MeroExpr q = MeroExpr::poly({a, 0.0, 1.0});
    return WeierstrassData(MeroExpr::monomial(2) * q, MeroExpr::monomial(4) / q, q * MeroExpr::monomial(-4),
                           PuncturedSphere{{kZero, kInf}}, "singular1");
}

}  // namespace

TEST_CASE("winding of z^m - conj(z)^n") {
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) {
            if (m == n) continue;
            Winding w = local_winding(MeroExpr::monomial(m), MeroExpr::monomial(n), 0.0, 0.5, Settings::defaults());
            CHECK(w.value == predicted_index(m, n));
            CHECK(std::abs(w.continuous - w.value) < 1e-6);
        }
}

TEST_CASE("vanishing orders from Taylor coefficients") {
    CHECK(vanishing_order(MeroExpr::monomial(3) + 2.0, 0.0) == 3);
    CHECK(vanishing_order(MeroExpr::poly({0.0, 0.0, 1.0}) * MeroExpr::poly({2.0, 1.0}), 0.0) == 2);
    MeroExpr f = MeroExpr::rational({1.0}, {1.0, 1.0});  // 1/(1+z)
    CHECK(vanishing_order(f, 1.0) == 1);
    CHECK_THROWS_AS(vanishing_order(MeroExpr(3.0), 0.0), NotIsolated);
}

TEST_CASE("catenoid ends are regular with multiplicity one") {
    auto d = catenoid(0.5);
    for (auto& e : end_table(d)) {
        CHECK(e.kind == EndKind::Regular);
        REQUIRE(e.index);
        CHECK(*e.index == 0);
        CHECK(e.ind_plus == 0);
        CHECK(e.d == 1);
        CHECK(e.d_tilde == 1);
    }
    auto chk = index_theorem_check(d, end_table(d), {});
    CHECK(chk.pass);
    CHECK(chk.deg_phi == 1);
}

TEST_CASE("catenoid limit t = 1 has a bad end at the origin") {
    auto d = catenoid(1.0);
    auto rec = classify_end(d, kZero);
    CHECK(rec.kind == EndKind::BadSingular);
    CHECK(rec.m == 1);
    CHECK(rec.n == 1);
    CHECK_THROWS_AS(end_index(d, kZero), BadEndError);
    auto full = analyze_end(d, kZero);
    CHECK_FALSE(full.index.has_value());
}

TEST_CASE("two good singular ends") {
    auto d = singular1(2.0);
    auto e0 = analyze_end(d, kZero);
    CHECK(e0.kind == EndKind::GoodSingular);
    CHECK(e0.m == 2);
    CHECK(e0.n == 4);
    CHECK(e0.index == 2);
    CHECK(e0.d_tilde == 1);
    auto ei = analyze_end(d, kInf);
    CHECK(ei.kind == EndKind::GoodSingular);
    CHECK(ei.index == -2);
    CHECK(ei.d_tilde == 3);
    CHECK(end_multiplicity(d, kInf) == std::pair<int, int>(5, 3));
    CHECK(index_theorem_check(d, {e0, ei}, {}).pass);
    CHECK_THROWS_AS(index_theorem_check(d, {e0}, {}), InconsistentLedger);
}

TEST_CASE("planar end multiplicities") {
    Complex lam(0.5, std::sqrt(3.0) / 2.0);
    Complex lb = std::conj(lam);
    for (int n = 2; n <= 3; ++n) {
        WeierstrassData d(MeroExpr::monomial(n, lb), MeroExpr::monomial(-n, lb), MeroExpr(lam),
                          PuncturedSphere{{kZero, kInf}}, "graph");
        CHECK(end_multiplicity(d, kZero).first == n - 1);
        CHECK(end_multiplicity(d, kInf).first == n + 1);
    }
}

TEST_CASE("ends at poles of both maps with interior singular points") {
    WeierstrassData d(MeroExpr::monomial(-2), MeroExpr::monomial(-3), MeroExpr(1.0), PuncturedSphere{{kZero, kInf}},
                      "incomplete");
    auto e0 = analyze_end(d, kZero), ei = analyze_end(d, kInf);
    CHECK(e0.index == 2);
    CHECK(ei.index == 2);
    CHECK(index_theorem_check(d, {e0, ei}, std::vector<int>(5, -1)).pass);
}

TEST_CASE("end records are invariant under frame changes") {
    std::mt19937 g(21);
    for (auto base : {catenoid(0.5), singular1(2.0)}) {
        auto ref = end_table(base);
        for (int k = 0; k < 5; ++k) {
            auto moved = lorentz_frame_change(base, testutil::rand_unimodular(g));
            auto got = end_table(moved);
            REQUIRE(got.size() == ref.size());
            for (size_t i = 0; i < ref.size(); ++i) {
                CHECK(got[i].kind == ref[i].kind);
                CHECK(got[i].index == ref[i].index);
                CHECK(got[i].d_tilde == ref[i].d_tilde);
            }
        }
    }
}

TEST_CASE("essential points give transcendental ends") {
    MeroExpr e = MeroExpr::exp(LaurentPoly::monomial(1, 0.3));
    WeierstrassData d(MeroExpr::monomial(2) * e, MeroExpr::monomial(-2, -1.0) * e,
                      MeroExpr::exp(LaurentPoly::monomial(1, -0.3)), PuncturedSphere{{kZero, kInf}}, "M");
    CHECK(classify_end(d, kInf).kind == EndKind::Transcendental);
    CHECK(classify_end(d, kZero).kind == EndKind::Regular);
    auto e0 = analyze_end(d, kZero);
    CHECK(e0.index == 0);
}
