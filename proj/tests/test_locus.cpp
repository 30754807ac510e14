#include <cmath>
#include <random>

#include "doctest.h"
#include "sslab/errors.hpp"
#include "sslab/locus.hpp"
#include "test_util.hpp"

using namespace sslab;

namespace {

MeroExpr z() { return MeroExpr::z(); }
const SpherePoint kZero = SpherePoint::at(0.0);
const SpherePoint kInf = SpherePoint::infinity();

WeierstrassData enneper1(Complex c) {
    return WeierstrassData(z(), MeroExpr::monomial(-1, c), z(), PuncturedSphere{{kInf}}, "enneper1");
}

WeierstrassData enneper2(Complex c, Complex s = kI) {
    return WeierstrassData(z() + 1.0, MeroExpr::monomial(-1, c), MeroExpr::monomial(1, s), PuncturedSphere{{kInf}},
                           "enneper2");
}

WeierstrassData catenoid(double t) {
    return WeierstrassData(z() + t, MeroExpr::rational({-1.0}, {-t, 1.0}), MeroExpr::rational({-t, 1.0}, {0.0, 0.0, 1.0}),
                           PuncturedSphere{{kZero, kInf}}, "catenoid");
}

double residual(const WeierstrassData& d, Complex w) {
    return std::abs(d.phi()(w) - std::conj(d.psi()(w))) / (1.0 + std::abs(d.phi()(w)));
}

// Smallest |phi - conj psi| on a dense grid, an independent check on emptiness.
double brute_min(const WeierstrassData& d, const Window& w, int n) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex p;
            if (w.shape == Window::Annulus) {
                double r = std::exp(std::log(w.rmin) + (std::log(w.rmax) - std::log(w.rmin)) * i / (n - 1));
                p = std::polar(r, 2.0 * kPi * (j + 0.5) / n);
            } else {
                double R = w.shape == Window::Disc ? w.rmax : 0.0;
                Complex lo = w.shape == Window::Disc ? Complex(-R, -R) : w.lo;
                Complex hi = w.shape == Window::Disc ? Complex(R, R) : w.hi;
                p = Complex(lo.real() + (hi.real() - lo.real()) * (i + 0.5) / n,
                            lo.imag() + (hi.imag() - lo.imag()) * (j + 0.5) / n);
                if (!w.contains(p)) continue;
            }
            try {
                best = std::min(best, std::abs(d.phi()(p) - std::conj(d.psi()(p))));
            } catch (const Error&) {
            }
        }
    return best;
}

}  // namespace

TEST_CASE("regular catenoid has an empty locus") {
    auto d = catenoid(0.5);
    Window w = Window::annulus(0.01, 100.0);
    auto f = scan(d, w, 256);
    CHECK(f.empty());
    CHECK(brute_min(d, w, 2048) > 1e-3);
}

TEST_CASE("enneper2 regularity frontier") {
    auto good = enneper2(-1.0);
    auto v = regularity_verdict(good, {Window::disc(10.0)});
    CHECK(v.pass);
    CHECK(brute_min(good, Window::disc(10.0), 1024) > 1e-3);
    auto bad = enneper2(1.0);
    auto f = scan(bad, Window::disc(10.0), 256);
    CHECK(f.kind == LocusKind::IsolatedPoints);
    REQUIRE(f.points.size() == 2);
    double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (auto& p : f.points) {
        CHECK(std::abs(p.z.imag()) < 1e-9);
        CHECK((std::abs(p.z.real() - g) < 1e-9 || std::abs(p.z.real() + 1.0 + g) < 1e-9));
        CHECK(p.residual <= 1e-10 * (1.0 + std::abs(bad.phi()(p.z))));
        CHECK(p.bad);  // m = n = 1
    }
    CHECK_FALSE(regularity_verdict(bad, {Window::disc(10.0)}).pass);
}

TEST_CASE("circle loci") {
    WeierstrassData maximal(z(), MeroExpr::monomial(-1), MeroExpr::monomial(-1), PuncturedSphere{{kZero, kInf}},
                            "maximal catenoid");
    for (auto d : {enneper1(1.0), maximal}) {
        auto f = scan(d, default_window(d), 256);
        REQUIRE(f.kind == LocusKind::Curve);
        size_t total = 0;
        for (auto& c : f.curves) {
            CHECK(c.max_residual <= 1e-10);
            total += c.samples.size();
            for (Complex w : c.samples) CHECK(std::abs(std::abs(w) - 1.0) < 1e-9);
            // midpoints of neighbouring samples refine back onto the curve
            for (size_t i = 0; i + 1 < c.samples.size(); i += 17) {
                auto m = refine_root(d, 0.5 * (c.samples[i] + c.samples[i + 1]));
                REQUIRE(m);
                CHECK(residual(d, *m) <= 1e-10);
                CHECK(std::abs(std::abs(*m) - 1.0) < 1e-9);
            }
        }
        CHECK(total >= 8);
    }
}

TEST_CASE("local data at isolated zeros") {
    auto mk = [](MeroExpr a, MeroExpr b) { return WeierstrassData(a, b, MeroExpr(1.0), PuncturedSphere{{kInf}}, "x"); };
    auto p = local_data(mk(MeroExpr::monomial(2), MeroExpr::monomial(3)), 0.0);
    CHECK(p.m == 2);
    CHECK(p.n == 3);
    CHECK(p.index == 2);
    auto q = local_data(mk(MeroExpr::monomial(3), MeroExpr::monomial(2)), 0.0);
    CHECK(q.m == 3);
    CHECK(q.n == 2);
    CHECK(q.index == -2);
    auto r = local_data(mk(z(), MeroExpr::monomial(1, 2.0)), 0.0);
    CHECK(r.m == 1);
    CHECK(r.n == 1);
    CHECK(r.bad);
    CHECK_FALSE(r.index.has_value());
}

TEST_CASE("interior singular points of the incomplete example") {
    WeierstrassData d(MeroExpr::monomial(-2), MeroExpr::monomial(-3), MeroExpr(1.0), PuncturedSphere{{kZero, kInf}},
                      "incomplete");
    auto f = scan(d, Window::annulus(0.01, 100.0), 256);
    REQUIRE(f.kind == LocusKind::IsolatedPoints);
    CHECK(f.points.size() == 5);
    for (auto& p : f.points) {
        CHECK(std::abs(std::abs(p.z) - 1.0) < 1e-9);
        CHECK(std::abs(std::pow(p.z, 5) - 1.0) < 1e-8);
        CHECK(p.winding == -1);
    }
}

TEST_CASE("grid stability and frame changes") {
    auto d = enneper2(1.0);
    auto a = scan(d, Window::disc(10.0), 128), b = scan(d, Window::disc(10.0), 256);
    for (auto& p : a.points) {
        bool found = false;
        for (auto& q : b.points) found = found || std::abs(p.z - q.z) < 1e-8;
        CHECK(found);
    }
    std::mt19937 g(6);
    for (auto base : {enneper2(-1.0), enneper2(1.0)}) {
        bool empty = scan(base, Window::disc(10.0), 256).empty();
        for (int k = 0; k < 3; ++k) {
            auto moved = lorentz_frame_change(base, testutil::rand_unimodular(g));
            CHECK(scan(moved, Window::disc(10.0), 256).empty() == empty);
        }
    }
}

TEST_CASE("fourpi family has singular points") {
    for (Complex a : {Complex(0.5, 0.0), Complex(2.0, 1.0)}) {
        auto f = fourpi_scan(1, a);
        CHECK_FALSE(f.empty());
        auto d = fourpi_family(1, a);
        for (Complex w : f.roots()) CHECK(residual(d, w) <= 1e-10);
    }
    CHECK_THROWS_AS(fourpi_family(1, 1.0), ParamError);
}
