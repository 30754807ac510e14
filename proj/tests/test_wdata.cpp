#include <cmath>
#include <random>

#include "doctest.h"
#include "sslab/errors.hpp"
#include "sslab/wdata.hpp"
#include "test_util.hpp"

using namespace sslab;
using testutil::rand_c;

namespace {

MeroExpr z() { return MeroExpr::z(); }

PuncturedSphere sphere(std::vector<SpherePoint> p) { return PuncturedSphere{std::move(p)}; }

WeierstrassData catenoid(double t, Complex s = 1.0) {
    MeroExpr phi = z() + t;
    MeroExpr psi = MeroExpr::rational({-1.0}, {-t, 1.0});
    MeroExpr dh = MeroExpr::rational({-t * s, s}, {0.0, 0.0, 1.0});
    return WeierstrassData(phi, psi, dh, sphere({SpherePoint::at(0.0), SpherePoint::infinity()}), "catenoid");
}

// Closed-form primitive of x_z for the catenoid with s = 1.
CVec4 catenoid_primitive(double t, Complex w) {
    return CVec4(w + (t * t + 1.0) / w, -kI * (w + (t * t - 1.0) / w), 2.0 * std::log(w), 2.0 * t / w);
}

WeierstrassData graph1() {
    double r2 = std::sqrt(2.0);
    MeroExpr e = MeroExpr::exp(LaurentPoly::monomial(1, -1.0));
    MeroExpr phi = e * (1.0 - r2), psi = e * (1.0 + r2);
    MeroExpr dh = MeroExpr::exp(LaurentPoly::monomial(1, 1.0)) * 0.5;
    return WeierstrassData(phi, psi, dh, sphere({SpherePoint::infinity()}), "graph");
}

}  // namespace

TEST_CASE("x_z is Lorentz-isotropic for random data") {
    std::mt19937 g(11);
    for (int trial = 0; trial < 10; ++trial) {
        MeroExpr phi = MeroExpr::rational({rand_c(g), rand_c(g), 1.0}, {rand_c(g), 1.0});
        MeroExpr psi = MeroExpr::rational({rand_c(g), 1.0}, {rand_c(g), rand_c(g), 1.0});
        MeroExpr dh = MeroExpr::poly({rand_c(g), rand_c(g)});
        WeierstrassData d(phi, psi, dh, sphere({SpherePoint::infinity()}), "random");
        std::vector<Complex> pts;
        for (int k = 0; k < 20; ++k) pts.push_back(rand_c(g, 2.0));
        CHECK(lorentz_isotropy_check(d, pts) < 1e-12);
    }
}

TEST_CASE("metric density is twice the hermitian Lorentz norm of x_z") {
    std::mt19937 g(3);
    auto d = catenoid(0.3);
    for (int k = 0; k < 20; ++k) {
        Complex w = rand_c(g, 2.0);
        CVec4 v = d.xz_at(w);
        double oracle = 2.0 * lorentz_hdot(v, v).real();
        CHECK(metric_density(d, w) == doctest::Approx(oracle).epsilon(1e-12));
    }
    // classical catenoid waist
    CHECK(metric_density(catenoid(0.0), 1.0) == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("catenoid immersion matches closed form") {
    double t = 0.4;
    auto d = catenoid(t);
    Complex a(1.0, 0.5), b(-0.3, 1.7);
    PathSpec p = PathSpec::line(a, b);
    Vec4 x = immerse(d, p);
    CVec4 F = catenoid_primitive(t, b) - catenoid_primitive(t, a);
    Vec4 oracle = 2.0 * F.real();
    CHECK((x - oracle).norm() < 1e-10);
    // closed loop around the puncture: x is single valued
    Vec4 loop = immerse(d, PathSpec::circle(0.0, 1.3));
    CHECK(loop.norm() < 1e-10);
    // composite path
    PathSpec q = PathSpec::line(2.0, 1.0);
    q.then_arc(0.0, 1.0, 0.0, kPi / 2).then_line(Complex(0.0, 3.0));
    Vec4 y = immerse(d, q);
    Vec4 oracle2 = 2.0 * (catenoid_primitive(t, Complex(0.0, 3.0)) - catenoid_primitive(t, 2.0)).real();
    CHECK((y - oracle2).norm() < 1e-10);
}

TEST_CASE("paths too close to singular points are refused") {
    auto d = catenoid(0.2);
    CHECK_THROWS_AS(immerse(d, PathSpec::line(Complex(-1.0, 1e-8), Complex(1.0, 1e-8))), ClearanceError);
    CHECK_THROWS_AS(immerse(d, PathSpec::line(Complex(0.0, -1.0), Complex(0.0, 1.0))), ClearanceError);
    // the pole of psi at z = t is cancelled by the zero of dh
    CHECK_NOTHROW(immerse(d, PathSpec::line(Complex(0.2, -1.0), Complex(0.2, 1.0))));
}

TEST_CASE("graph example: closed form and log-mode density") {
    auto d = graph1();
    CHECK(d.log_mode());
    Complex w(0.7, -1.1);
    Vec4 x = immerse(d, PathSpec::line(0.0, w));
    double u = w.real(), v = w.imag();
    Vec4 oracle(2 * u, -2 * std::sqrt(2.0) * v, 2 * std::sinh(u) * std::cos(v), 2 * std::cosh(u) * std::cos(v) - 2.0);
    CHECK((x - oracle).norm() < 1e-10);
    std::mt19937 g(5);
    for (int k = 0; k < 30; ++k) {
        Complex p = rand_c(g, 30.0);
        double dens = metric_density(d, p);
        CHECK(dens == doctest::Approx(2.0 * (3.0 + std::cos(2.0 * p.imag()))).epsilon(1e-10));
        CHECK(dens >= 4.0 - 1e-9);
        CHECK(dens <= 8.0 + 1e-9);
    }
    // far from the origin the direct evaluation overflows; the log path does not
    CHECK(std::isfinite(metric_density(d, Complex(800.0, 0.3))));
}

TEST_CASE("regularity conditions") {
    CHECK(regularity_report(catenoid(0.5)).pass());
    // dh vanishes to the wrong order where psi has a pole
    MeroExpr psi = MeroExpr::rational({-1.0}, {-0.5, 1.0});
    WeierstrassData bad(z() + 0.5, psi, MeroExpr::rational({1.0}, {0.0, 0.0, 1.0}),
                        sphere({SpherePoint::at(0.0), SpherePoint::infinity()}), "bad");
    auto rep = regularity_report(bad);
    CHECK_FALSE(rep.condition2);
    // shared pole of phi and psi
    WeierstrassData shared(MeroExpr::rational({1.0}, {-2.0, 1.0}), MeroExpr::rational({1.0, 1.0}, {-2.0, 1.0}),
                           MeroExpr::poly({-2.0, 1.0}), sphere({SpherePoint::infinity()}), "shared");
    CHECK_FALSE(regularity_report(shared).condition1);
}

TEST_CASE("period report") {
    auto good = period_report(catenoid(0.3));
    CHECK(good.pass);
    REQUIRE(good.rows.size() == 2);
    for (auto& r : good.rows) CHECK(std::abs(r.dh - 2.0 * kPi * kI * (r.puncture.infinite ? -1.0 : 1.0) * 2.0 * 0.5) < 1e-9);
    // rotating dh by i makes the vertical period real
    auto bad = period_report(catenoid(0.3, kI));
    CHECK_FALSE(bad.pass);
}

TEST_CASE("Lorentz frame change preserves the metric") {
    std::mt19937 g(8);
    auto d = catenoid(0.25);
    for (int trial = 0; trial < 5; ++trial) {
        Mat2c A = testutil::rand_unimodular(g);
        auto e = lorentz_frame_change(d, A);
        for (int k = 0; k < 6; ++k) {
            Complex w = rand_c(g, 2.0);
            if (std::abs(w) < 0.1 || std::abs(w - 0.25) < 0.1) continue;
            double a = metric_density(d, w), b = metric_density(e, w);
            CHECK(std::abs(a - b) <= 1e-8 * a);
        }
        std::vector<Complex> pts{Complex(0.7, 0.2), Complex(-1.1, 0.4)};
        CHECK(lorentz_isotropy_check(e, pts) < 1e-11);
    }
}

TEST_CASE("explicit x_z components recover phi psi dh") {
    auto d = catenoid(0.6);
    auto e = WeierstrassData::from_components(d.xz(), d.domain(), "copy");
    CHECK(e.has_explicit_components());
    std::mt19937 g(1);
    for (int k = 0; k < 10; ++k) {
        Complex w = rand_c(g, 2.0);
        CHECK(testutil::rel(e.phi()(w), d.phi()(w)) < 1e-12);
        CHECK(testutil::rel(e.psi()(w), d.psi()(w)) < 1e-12);
        CHECK(testutil::rel(e.dh()(w), d.dh()(w)) < 1e-12);
    }
}

TEST_CASE("completeness probe") {
    auto d = catenoid(0.0);
    CHECK(completeness_probe(d, SpherePoint::at(0.0)).divergent);
    CHECK(completeness_probe(d, SpherePoint::infinity()).divergent);
    // an interior point has finite distance
    auto interior = completeness_probe(d, SpherePoint::at(2.0));
    CHECK_FALSE(interior.divergent);
    CHECK(interior.exponent == doctest::Approx(0.0).epsilon(0.05));
}

TEST_CASE("data file round trip and errors") {
    auto d = catenoid(0.35);
    auto e = parse_wdata(format_wdata(d));
    CHECK(e.label() == "catenoid");
    REQUIRE(e.domain().punctures.size() == 2);
    CHECK(e.domain().punctures[1].infinite);
    Complex w(0.3, 0.9);
    CHECK(testutil::rel(e.psi()(w), d.psi()(w)) < 1e-14);
    CHECK_THROWS_AS(parse_wdata("phi = [0,1]\npsi = [1]\n"), ParseError);
    CHECK_THROWS_AS(parse_wdata("phi = [0,1]\npsi = [1]\ndh = [1]\npunctures = inf\ncolour = red\n"), ParseError);
    CHECK_THROWS_AS(parse_wdata("phi = [0,1]\npsi = [1]\ndh = [1]\npunctures = inf\n"), ParamError);
    CHECK_NOTHROW(parse_wdata("phi = [0,1]\npsi = [1]\ndh = [1]\npunctures = inf\ndegenerate = true\n"));
    CHECK_THROWS_AS(load_wdata("/nonexistent/file"), IOError);
}
