#include <cmath>
#include <random>

#include "doctest.h"
#include "sslab/curv.hpp"
#include "sslab/errors.hpp"
#include "test_util.hpp"

using namespace sslab;
using testutil::rand_c;

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

WeierstrassData knoid3() {
    Complex a(std::sqrt(3.0) / 2.0, 0.0), b(0.0, 0.5), ab = a + b;
    int k = 3;
    PuncturedSphere dom;
    for (int j = 0; j < k; ++j) dom.punctures.push_back(SpherePoint::at(std::polar(1.0, 2.0 * kPi * j / k)));
    MeroExpr zk1 = MeroExpr::monomial(k) - 1.0;
    return WeierstrassData(MeroExpr::monomial(k - 1, 1.0 / ab), MeroExpr::monomial(1 - k, -1.0 / ab),
                           MeroExpr::monomial(k - 1, ab) / (zk1 * zk1), dom, "knoid");
}

WeierstrassData essential_M(int k, double a) {
    MeroExpr e = MeroExpr::exp(LaurentPoly::monomial(1, a));
    return WeierstrassData(MeroExpr::monomial(k) * e, MeroExpr::monomial(-k, -1.0) * e,
                           MeroExpr::exp(LaurentPoly::monomial(1, -a)), PuncturedSphere{{kZero, kInf}}, "M");
}

std::vector<Complex> samples(std::mt19937& g, int n, double scale, double avoid = 0.05) {
    std::vector<Complex> out;
    while (static_cast<int>(out.size()) < n) {
        Complex w = rand_c(g, scale);
        if (std::abs(w) > avoid && std::abs(std::abs(w) - 1.0) > avoid) out.push_back(w);
    }
    return out;
}

// Omega and OmegaStar as Lorentz products of x_zz with the lightlike normals.
std::pair<Complex, Complex> omega_from_frame(const WeierstrassData& d, Complex w) {
    CVec4 xzz;
    for (int i = 0; i < 4; ++i) xzz(i) = d.xz()[i].derivative()(w);
    Complex p = d.phi()(w), q = d.psi()(w);
    double rho = std::abs(p - std::conj(q)), c = std::sqrt(2.0) / rho;
    Vec4 y(p.real(), p.imag(), (1 - std::norm(p)) / 2, (1 + std::norm(p)) / 2);
    Vec4 ys(q.real(), -q.imag(), (1 - std::norm(q)) / 2, (1 + std::norm(q)) / 2);
    y *= c;
    ys *= -c;
    CHECK(std::abs(lorentz_dot(y, ys) - 1.0) < 1e-12);
    CHECK(std::abs(lorentz_dot(y, y)) < 1e-12);
    return {lorentz_dot(xzz, y.cast<Complex>()), lorentz_dot(xzz, ys.cast<Complex>())};
}

}  // namespace

TEST_CASE("curvature identity and frame-vector oracle") {
    std::mt19937 g(4);
    WeierstrassData enneper2(z() + 1.0, MeroExpr::monomial(-1, -1.0), MeroExpr::monomial(1, kI),
                             PuncturedSphere{{kInf}}, "enneper2");
    for (auto d : {catenoid(0.5), knoid3(), enneper2}) {
        auto pts = samples(g, 100, 2.0);
        CHECK(hopf_consistency(d, pts) <= 1e-9);
        for (int k = 0; k < 10; ++k) {
            auto c = curvature_at(d, pts[k]);
            auto [om, oms] = omega_from_frame(d, pts[k]);
            CHECK(testutil::rel(c.Omega, om) < 1e-10);
            CHECK(testutil::rel(c.OmegaStar, oms) < 1e-10);
            CHECK(c.conformal == doctest::Approx(metric_density(d, pts[k])).epsilon(1e-13));
        }
    }
}

TEST_CASE("classical catenoid waist curvature") {
    // waist radius 4 in the induced metric: K = -1/16 on the waist circle
    auto c = curvature_at(catenoid(0.0), Complex(0.0, 1.0));
    CHECK(c.K == doctest::Approx(-1.0 / 16.0).epsilon(1e-12));
    CHECK(std::abs(c.Kperp) < 1e-14);
}

TEST_CASE("curvature signs in the Euclidean and Lorentzian cases") {
    std::mt19937 g(9);
    MeroExpr phi = MeroExpr::poly({0.3, 1.0, 0.5});
    MeroExpr minus_inv = MeroExpr(-1.0) / phi, inv = MeroExpr(1.0) / phi;
    WeierstrassData minimal(phi, minus_inv, phi * phi, PuncturedSphere{{kInf}}, "minimal");
    WeierstrassData maximal(phi, inv, phi * phi, PuncturedSphere{{kInf}}, "maximal");
    for (Complex w : samples(g, 100, 2.0)) {
        auto a = curvature_at(minimal, w);
        CHECK(a.K <= 1e-14);
        CHECK(std::abs(a.Kperp) <= 1e-12 * (1.0 + std::abs(a.K)));
        try {
            auto b = curvature_at(maximal, w);
            CHECK(b.K >= -1e-14);
        } catch (const SingularPointError&) {
        }
    }
    WeierstrassData flat(z(), MeroExpr(2.0), MeroExpr(1.0), PuncturedSphere{{kInf}}, "flat", true);
    auto c = curvature_at(flat, Complex(0.3, 0.1));
    CHECK(c.K == 0.0);
    CHECK(c.Kperp == 0.0);
}

TEST_CASE("pole of phi: circle limits") {
    // phi with a pole of order k at 0.5, psi regular there
    MeroExpr base = MeroExpr::poly({-0.5, 1.0}), pk = base;
    for (int k = 1; k <= 3; ++k) {
        if (k > 1) pk = pk * base;
        WeierstrassData d(MeroExpr(1.0) / pk, z() * 0.3 + 2.0, MeroExpr(1.0), PuncturedSphere{{kInf}}, "pole");
        for (double r : {1e-4, 1e-5}) {
            Complex a = phi_side_circle(d, 0.5, r, 512);
            Complex b = psi_side_circle(d, 0.5, r, 512);
            CHECK(std::abs(a + 2.0 * kPi * kI * double(k)) < 1e-6);
            CHECK(std::abs(b) < 1e-6);
        }
    }
}

TEST_CASE("catenoid total curvature by both methods") {
    for (double t : {0.0, 0.4, 0.9}) {
        auto d = catenoid(t);
        auto c = total_curvature_contour(d);
        CHECK(std::abs(c.K_total + 4.0 * kPi) < 1e-8);
        CHECK(std::abs(c.Kperp_total) < 1e-8);
        CHECK(c.certified);
        auto a = total_curvature_area(d);
        CHECK(std::abs(a.K_total - c.K_total) < 1e-3);
        CHECK(std::abs(a.Kperp_total) < 1e-3);
    }
}

TEST_CASE("good singular ends: contour and ledger") {
    auto d = singular1(2.0);
    auto c = total_curvature_contour(d);
    CHECK(std::abs(c.K_total + 8.0 * kPi) < 1e-3);
    CHECK(std::abs(c.Kperp_total) < 1e-3);
    auto ends = end_table(d);
    auto led = gauss_bonnet_ledger(d, ends, c);
    CHECK(led.pass);
    CHECK(led.index_sum == 0);
    CHECK(led.ind_plus_sum == 4);
    CHECK(led.d_tilde_sum == 4);
    for (auto& l : led.lines)
        if (l.name != "deg3" && l.name != "deg0" && l.name != "quantization" && l.name != "chern_osserman")
            CHECK(std::abs(l.predicted + 8.0 * kPi) < 1e-12);
    // a wrong measured value is caught
    TotalCurvature wrong = c;
    wrong.K_total = -4.0 * kPi;
    CHECK_THROWS_AS(gauss_bonnet_ledger(d, ends, wrong), InconsistentLedger);
}

TEST_CASE("knoid total curvature") {
    auto d = knoid3();
    auto c = total_curvature_contour(d);
    CHECK(std::abs(c.K_total + 8.0 * kPi) < 1e-6);
    auto led = gauss_bonnet_ledger(d, end_table(d), c);
    CHECK(led.pass);
    auto a = total_curvature_area(d);
    CHECK(std::abs(a.K_total + 8.0 * kPi) < 1e-3);
}

TEST_CASE("essential singularities") {
    auto d = essential_M(2, 0.3);
    auto c = total_curvature_contour(d);
    CHECK(std::abs(c.K_total + 8.0 * kPi) < 1e-3);
    CHECK(std::abs(c.Kperp_total) < 1e-3);
    auto a = total_curvature_area(d);
    CHECK(std::abs(a.K_total + 8.0 * kPi) < 5e-3);
    CHECK(std::abs(a.Kperp_total) < 5e-3);
}

TEST_CASE("bad end refusal") {
    auto d = catenoid(1.0);
    CHECK_THROWS_AS(total_curvature_contour(d), BadEndError);
    CHECK_THROWS_AS(total_curvature_area(d), NonConvergent);
}

TEST_CASE("contour total is frame invariant") {
    std::mt19937 g(2);
    auto d = catenoid(0.4);
    auto ref = total_curvature_contour(d);
    for (int k = 0; k < 5; ++k) {
        auto e = lorentz_frame_change(d, testutil::rand_unimodular(g));
        auto c = total_curvature_contour(e);
        CHECK(std::abs(c.K_total - ref.K_total) < 1e-6);
        CHECK(std::abs(c.Kperp_total - ref.Kperp_total) < 1e-6);
    }
}
