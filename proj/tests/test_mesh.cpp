#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sslab/catalog.hpp"
#include "sslab/errors.hpp"
#include "sslab/mesh.hpp"

using namespace sslab;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_prefix(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) n += line.rfind(prefix, 0) == 0;
    return n;
}

}  // namespace

TEST_CASE("classical catenoid mesh stays in x4 = 0") {
    CatalogEntry e = catenoid(0.0);
    SurfaceMesh m = sample_mesh(e.data, default_chart(e.data, 64));
    CHECK(m.chart.kind == MeshChart::LogPolar);
    CHECK(m.periodic);
    int checked = 0;
    for (size_t k = 0; k < m.size(); ++k) {
        if (!m.valid[k]) continue;
        CHECK(std::abs(m.pos[k](3)) <= 1e-9 * (1.0 + m.pos[k].norm()));
        ++checked;
    }
    CHECK(checked == 64 * 64);
    CHECK(m.faces.size() == 63u * 63u);
}

TEST_CASE("graph1 mesh reproduces the closed form") {
    CatalogEntry e = graph1();
    SurfaceMesh m = sample_mesh(e.data, default_chart(e.data, 48));
    auto closed = [](Complex z) {
        double u = z.real(), v = z.imag();
        return Vec4(2 * u, -2 * std::sqrt(2.0) * v, 2 * std::sinh(u) * std::cos(v), 2 * std::cosh(u) * std::cos(v));
    };
    Vec4 x0 = closed(m.z[static_cast<size_t>(m.base)]);
    for (size_t k = 0; k < m.size(); ++k) {
        Vec4 ref = closed(m.z[k]) - x0;
        CHECK((m.pos[k] - ref).norm() <= 1e-8 * (1.0 + ref.norm()));
    }
}

TEST_CASE("helicoid on a three-sheet cover") {
    CatalogEntry e = helicoid_family(0.3, kI);
    SurfaceMesh m = sample_mesh(e.data, default_chart(e.data, 32, Settings::defaults(), 3));
    CHECK_FALSE(m.periodic);
    REQUIRE(m.cuts.size() == 1);
    const CutOffset& cut = m.cuts[0];
    CHECK(cut.rows == 32);
    CHECK((cut.per_turn - Vec4(0.0, 0.0, -8.0 * kPi, 0.0)).norm() < 1e-8);
    CHECK((cut.total - 3.0 * cut.per_turn).norm() < 1e-8);
    CHECK(cut.spread < 1e-8);
    CHECK(sample_mesh(catenoid(0.5).data, default_chart(catenoid(0.5).data, 32)).periodic);
}

TEST_CASE("discrete isometry improves with resolution") {
    CatalogEntry e = catenoid(0.5);
    double coarse = isometry_defect(sample_mesh(e.data, default_chart(e.data, 32)));
    double fine = isometry_defect(sample_mesh(e.data, default_chart(e.data, 64)));
    CHECK(coarse < 0.2);
    CHECK(fine < coarse / 1.8);
    CatalogEntry g = graph1();
    double gc = isometry_defect(sample_mesh(g.data, default_chart(g.data, 32)));
    double gf = isometry_defect(sample_mesh(g.data, default_chart(g.data, 64)));
    CHECK(gf < gc / 1.8);
}

TEST_CASE("knoid mesh leaves out the punctures") {
    CatalogEntry e = knoid(3, std::sqrt(3.0) / 2.0, 0.5 * kI);
    SurfaceMesh m = sample_mesh(e.data, default_chart(e.data, 64));
    CHECK(m.chart.kind == MeshChart::Cartesian);
    for (size_t k = 0; k < m.size(); ++k) {
        if (!m.valid[k]) continue;
        for (const auto& p : e.data.domain().punctures)
            if (!p.infinite) CHECK(std::abs(m.z[k] - p.z) > 0.1);
    }
    CHECK(m.faces.size() > 3000u);
}

TEST_CASE("export formats and errors") {
    CatalogEntry e = catenoid(0.0);
    SurfaceMesh m = sample_mesh(e.data, default_chart(e.data, 16));
    std::string obj = mesh_obj(m, "drop-x4");
    CHECK(count_prefix(obj, "v ") == 256);
    CHECK(count_prefix(obj, "f ") == 225);
    std::string slice = mesh_obj(m, "slice-x3=0");
    CHECK(count_prefix(slice, "l ") > 0);
    CHECK(count_prefix(slice, "f ") == 0);
    CHECK(count_prefix(mesh_obj(m, "slice-x4=c"), "v ") == 0);  // x4 = 0 on the whole classical catenoid
    CHECK_THROWS_AS(mesh_obj(m, "drop-x5"), ParamError);
    CHECK_THROWS_AS(mesh_obj(m, "side-view"), ParamError);

    std::string dir = "mesh_test_out";
    std::string ply = dir + ".ply", objp = dir + ".obj";
    export_mesh(m, "drop-x3", ply);
    std::string ptext = read_file(ply);
    CHECK(ptext.rfind("ply\nformat ascii 1.0\nelement vertex 256\n", 0) == 0);
    export_mesh(m, "drop-x1", objp);
    CHECK(count_prefix(read_file(objp), "f ") == 225);
    std::remove(ply.c_str());
    std::remove(objp.c_str());
    CHECK_THROWS_AS(export_mesh(m, "drop-x4", "/nonexistent-dir/x/y.obj"), IOError);
    CHECK_THROWS_AS(sample_mesh(e.data, default_chart(e.data, 8)), ParamError);
}

TEST_CASE("Enneper-type surface has exactly two self-intersections") {
    CatalogEntry e = enneper_k(1, kI, 1.0);
    SurfaceMesh m = sample_mesh(e.data, default_chart(e.data, 128));
    IntersectionReport r = self_intersection_scan(e.data, m);
    REQUIRE(r.clusters.size() == 2u);
    for (const auto& cl : r.clusters) {
        REQUIRE(cl.preimages.size() == 2u);
        CHECK(cl.residual <= 1e-8);
        for (Complex z : cl.preimages) CHECK(std::abs(std::abs(z) - std::sqrt(3.0)) <= 1e-4);
        // independent path integrals from the origin
        Vec4 a = immerse(e.data, PathSpec::line(0.0, cl.preimages[0]));
        Vec4 b = immerse(e.data, PathSpec::line(0.0, cl.preimages[1]));
        CHECK((a - b).norm() <= 1e-8 * (1.0 + a.norm()));
    }
    CHECK((r.clusters[0].position - r.clusters[1].position).norm() > 1e-3);
}

TEST_CASE("embedded entries scan empty at 128") {
    CatalogEntry cat = catenoid(0.5);
    CHECK(self_intersection_scan(cat.data, sample_mesh(cat.data, default_chart(cat.data, 128))).clusters.empty());
    CatalogEntry kn = knoid(3, std::sqrt(3.0) / 2.0, 0.5 * kI);
    CHECK(self_intersection_scan(kn.data, sample_mesh(kn.data, default_chart(kn.data, 128))).clusters.empty());
}
