#pragma once

#include <array>
#include <string>
#include <vector>

#include "sslab/settings.hpp"
#include "sslab/wdata.hpp"

namespace sslab {

// Rectangle in chart coordinates w = u + iv. LogPolar maps w to z = e^w
// (u = log r, v = theta); Cartesian maps w to z = w.
struct MeshChart {
    enum Kind { LogPolar, Cartesian } kind = Cartesian;
    double u0 = -5.0, u1 = 5.0, v0 = -5.0, v1 = 5.0;
    int nu = 128, nv = 128;  // vertices per axis

    static MeshChart annulus(double rmin, double rmax, int res, int sheets = 1);
    static MeshChart square(double half_width, int res);
    Complex to_z(Complex w) const { return kind == LogPolar ? std::exp(w) : w; }
    Complex dz_dw(Complex w) const { return kind == LogPolar ? std::exp(w) : Complex(1.0, 0.0); }
    Complex chart_point(int i, int j) const;
    double du() const { return (u1 - u0) / (nu - 1); }
    double dv() const { return (v1 - v0) / (nv - 1); }
    int sheets() const;
    std::string str() const;
};

// Annulus [mesh_rmin, mesh_rmax] with one cut at theta = 0 when 0 is a
// puncture or singular point, otherwise the square of half width mesh_half_width.
MeshChart default_chart(const WeierstrassData& data, int res, const Settings& s = Settings::defaults(), int sheets = 1);

// Jump of the position across the cut theta = v0 ~ v1 (LogPolar charts).
struct CutOffset {
    Vec4 total = Vec4::Zero();      // over the whole theta range
    Vec4 per_turn = Vec4::Zero();   // total / sheets
    double spread = 0.0;            // largest deviation between rows
    int rows = 0;
};

struct SurfaceMesh {
    MeshChart chart;
    std::vector<Complex> w, z;
    std::vector<Vec4> pos;          // relative to the basepoint vertex
    std::vector<double> density;
    std::vector<char> valid;        // reached by the spanning tree
    std::vector<std::array<int, 4>> faces;  // counterclockwise in the chart
    std::vector<CutOffset> cuts;
    int base = 0;
    bool periodic = false;          // v0 and v1 columns coincide on the surface

    int index(int i, int j) const { return i * chart.nv + j; }
    size_t size() const { return pos.size(); }
};

// Positions by integrating x_z dz along a breadth-first spanning tree of grid
// edges from the central vertex. Vertices too close to singular points are left out.
SurfaceMesh sample_mesh(const WeierstrassData& data, const MeshChart& chart, const Settings& s = Settings::defaults());

// Largest |<dx, dx> / (density |dz|^2) - 1| over grid edges.
double isometry_defect(const SurfaceMesh& mesh);

// Position at an arbitrary chart point, integrated from the nearest vertex.
Vec4 mesh_position(const WeierstrassData& data, const SurfaceMesh& mesh, Complex w, const Settings& s = Settings::defaults());

// drop-x1 .. drop-x4, slice-x3=0, slice-x4=c (any slice-xk=c is accepted).
// Surfaces go to OBJ, or PLY when the path ends in .ply; slices are polyline OBJ.
void export_mesh(const SurfaceMesh& mesh, const std::string& projection, const std::string& path);
std::string mesh_obj(const SurfaceMesh& mesh, const std::string& projection);

struct IntersectionCluster {
    Vec4 position = Vec4::Zero();
    std::vector<Complex> preimages;        // z values
    std::vector<Complex> chart_points;     // w values
    double residual = 0.0;                 // largest |x(p) - x(q)| over preimage pairs
};

struct IntersectionReport {
    std::vector<IntersectionCluster> clusters;
    int candidates = 0;
    int newton_runs = 0;
    double cell = 0.0;
    int res = 0;
    bool refined = false;
};

// Vertex pairs close in R^4 with distant preimages via a multi-level spatial
// hash; with refine, Newton on x(p) - x(q) = 0 in (Re p, Im p, Re q, Im q).
IntersectionReport self_intersection_scan(const WeierstrassData& data, const SurfaceMesh& mesh, bool refine = true,
                                          const Settings& s = Settings::defaults());

}  // namespace sslab
