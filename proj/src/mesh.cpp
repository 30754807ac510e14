#include "sslab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <Eigen/Dense>

#include "sslab/errors.hpp"
#include "sslab/quadrature.hpp"

namespace sslab {

// ---------------------------------------------------------------- charts

MeshChart MeshChart::annulus(double rmin, double rmax, int res, int sheets) {
    if (!(0.0 < rmin && rmin < rmax)) throw ParamError("annulus chart needs 0 < rmin < rmax");
    if (sheets < 1) throw ParamError("chart needs at least one sheet");
    MeshChart c;
    c.kind = LogPolar;
    c.u0 = std::log(rmin);
    c.u1 = std::log(rmax);
    c.v0 = 0.0;
    c.v1 = 2.0 * kPi * sheets;
    c.nu = res;
    c.nv = res * sheets;
    return c;
}

MeshChart MeshChart::square(double half_width, int res) {
    if (!(half_width > 0.0)) throw ParamError("square chart needs a positive half width");
    MeshChart c;
    c.kind = Cartesian;
    c.u0 = c.v0 = -half_width;
    c.u1 = c.v1 = half_width;
    c.nu = c.nv = res;
    return c;
}

Complex MeshChart::chart_point(int i, int j) const { return {u0 + i * du(), v0 + j * dv()}; }

int MeshChart::sheets() const {
    return kind == LogPolar ? std::max(1, static_cast<int>(std::lround((v1 - v0) / (2.0 * kPi)))) : 1;
}

std::string MeshChart::str() const {
    char buf[160];
    if (kind == LogPolar)
        std::snprintf(buf, sizeof buf, "annulus r in [%g, %g] x theta in [%g, %g], %d x %d", std::exp(u0), std::exp(u1),
                      v0, v1, nu, nv);
    else
        std::snprintf(buf, sizeof buf, "square [%g, %g] x [%g, %g], %d x %d", u0, u1, v0, v1, nu, nv);
    return buf;
}

MeshChart default_chart(const WeierstrassData& data, int res, const Settings& s, int sheets) {
    bool punctured = data.domain().is_puncture(SpherePoint::at(0.0));
    for (Complex q : data.singular_points()) punctured = punctured || std::abs(q) < 1e-12;
    if (punctured) return MeshChart::annulus(s.mesh_rmin, s.mesh_rmax, res, sheets);
    if (sheets != 1) throw ParamError("covers are only available on annulus charts");
    return MeshChart::square(s.mesh_half_width, res);
}

// ---------------------------------------------------------------- sampling

namespace {

CVec4 edge_integral(const WeierstrassData& data, const MeshChart& chart, Complex wa, Complex wb, const Settings& s) {
    Complex d = wb - wa;
    auto f = [&](double t) -> CVec4 {
        Complex w = wa + t * d;
        return data.xz_at(chart.to_z(w)) * (chart.dz_dw(w) * d);
    };
    AdaptiveOptions opt;
    opt.abs_tol = s.quad_abs_tol;
    opt.rel_tol = s.quad_rel_tol;
    double err = 0.0;
    CVec4 v = integrate_adaptive<CVec4>(f, 0.0, 1.0, opt, &err);
    if (err > 1e-9 * (1.0 + v.norm())) throw QuadratureError("mesh edge quadrature error estimate too large");
    return v;
}

double spacing(const MeshChart& c, Complex w) { return std::abs(c.dz_dw(w)) * std::max(c.du(), c.dv()); }

// The origin lies outside every LogPolar chart.
double clearance_at(const WeierstrassData& data, const MeshChart& c, Complex z) {
    double d = std::numeric_limits<double>::infinity();
    for (Complex q : data.singular_points())
        if (c.kind == MeshChart::Cartesian || q != Complex(0.0, 0.0)) d = std::min(d, std::abs(z - q));
    return d;
}

}  // namespace

SurfaceMesh sample_mesh(const WeierstrassData& data, const MeshChart& chart, const Settings& s) {
    if (chart.nu < 16 || chart.nv < 16) throw ParamError("mesh resolution must be at least 16 per axis");
    SurfaceMesh m;
    m.chart = chart;
    size_t n = static_cast<size_t>(chart.nu) * chart.nv;
    m.w.resize(n);
    m.z.resize(n);
    m.pos.assign(n, Vec4::Constant(std::numeric_limits<double>::quiet_NaN()));
    m.density.assign(n, std::numeric_limits<double>::quiet_NaN());
    m.valid.assign(n, 0);
    std::vector<char> usable(n, 0);
    for (int i = 0; i < chart.nu; ++i)
        for (int j = 0; j < chart.nv; ++j) {
            int k = m.index(i, j);
            m.w[k] = chart.chart_point(i, j);
            m.z[k] = chart.to_z(m.w[k]);
            if (clearance_at(data, chart, m.z[k]) < 2.0 * spacing(chart, m.w[k])) continue;
            try {
                m.density[k] = metric_density(data, m.z[k]);
                usable[k] = std::isfinite(m.density[k]) && data.xz_at(m.z[k]).allFinite();
            } catch (const Error&) {
            }
        }
    auto edge_ok = [&](int a, int b) {
        if (!usable[a] || !usable[b]) return false;
        double h = 0.75 * std::min(spacing(chart, m.w[a]), spacing(chart, m.w[b]));
        for (double t : {0.25, 0.5, 0.75})
            if (clearance_at(data, chart, chart.to_z(m.w[a] + t * (m.w[b] - m.w[a]))) < h) return false;
        return true;
    };

    // basepoint: usable vertex nearest the chart centre
    int ci = chart.nu / 2, cj = chart.nv / 2, best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < chart.nu; ++i)
        for (int j = 0; j < chart.nv; ++j) {
            double d = std::hypot(i - ci, j - cj);
            if (usable[m.index(i, j)] && d < bd) bd = d, best = m.index(i, j);
        }
    if (best < 0) throw ParamError("mesh chart has no usable vertex");
    m.base = best;
    m.pos[best] = Vec4::Zero();
    m.valid[best] = 1;
    std::deque<int> queue{best};
    const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
    while (!queue.empty()) {
        int a = queue.front();
        queue.pop_front();
        int i = a / chart.nv, j = a % chart.nv;
        for (int e = 0; e < 4; ++e) {
            int ii = i + di[e], jj = j + dj[e];
            if (ii < 0 || jj < 0 || ii >= chart.nu || jj >= chart.nv) continue;
            int b = m.index(ii, jj);
            if (m.valid[b] || !edge_ok(a, b)) continue;
            m.pos[b] = m.pos[a] + 2.0 * edge_integral(data, chart, m.w[a], m.w[b], s).real();
            m.valid[b] = 1;
            queue.push_back(b);
        }
    }
    for (int i = 0; i + 1 < chart.nu; ++i)
        for (int j = 0; j + 1 < chart.nv; ++j) {
            std::array<int, 4> f = {m.index(i, j), m.index(i + 1, j), m.index(i + 1, j + 1), m.index(i, j + 1)};
            if (std::all_of(f.begin(), f.end(), [&](int k) { return m.valid[k]; })) m.faces.push_back(f);
        }
    if (chart.kind == MeshChart::LogPolar) {
        CutOffset cut;
        std::vector<Vec4> rows;
        bool closes = true;
        for (int i = 0; i < chart.nu; ++i) {
            int a = m.index(i, 0), b = m.index(i, chart.nv - 1);
            if (!m.valid[a] || !m.valid[b]) continue;
            Vec4 off = m.pos[b] - m.pos[a];
            rows.push_back(off);
            cut.total += off;
            closes = closes && off.norm() <= 1e-7 * (1.0 + m.pos[a].norm());
        }
        cut.rows = static_cast<int>(rows.size());
        if (cut.rows > 0) cut.total /= cut.rows;
        for (const auto& r : rows) cut.spread = std::max(cut.spread, (r - cut.total).norm());
        cut.per_turn = cut.total / chart.sheets();
        m.cuts.push_back(cut);
        m.periodic = closes && cut.rows > 0 && chart.sheets() == 1;
    }
    return m;
}

double isometry_defect(const SurfaceMesh& m) {
    double worst = 0.0;
    const MeshChart& c = m.chart;
    for (int i = 0; i < c.nu; ++i)
        for (int j = 0; j < c.nv; ++j) {
            int a = m.index(i, j);
            if (!m.valid[a]) continue;
            for (int b : {i + 1 < c.nu ? m.index(i + 1, j) : -1, j + 1 < c.nv ? m.index(i, j + 1) : -1}) {
                if (b < 0 || !m.valid[b]) continue;
                Vec4 dx = m.pos[b] - m.pos[a];
                double dz = std::abs(m.z[b] - m.z[a]);
                double ref = 0.5 * (m.density[a] + m.density[b]) * dz * dz;
                worst = std::max(worst, std::abs(lorentz_dot(dx, dx) / ref - 1.0));
            }
        }
    return worst;
}

namespace {

int nearest_vertex(const SurfaceMesh& m, Complex w) {
    const MeshChart& c = m.chart;
    int i0 = static_cast<int>(std::lround((w.real() - c.u0) / c.du()));
    int j0 = static_cast<int>(std::lround((w.imag() - c.v0) / c.dv()));
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (int rad = 0; rad <= 3 && best < 0; ++rad)
        for (int i = i0 - rad; i <= i0 + rad; ++i)
            for (int j = j0 - rad; j <= j0 + rad; ++j) {
                if (i < 0 || j < 0 || i >= c.nu || j >= c.nv) continue;
                int k = m.index(i, j);
                if (!m.valid[k]) continue;
                double d = std::abs(m.w[k] - w);
                if (d < bd) bd = d, best = k;
            }
    if (best < 0) throw ClearanceError("chart point has no nearby mesh vertex");
    return best;
}

}  // namespace

Vec4 mesh_position(const WeierstrassData& data, const SurfaceMesh& m, Complex w, const Settings& s) {
    int k = nearest_vertex(m, w);
    if (m.w[k] == w) return m.pos[k];
    return m.pos[k] + 2.0 * edge_integral(data, m.chart, m.w[k], w, s).real();
}

// ---------------------------------------------------------------- export

namespace {

struct Projection {
    bool slice = false;
    int axis = 3;      // dropped or sliced coordinate (0-based)
    double level = 0.0;
};

Projection parse_projection(const std::string& p) {
    Projection out;
    auto axis_of = [&](char ch) {
        if (ch < '1' || ch > '4') throw ParamError("unknown projection \"" + p + "\"");
        return ch - '1';
    };
    if (p.size() == 7 && p.rfind("drop-x", 0) == 0) {
        out.axis = axis_of(p[6]);
        return out;
    }
    if (p.size() > 9 && p.rfind("slice-x", 0) == 0 && p[8] == '=') {
        out.slice = true;
        out.axis = axis_of(p[7]);
        std::string rest = p.substr(9);
        if (rest == "c") return out;
        char* end = nullptr;
        out.level = std::strtod(rest.c_str(), &end);
        if (end != rest.c_str() + rest.size()) throw ParamError("bad slice level in \"" + p + "\"");
        return out;
    }
    throw ParamError("unknown projection \"" + p + "\" (drop-x1..drop-x4, slice-x3=0, slice-x4=c)");
}

std::array<double, 3> keep3(const Vec4& x, int axis) {
    std::array<double, 3> out{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != axis) out[static_cast<size_t>(k++)] = x(i);
    return out;
}

void put_vertex(std::ostringstream& os, const std::array<double, 3>& v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "v %.12g %.12g %.12g\n", v[0], v[1], v[2]);
    os << buf;
}

std::string slice_obj(const SurfaceMesh& m, const Projection& pr) {
    std::ostringstream os;
    os << "# slice x" << pr.axis + 1 << " = " << pr.level << "\n";
    int count = 0;
    for (const auto& f : m.faces) {
        std::vector<Vec4> hits;
        for (int e = 0; e < 4; ++e) {
            const Vec4& a = m.pos[f[static_cast<size_t>(e)]];
            const Vec4& b = m.pos[f[static_cast<size_t>((e + 1) % 4)]];
            double sa = a(pr.axis) - pr.level, sb = b(pr.axis) - pr.level;
            if ((sa < 0.0) == (sb < 0.0) || sa == sb) continue;
            double t = sa / (sa - sb);
            hits.push_back(a + t * (b - a));
        }
        for (size_t h = 0; h + 1 < hits.size(); h += 2) {
            put_vertex(os, keep3(hits[h], pr.axis));
            put_vertex(os, keep3(hits[h + 1], pr.axis));
            os << "l " << count + 1 << " " << count + 2 << "\n";
            count += 2;
        }
    }
    return os.str();
}

std::vector<int> renumber(const SurfaceMesh& m, int& count) {
    std::vector<int> id(m.size(), -1);
    count = 0;
    for (size_t k = 0; k < m.size(); ++k)
        if (m.valid[k]) id[k] = count++;
    return id;
}

std::string surface_obj(const SurfaceMesh& m, const Projection& pr) {
    std::ostringstream os;
    os << "# " << m.chart.str() << ", drop x" << pr.axis + 1 << "\n";
    int count = 0;
    auto id = renumber(m, count);
    for (size_t k = 0; k < m.size(); ++k)
        if (m.valid[k]) put_vertex(os, keep3(m.pos[k], pr.axis));
    for (const auto& f : m.faces)
        os << "f " << id[f[0]] + 1 << " " << id[f[1]] + 1 << " " << id[f[2]] + 1 << " " << id[f[3]] + 1 << "\n";
    return os.str();
}

std::string surface_ply(const SurfaceMesh& m, const Projection& pr) {
    std::ostringstream os;
    int count = 0;
    auto id = renumber(m, count);
    os << "ply\nformat ascii 1.0\nelement vertex " << count << "\nproperty double x\nproperty double y\nproperty double z\n"
       << "element face " << m.faces.size() << "\nproperty list uchar int vertex_indices\nend_header\n";
    char buf[128];
    for (size_t k = 0; k < m.size(); ++k)
        if (m.valid[k]) {
            auto v = keep3(m.pos[k], pr.axis);
            std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g\n", v[0], v[1], v[2]);
            os << buf;
        }
    for (const auto& f : m.faces) os << "4 " << id[f[0]] << " " << id[f[1]] << " " << id[f[2]] << " " << id[f[3]] << "\n";
    return os.str();
}

}  // namespace

std::string mesh_obj(const SurfaceMesh& m, const std::string& projection) {
    Projection pr = parse_projection(projection);
    return pr.slice ? slice_obj(m, pr) : surface_obj(m, pr);
}

void export_mesh(const SurfaceMesh& m, const std::string& projection, const std::string& path) {
    Projection pr = parse_projection(projection);
    bool ply = !pr.slice && path.size() > 4 && path.substr(path.size() - 4) == ".ply";
    std::string text = pr.slice ? slice_obj(m, pr) : ply ? surface_ply(m, pr) : surface_obj(m, pr);
    std::ofstream out(path);
    if (!out) throw IOError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IOError("write to " + path + " failed");
}

// ---------------------------------------------------------------- self-intersections

namespace {

struct CellKey {
    std::int64_t c[4];
    bool operator==(const CellKey& o) const {
        return c[0] == o.c[0] && c[1] == o.c[1] && c[2] == o.c[2] && c[3] == o.c[3];
    }
};

struct CellHash {
    size_t operator()(const CellKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto v : k.c) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
        return static_cast<size_t>(h);
    }
};

CellKey cell_of(const Vec4& x, double size) {
    CellKey k;
    for (int i = 0; i < 4; ++i) k.c[i] = static_cast<std::int64_t>(std::floor(x(i) / size));
    return k;
}

// Distance in the chart, identifying the seam columns of periodic meshes.
double chart_distance(const SurfaceMesh& m, Complex a, Complex b) {
    double du = a.real() - b.real(), dv = std::abs(a.imag() - b.imag());
    if (m.periodic) {
        double period = m.chart.v1 - m.chart.v0;
        dv = std::fmod(dv, period);
        dv = std::min(dv, period - dv);
    }
    return std::hypot(du, dv);
}

Complex normalize(const SurfaceMesh& m, Complex w) {
    if (!m.periodic) return w;
    double period = m.chart.v1 - m.chart.v0, v = std::fmod(w.imag() - m.chart.v0, period);
    if (v < 0) v += period;
    return {w.real(), m.chart.v0 + v};
}

bool inside(const MeshChart& c, Complex w, bool periodic) {
    bool in_u = w.real() >= c.u0 && w.real() <= c.u1;
    return in_u && (periodic || (w.imag() >= c.v0 && w.imag() <= c.v1));
}

struct NewtonResult {
    bool ok = false;
    Complex p, q;
    Vec4 x = Vec4::Zero();
    double residual = 0.0;
};

NewtonResult newton_pair(const WeierstrassData& data, const SurfaceMesh& m, Complex p, Complex q, const Settings& s) {
    NewtonResult r;
    const MeshChart& c = m.chart;
    double cell = std::max(c.du(), c.dv());
    try {
        for (int it = 0; it < 40; ++it) {
            Vec4 xp = mesh_position(data, m, p, s), xq = mesh_position(data, m, q, s);
            Vec4 F = xp - xq;
            double scale = 1.0 + xp.norm();
            if (F.norm() <= 1e-11 * scale) {
                r = {true, p, q, xp, F.norm()};
                break;
            }
            CVec4 gp = data.xz_at(c.to_z(p)) * c.dz_dw(p), gq = data.xz_at(c.to_z(q)) * c.dz_dw(q);
            Eigen::Matrix4d J;
            J.col(0) = 2.0 * gp.real();
            J.col(1) = -2.0 * gp.imag();
            J.col(2) = -2.0 * gq.real();
            J.col(3) = 2.0 * gq.imag();
            Eigen::ColPivHouseholderQR<Eigen::Matrix4d> qr(J);
            if (qr.rank() < 4) return r;
            Eigen::Vector4d d = qr.solve(-F);
            double len = d.norm();
            if (len > 2.0 * cell) d *= 2.0 * cell / len;
            p += Complex(d(0), d(1));
            q += Complex(d(2), d(3));
            if (!inside(c, p, m.periodic) || !inside(c, q, m.periodic)) return r;
            p = normalize(m, p);
            q = normalize(m, q);
        }
    } catch (const Error&) {
        return NewtonResult{};
    }
    if (!r.ok) return r;
    if (chart_distance(m, r.p, r.q) < cell) r.ok = false;
    return r;
}

}  // namespace

IntersectionReport self_intersection_scan(const WeierstrassData& data, const SurfaceMesh& m, bool refine,
                                          const Settings& s) {
    IntersectionReport rep;
    rep.res = m.chart.nu;
    rep.refined = refine;
    const MeshChart& c = m.chart;
    size_t n = m.size();
    // local edge length
    std::vector<double> ell(n, 0.0);
    for (int i = 0; i < c.nu; ++i)
        for (int j = 0; j < c.nv; ++j) {
            int a = m.index(i, j);
            if (!m.valid[a]) continue;
            const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
            for (int e = 0; e < 4; ++e) {
                int ii = i + di[e], jj = j + dj[e];
                if (ii < 0 || jj < 0 || ii >= c.nu || jj >= c.nv) continue;
                int b = m.index(ii, jj);
                if (m.valid[b]) ell[a] = std::max(ell[a], (m.pos[b] - m.pos[a]).norm());
            }
        }
    std::vector<double> sorted;
    for (size_t k = 0; k < n; ++k)
        if (m.valid[k] && ell[k] > 0.0) sorted.push_back(ell[k]);
    if (sorted.empty()) return rep;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    double s0 = 2.0 * sorted[sorted.size() / 2];
    rep.cell = s0;
    // vertices sorted into levels with cell size s0 * 2^L >= 2 ell
    std::vector<int> level(n, -1);
    int max_level = 0;
    for (size_t k = 0; k < n; ++k) {
        if (!m.valid[k]) continue;
        int L = 0;
        while (s0 * std::ldexp(1.0, L) < 2.0 * ell[k] && L < 60) ++L;
        level[k] = L;
        max_level = std::max(max_level, L);
    }
    std::vector<std::unordered_map<CellKey, std::vector<int>, CellHash>> grids(static_cast<size_t>(max_level) + 1);
    for (size_t k = 0; k < n; ++k)
        if (level[k] >= 0) grids[static_cast<size_t>(level[k])][cell_of(m.pos[k], s0 * std::ldexp(1.0, level[k]))].push_back(static_cast<int>(k));

    double cell = std::max(c.du(), c.dv());
    std::vector<std::pair<int, int>> pairs;
    for (size_t v = 0; v < n; ++v) {
        if (level[v] < 0) continue;
        for (int L = level[v]; L <= max_level; ++L) {
            const auto& grid = grids[static_cast<size_t>(L)];
            if (grid.empty()) continue;
            CellKey home = cell_of(m.pos[v], s0 * std::ldexp(1.0, L));
            for (int o = 0; o < 81; ++o) {
                CellKey key = home;
                int t = o;
                for (int i = 0; i < 4; ++i, t /= 3) key.c[i] += t % 3 - 1;
                auto it = grid.find(key);
                if (it == grid.end()) continue;
                for (int w : it->second) {
                    if (L == level[v] && w <= static_cast<int>(v)) continue;
                    if ((m.pos[w] - m.pos[v]).norm() >= ell[v] + ell[static_cast<size_t>(w)]) continue;
                    if (chart_distance(m, m.w[v], m.w[w]) <= 4.0 * cell) continue;
                    pairs.emplace_back(static_cast<int>(v), w);
                }
            }
        }
    }
    rep.candidates = static_cast<int>(pairs.size());

    auto add_to_clusters = [&](const Vec4& x, Complex p, Complex q, double residual) {
        IntersectionCluster* hit = nullptr;
        for (auto& cl : rep.clusters)
            if ((cl.position - x).norm() <= (refine ? 1e-6 * (1.0 + x.norm()) : 2.0 * s0)) hit = &cl;
        if (!hit) {
            rep.clusters.push_back({x, {}, {}, 0.0});
            hit = &rep.clusters.back();
        }
        for (Complex w : {p, q}) {
            bool known = false;
            for (Complex o : hit->chart_points) known = known || chart_distance(m, o, w) <= (refine ? 1e-7 : 4.0 * cell);
            if (!known) {
                hit->chart_points.push_back(w);
                hit->preimages.push_back(c.to_z(w));
            }
        }
        hit->residual = std::max(hit->residual, residual);
    };

    std::vector<std::pair<Complex, Complex>> tried;
    for (auto [a, b] : pairs) {
        Complex p = m.w[static_cast<size_t>(a)], q = m.w[static_cast<size_t>(b)];
        if (!refine) {
            add_to_clusters(0.5 * (m.pos[static_cast<size_t>(a)] + m.pos[static_cast<size_t>(b)]), p, q,
                            (m.pos[static_cast<size_t>(a)] - m.pos[static_cast<size_t>(b)]).norm());
            continue;
        }
        bool seen = false;
        for (auto& [tp, tq] : tried) {
            bool same = chart_distance(m, tp, p) <= 3.0 * cell && chart_distance(m, tq, q) <= 3.0 * cell;
            bool swapped = chart_distance(m, tp, q) <= 3.0 * cell && chart_distance(m, tq, p) <= 3.0 * cell;
            if (same || swapped) {
                seen = true;
                break;
            }
        }
        if (seen) continue;
        tried.emplace_back(p, q);
        ++rep.newton_runs;
        NewtonResult r = newton_pair(data, m, p, q, s);
        if (r.ok) add_to_clusters(r.x, r.p, r.q, r.residual);
    }
    if (refine)
        for (auto& cl : rep.clusters) {
            Vec4 x0 = mesh_position(data, m, cl.chart_points.front(), s);
            for (Complex w : cl.chart_points) cl.residual = std::max(cl.residual, (mesh_position(data, m, w, s) - x0).norm());
        }
    return rep;
}

}  // namespace sslab
