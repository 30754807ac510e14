#include "sslab/locus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "sslab/ends.hpp"
#include "sslab/errors.hpp"

namespace sslab {

Window Window::rect(Complex lo, Complex hi) {
    Window w;
    w.shape = Rect;
    w.lo = lo;
    w.hi = hi;
    return w;
}

Window Window::annulus(double rmin, double rmax) {
    Window w;
    w.shape = Annulus;
    w.rmin = rmin;
    w.rmax = rmax;
    return w;
}

Window Window::disc(double r) {
    Window w;
    w.shape = Disc;
    w.rmax = r;
    return w;
}

bool Window::contains(Complex z, double slack) const {
    switch (shape) {
        case Rect:
            return z.real() >= lo.real() - slack && z.real() <= hi.real() + slack && z.imag() >= lo.imag() - slack &&
                   z.imag() <= hi.imag() + slack;
        case Annulus:
            return std::abs(z) >= rmin * (1.0 - slack) && std::abs(z) <= rmax * (1.0 + slack);
        case Disc:
            return std::abs(z) <= rmax * (1.0 + slack);
    }
    return false;
}

std::string Window::str() const {
    char buf[160];
    switch (shape) {
        case Rect:
            std::snprintf(buf, sizeof buf, "rect[%g,%g]x[%g,%g]", lo.real(), hi.real(), lo.imag(), hi.imag());
            break;
        case Annulus:
            std::snprintf(buf, sizeof buf, "annulus[%g,%g]", rmin, rmax);
            break;
        case Disc:
            std::snprintf(buf, sizeof buf, "disc[%g]", rmax);
            break;
    }
    return buf;
}

Window default_window(const WeierstrassData& data, const Settings& s) {
    bool zero_special = data.domain().is_puncture(SpherePoint::at(0.0));
    for (Complex q : data.singular_points()) zero_special = zero_special || std::abs(q) < 1e-12;
    if (zero_special) return Window::annulus(s.locus_rmin, s.locus_rmax);
    return Window::disc(s.locus_disc);
}

std::string to_string(LocusKind k) {
    switch (k) {
        case LocusKind::Empty: return "Empty";
        case LocusKind::IsolatedPoints: return "IsolatedPoints";
        case LocusKind::Curve: return "Curve";
        case LocusKind::Mixed: return "Mixed";
    }
    return "?";
}

std::vector<Complex> LocusFinding::roots() const {
    std::vector<Complex> out;
    for (auto& p : points) out.push_back(p.z);
    for (auto& c : curves) out.insert(out.end(), c.samples.begin(), c.samples.end());
    return out;
}

namespace {

struct FEval {
    Complex F, A, B;  // F, dF/dz, dF/dzbar
    double scale = 1.0;
    bool ok = false;
};

FEval evalF(const WeierstrassData& d, Complex z) {
    FEval e;
    try {
        Complex p = d.phi()(z), q = d.psi()(z);
        e.F = p - std::conj(q);
        e.A = d.dphi()(z);
        e.B = -std::conj(d.dpsi()(z));
        e.scale = 1.0 + std::abs(p);
        e.ok = std::isfinite(std::abs(e.F)) && std::isfinite(std::abs(e.A)) && std::isfinite(std::abs(e.B));
    } catch (const Error&) {
        e.ok = false;
    }
    return e;
}

bool near_singular(const WeierstrassData& d, Complex z, double tol) {
    for (Complex q : d.singular_points())
        if (std::abs(z - q) < tol) return true;
    return false;
}

}  // namespace

std::optional<Complex> refine_root(const WeierstrassData& data, Complex z0, const Settings& s) {
    Complex z = z0;
    for (int it = 0; it < 60; ++it) {
        FEval e = evalF(data, z);
        if (!e.ok) return std::nullopt;
        if (std::abs(e.F) <= s.locus_residual * e.scale) {
            // one more step to land well inside the tolerance
            Eigen::Matrix2d J;
            Complex c1 = e.A + e.B, c2 = kI * (e.A - e.B);
            J << c1.real(), c2.real(), c1.imag(), c2.imag();
            Eigen::Vector2d r(e.F.real(), e.F.imag());
            Eigen::Vector2d step = J.completeOrthogonalDecomposition().solve(r);
            Complex zn = z - Complex(step(0), step(1));
            FEval en = evalF(data, zn);
            if (en.ok && std::abs(en.F) <= std::abs(e.F)) return zn;
            return z;
        }
        Eigen::Matrix2d J;
        Complex c1 = e.A + e.B, c2 = kI * (e.A - e.B);
        J << c1.real(), c2.real(), c1.imag(), c2.imag();
        Eigen::Vector2d r(e.F.real(), e.F.imag());
        Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix2d> cod;
        cod.setThreshold(1e-10);
        cod.compute(J);
        Eigen::Vector2d step = cod.solve(r);
        if (!step.allFinite()) return std::nullopt;
        Complex dz(step(0), step(1));
        // damping keeps the iteration from jumping across the window
        double lim = 0.5 * (1.0 + std::abs(z));
        if (std::abs(dz) > lim) dz *= lim / std::abs(dz);
        double f0 = std::abs(e.F);
        Complex zn = z - dz;
        for (int k = 0; k < 30; ++k) {
            FEval en = evalF(data, zn);
            if (en.ok && std::abs(en.F) < f0) break;
            dz *= 0.5;
            zn = z - dz;
        }
        if (std::abs(zn - z) < 1e-16 * (1.0 + std::abs(z))) return std::nullopt;
        z = zn;
    }
    return std::nullopt;
}

LocusPoint local_data(const WeierstrassData& data, Complex z0, const Settings& s) {
    LocusPoint p;
    p.z = z0;
    FEval e = evalF(data, z0);
    if (!e.ok) throw PoleError("local data requested at a singular point " + format_complex(z0));
    p.residual = std::abs(e.F);
    double det = std::norm(e.A) - std::norm(e.B);
    p.degenerate = std::abs(det) <= 1e-8 * (std::norm(e.A) + std::norm(e.B));
    try {
        p.m = vanishing_order(data.phi(), z0);
        p.n = vanishing_order(data.psi(), z0);
    } catch (const NotIsolated&) {
    }
    double d = 1e-3 * (1.0 + std::abs(z0));
    for (Complex q : data.singular_points()) d = std::min(d, 0.5 * std::abs(q - z0));
    std::optional<int> w;
    for (int j = 0; j < 6 && !w; ++j, d *= 0.5) {
        try {
            int a = local_winding(data.phi(), data.psi(), z0, d, s).value;
            int b = local_winding(data.phi(), data.psi(), z0, 0.5 * d, s).value;
            if (a == b) w = a;
        } catch (const Error&) {
        }
    }
    if (!w) throw NotIsolated("winding around " + format_complex(z0) + " does not settle");
    p.winding = *w;
    if (p.m && p.n && *p.m == *p.n) {
        p.bad = true;
        return p;
    }
    if (p.m && p.n) {
        int want = predicted_index(*p.m, *p.n);
        if (want != *w)
            throw InconsistentLedger("winding " + std::to_string(*w) + " at " + format_complex(z0) +
                                     " disagrees with the predicted index " + std::to_string(want));
    }
    p.index = *w;
    return p;
}

LocusFinding scan(const WeierstrassData& data, const Window& window, int grid_n, const Settings& s) {
    if (grid_n < 8) throw ParamError("grid too coarse");
    LocusFinding out;
    out.window = window;
    out.grid = grid_n;
    int nx = grid_n, ny = grid_n;
    std::vector<Complex> Z(nx * ny);
    std::vector<double> H(nx * ny);
    bool periodic_y = window.shape == Window::Annulus;
    if (window.shape == Window::Annulus) {
        double a = std::log(window.rmin), b = std::log(window.rmax);
        double ds = (b - a) / (nx - 1), dt = 2.0 * kPi / ny;
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                double r = std::exp(a + i * ds);
                Z[i * ny + j] = std::polar(r, (j + 0.25) * dt);
                H[i * ny + j] = r * std::max(ds, dt);
            }
    } else {
        Complex lo = window.lo, hi = window.hi;
        if (window.shape == Window::Disc) {
            lo = Complex(-window.rmax, -window.rmax);
            hi = Complex(window.rmax, window.rmax);
        }
        double dx = (hi.real() - lo.real()) / (nx - 1), dy = (hi.imag() - lo.imag()) / (ny - 1);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                Z[i * ny + j] = Complex(lo.real() + i * dx, lo.imag() + j * dy);
                H[i * ny + j] = std::max(dx, dy);
            }
    }
    std::vector<double> absF(nx * ny, std::numeric_limits<double>::infinity());
    std::vector<char> seed(nx * ny, 0);
    out.min_abs_F = std::numeric_limits<double>::infinity();
    for (int k = 0; k < nx * ny; ++k) {
        if (!window.contains(Z[k])) continue;
        FEval e = evalF(data, Z[k]);
        if (!e.ok) continue;
        absF[k] = std::abs(e.F);
        out.min_abs_F = std::min(out.min_abs_F, absF[k]);
        if (absF[k] < 10.0 * H[k] * (std::abs(e.A) + std::abs(e.B))) seed[k] = 1;
    }
    auto at = [&](int i, int j) {
        if (periodic_y) j = (j + ny) % ny;
        if (i < 0 || i >= nx || j < 0 || j >= ny) return std::numeric_limits<double>::infinity();
        return absF[i * ny + j];
    };
    std::vector<Complex> roots;
    auto add_root = [&](Complex z) {
        for (Complex r : roots)
            if (std::abs(r - z) <= s.locus_dedup * (1.0 + std::abs(z))) return;
        roots.push_back(z);
    };
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            int k = i * ny + j;
            if (!seed[k]) continue;
            double f = absF[k];
            bool row_min = f <= at(i - 1, j) && f <= at(i + 1, j);
            bool col_min = f <= at(i, j - 1) && f <= at(i, j + 1);
            if (!row_min && !col_min) continue;
            auto z = refine_root(data, Z[k], s);
            if (!z) continue;
            if (!window.contains(*z, 1e-9)) continue;
            if (std::abs(*z - Z[k]) > 4.0 * H[k]) continue;
            if (near_singular(data, *z, s.clearance)) continue;
            add_root(*z);
        }
    // group roots whose separation is below a few grid spacings
    size_t n = roots.size();
    std::vector<int> comp(n, -1);
    auto link = [&](Complex a, Complex b) {
        double h = window.shape == Window::Annulus
                       ? std::max(std::abs(a), std::abs(b)) *
                             std::max((std::log(window.rmax) - std::log(window.rmin)) / (nx - 1), 2.0 * kPi / ny)
                       : H[0];
        return std::abs(a - b) <= 3.0 * h;
    };
    int ncomp = 0;
    for (size_t i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<size_t> stack{i};
        comp[i] = ncomp;
        while (!stack.empty()) {
            size_t a = stack.back();
            stack.pop_back();
            for (size_t b = 0; b < n; ++b)
                if (comp[b] < 0 && link(roots[a], roots[b])) {
                    comp[b] = ncomp;
                    stack.push_back(b);
                }
        }
        ++ncomp;
    }
    for (int c = 0; c < ncomp; ++c) {
        std::vector<Complex> members;
        for (size_t i = 0; i < n; ++i)
            if (comp[i] == c) members.push_back(roots[i]);
        if (members.size() >= 8) {
            // order by a nearest-neighbour walk from an extreme member
            LocusCurve curve;
            std::vector<bool> used(members.size(), false);
            size_t cur = 0;
            for (size_t i = 1; i < members.size(); ++i)
                if (members[i].real() < members[cur].real()) cur = i;
            for (size_t step = 0; step < members.size(); ++step) {
                used[cur] = true;
                curve.samples.push_back(members[cur]);
                FEval e = evalF(data, members[cur]);
                curve.max_residual = std::max(curve.max_residual, std::abs(e.F) / e.scale);
                size_t best = members.size();
                double bd = std::numeric_limits<double>::infinity();
                for (size_t j = 0; j < members.size(); ++j)
                    if (!used[j] && std::abs(members[j] - members[cur]) < bd) {
                        bd = std::abs(members[j] - members[cur]);
                        best = j;
                    }
                if (best == members.size()) break;
                cur = best;
            }
            out.curves.push_back(std::move(curve));
        } else {
            for (Complex z : members) {
                LocusPoint p;
                try {
                    p = local_data(data, z, s);
                } catch (const Error&) {
                    p.z = z;
                    FEval e = evalF(data, z);
                    p.residual = std::abs(e.F);
                    p.degenerate = true;
                }
                out.points.push_back(p);
            }
        }
    }
    bool pts = !out.points.empty(), crv = !out.curves.empty();
    out.kind = pts && crv ? LocusKind::Mixed : pts ? LocusKind::IsolatedPoints : crv ? LocusKind::Curve : LocusKind::Empty;
    return out;
}

RegularityVerdict regularity_verdict(const WeierstrassData& data, const std::vector<Window>& windows,
                                     const Settings& s) {
    RegularityVerdict v;
    for (auto& w : windows) {
        LocusFinding f = scan(data, w, s.locus_grid, s);
        v.pass = v.pass && f.empty();
        v.findings.push_back(std::move(f));
    }
    return v;
}

WeierstrassData fourpi_family(int m, Complex a) {
    if (m < 1) throw ParamError("m must be positive");
    Complex b = 1.0 - a;
    if (a == Complex(0.0, 0.0) || b == Complex(0.0, 0.0)) throw ParamError("a and b = 1 - a must be nonzero");
    MeroExpr zb = MeroExpr::poly({b, 1.0});
    MeroExpr phi = MeroExpr::monomial(m) * MeroExpr::poly({a, 1.0});
    MeroExpr psi = MeroExpr::monomial(m + 1) / zb;
    MeroExpr dh = zb * MeroExpr::monomial(-(m + 2));
    return WeierstrassData(phi, psi, dh, PuncturedSphere{{SpherePoint::at(0.0), SpherePoint::infinity()}},
                           "fourpi(m=" + std::to_string(m) + ")");
}

LocusFinding fourpi_scan(int m, Complex a, const Settings& s) {
    WeierstrassData d = fourpi_family(m, a);
    return scan(d, Window::annulus(s.locus_rmin, s.locus_rmax), s.locus_grid, s);
}

std::string locus_csv(const LocusFinding& f) {
    std::ostringstream o;
    o << "kind,re,im,residual,m,n,index,degenerate\n";
    char buf[256];
    auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
    for (auto& p : f.points) {
        std::snprintf(buf, sizeof buf, "point,%.17g,%.17g,%.3e,", p.z.real(), p.z.imag(), p.residual);
        o << buf << opt(p.m) << "," << opt(p.n) << "," << opt(p.index) << "," << (p.degenerate ? 1 : 0) << "\n";
    }
    for (size_t c = 0; c < f.curves.size(); ++c)
        for (Complex z : f.curves[c].samples) {
            std::snprintf(buf, sizeof buf, "curve%zu,%.17g,%.17g,,,,,\n", c, z.real(), z.imag());
            o << buf;
        }
    return o.str();
}

}  // namespace sslab
