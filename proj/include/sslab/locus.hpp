#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sslab/settings.hpp"
#include "sslab/wdata.hpp"

namespace sslab {

// Scan region in the parameter plane.
struct Window {
    enum Shape { Rect, Annulus, Disc } shape = Rect;
    Complex lo{-1.0, -1.0}, hi{1.0, 1.0};  // Rect
    double rmin = 0.0, rmax = 1.0;          // Annulus (rmin, rmax), Disc (rmax)

    static Window rect(Complex lo, Complex hi);
    static Window annulus(double rmin, double rmax);
    static Window disc(double r);
    bool contains(Complex z, double slack = 0.0) const;
    std::string str() const;
};

// Annulus [locus_rmin, locus_rmax] when 0 is a puncture or singular point,
// otherwise the disc of radius locus_disc.
Window default_window(const WeierstrassData& data, const Settings& s = Settings::defaults());

struct LocusPoint {
    Complex z;
    double residual = 0.0;
    std::optional<int> m, n, index;
    int winding = 0;
    bool degenerate = false;  // |phi'| = |psi'|: singular real Jacobian
    bool bad = false;         // m = n: index undefined
};

struct LocusCurve {
    std::vector<Complex> samples;  // ordered along the chain
    double max_residual = 0.0;
};

enum class LocusKind { Empty, IsolatedPoints, Curve, Mixed };
std::string to_string(LocusKind k);

struct LocusFinding {
    LocusKind kind = LocusKind::Empty;
    std::vector<LocusPoint> points;
    std::vector<LocusCurve> curves;
    Window window;
    int grid = 0;
    double min_abs_F = 0.0;  // smallest |phi - conj psi| seen on the grid

    bool empty() const { return kind == LocusKind::Empty; }
    // All root locations, isolated points first.
    std::vector<Complex> roots() const;
};

// Solutions of phi(z) = conj psi(z) in the window: grid seeds refined by
// minimal-norm Gauss-Newton on the real 2x2 system, deduplicated and grouped.
LocusFinding scan(const WeierstrassData& data, const Window& window, int grid_n,
                  const Settings& s = Settings::defaults());

// Refines a starting point onto the locus; returns nullopt when it fails.
std::optional<Complex> refine_root(const WeierstrassData& data, Complex z0, const Settings& s = Settings::defaults());

// Vanishing orders of phi - phi(z0), psi - psi(z0) and the winding index.
LocusPoint local_data(const WeierstrassData& data, Complex z0, const Settings& s = Settings::defaults());

struct RegularityVerdict {
    bool pass = true;
    std::vector<LocusFinding> findings;
};
RegularityVerdict regularity_verdict(const WeierstrassData& data, const std::vector<Window>& windows,
                                     const Settings& s = Settings::defaults());

// phi = z^m (z + a), psi = z^(m+1)/(z + b), b = 1 - a, on the default annulus.
WeierstrassData fourpi_family(int m, Complex a);
LocusFinding fourpi_scan(int m, Complex a, const Settings& s = Settings::defaults());

std::string locus_csv(const LocusFinding& f);

}  // namespace sslab
