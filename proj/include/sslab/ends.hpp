#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sslab/settings.hpp"
#include "sslab/winding.hpp"
#include "sslab/wdata.hpp"

namespace sslab {

enum class EndKind { Regular, GoodSingular, BadSingular, Transcendental };

std::string to_string(EndKind k);

struct EndRecord {
    SpherePoint puncture;
    EndKind kind = EndKind::Regular;
    int m = 0, n = 0;              // vanishing orders when phi(p) = conj psi(p)
    std::optional<int> index;      // unset for bad and transcendental ends
    int ind_plus = 0;
    std::optional<int> d;          // unset for transcendental ends
    std::optional<int> d_tilde;
    double winding = 0.0;          // continuous winding value behind index
};

// phi and psi near p in a chart (w = 1/z at infinity), after a Mobius frame
// change that makes both finite at p. The expressions are kept when the
// frame change could be done symbolically; evaluators are always set.
struct EndChart {
    CFun phi, psi, dphi, dpsi;
    std::optional<MeroExpr> phi_expr, psi_expr;
    Complex center;
    Mat2c frame = Mat2c::Identity();
    bool one_pole = false;          // exactly one of phi, psi has a pole at p: a regular end
    std::vector<Complex> singular;  // other singular points in the chart
};

EndChart end_chart(const WeierstrassData& data, const SpherePoint& p);

// Order of vanishing of f - f(p) at p via Taylor coefficients from symbolic
// derivatives; coefficients below tol * max(1, |f(p)|) count as zero.
// Throws NotIsolated when no coefficient up to max_order survives.
int vanishing_order(const MeroExpr& f, Complex p, double tol = 1e-10, int max_order = 40);

// Index predicted from the vanishing orders: m if m < n, -n if m > n.
int predicted_index(int m, int n);

EndRecord classify_end(const WeierstrassData& data, const SpherePoint& p);
int end_index(const WeierstrassData& data, const SpherePoint& p, const Settings& s = Settings::defaults());
// (d, d_tilde); d + 1 is the largest pole order of x_z dz at p.
std::pair<int, int> end_multiplicity(const WeierstrassData& data, const SpherePoint& p,
                                     const Settings& s = Settings::defaults());
// Full record for one puncture; the winding is certified against the prediction.
EndRecord analyze_end(const WeierstrassData& data, const SpherePoint& p, const Settings& s = Settings::defaults());
std::vector<EndRecord> end_table(const WeierstrassData& data, const Settings& s = Settings::defaults());

// Winding of f - conj g around c; shared with the locus module.
Winding local_winding(const MeroExpr& f, const MeroExpr& g, Complex c, double r, const Settings& s);
Winding local_winding(const CFun& f, const CFun& g, const CFun& df, const CFun& dg, Complex c, double r,
                      const Settings& s);

struct IndexCheck {
    int index_sum = 0;
    int deg_phi = 0, deg_psi = 0;
    bool pass = false;
};
// Sum of indices over ends and interior zeros of phi - conj psi against
// deg phi - deg psi. Throws InconsistentLedger on mismatch.
IndexCheck index_theorem_check(const WeierstrassData& data, const std::vector<EndRecord>& ends,
                               const std::vector<int>& interior_indices);

}  // namespace sslab
