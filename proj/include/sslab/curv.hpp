#pragma once

#include <string>
#include <vector>

#include "sslab/ends.hpp"
#include "sslab/settings.hpp"
#include "sslab/wdata.hpp"

namespace sslab {

struct CurvatureSample {
    Complex z;
    double conformal = 0.0;  // e^{2 omega}
    double K = 0.0;
    double Kperp = 0.0;
    Complex Omega, OmegaStar;
};

// -K + i Kperp = 4 e^{-2 omega} phi' conj(psi') / (phi - conj psi)^2.
CurvatureSample curvature_at(const WeierstrassData& data, Complex z);
// Max relative residual of -K + i Kperp = 8 e^{-4 omega} Omega conj(OmegaStar).
double hopf_consistency(const WeierstrassData& data, const std::vector<Complex>& samples);

struct TotalCurvature {
    double K_total = 0.0;
    double Kperp_total = 0.0;
    std::string method;
    bool certified = false;
    double error = 0.0;
    int levels = 0;
    double dual_residual = 0.0;  // contour method: |phi side - psi side|
};

// Parameter-plane integral of 4 phi' conj(psi') / (phi - conj psi)^2 over the
// annuli m <= |z| <= 1/m for a shrinking margin schedule, extrapolated in m.
TotalCurvature total_curvature_area(const WeierstrassData& data, const Settings& s = Settings::defaults());

// One circle contribution of the boundary formula.
struct ContourTerm {
    SpherePoint point;
    Complex value;        // extrapolated limit of 2i \oint
    bool converged = false;
};

struct ContourSums {
    Complex phi_side, psi_side;
    std::vector<ContourTerm> phi_terms, psi_terms;
    bool converged = true;
    double error = 0.0;
};

// 2i \oint dphi/(phi - conj psi) around punctures and poles of phi, and the
// dual 2i \oint conj(psi') dzbar/(phi - conj psi) around punctures and poles of psi,
// each circle counterclockwise in its chart.
ContourSums contour_sums(const WeierstrassData& data, const Settings& s = Settings::defaults());
// Refuses bad singular ends with BadEndError.
TotalCurvature total_curvature_contour(const WeierstrassData& data, const Settings& s = Settings::defaults());

// The raw circle integral \oint phi'/(phi - conj psi) dz, counterclockwise.
Complex phi_side_circle(const WeierstrassData& data, Complex c, double r, int nodes);
Complex psi_side_circle(const WeierstrassData& data, Complex c, double r, int nodes);

struct LedgerLine {
    std::string name;
    double predicted = 0.0;  // value of the identity
    double measured = 0.0;   // value it is compared with
    double residual = 0.0;
    bool pass = false;
};

struct LedgerReport {
    int deg_phi = 0, deg_psi = 0, ends = 0;
    int index_sum = 0, ind_plus_sum = 0, d_tilde_sum = 0;
    std::vector<LedgerLine> lines;
    bool pass = true;

    std::string failures() const;
};

// All Gauss-Bonnet type identities for algebraic data with good ends, checked
// against a measured total curvature. Does not throw on failure.
LedgerReport assemble_ledger(const WeierstrassData& data, const std::vector<EndRecord>& ends,
                             const TotalCurvature& measured, const Settings& s = Settings::defaults());
// As above; throws InconsistentLedger naming the failing identities.
LedgerReport gauss_bonnet_ledger(const WeierstrassData& data, const std::vector<EndRecord>& ends,
                                 const TotalCurvature& measured, const Settings& s = Settings::defaults());

}  // namespace sslab
