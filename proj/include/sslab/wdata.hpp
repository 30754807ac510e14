#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sslab/mero.hpp"
#include "sslab/settings.hpp"
#include "sslab/types.hpp"

namespace sslab {

// Genus-zero domain: the Riemann sphere minus finitely many punctures.
struct PuncturedSphere {
    std::vector<SpherePoint> punctures;

    bool is_puncture(const SpherePoint& p, double tol = 1e-9) const;
    bool infinity_punctured() const;
    std::vector<Complex> finite_punctures() const;
};

using XzForms = std::array<MeroExpr, 4>;

// Weierstrass data (phi, psi, dh = h' dz) on a punctured sphere. Immutable;
// derived expressions are computed once at construction.
class WeierstrassData {
public:
    WeierstrassData(MeroExpr phi, MeroExpr psi, MeroExpr dh, PuncturedSphere domain, std::string label,
                    bool degenerate_ok = false);

    // Build from explicit x_z components (v1..v4); phi, psi, h' are recovered as
    // (v1 + i v2)/(v3 + v4), (v1 - i v2)/(v3 + v4), (v3 + v4)/2.
    static WeierstrassData from_components(const XzForms& v, PuncturedSphere domain, std::string label);

    const MeroExpr& phi() const { return c_->phi; }
    const MeroExpr& psi() const { return c_->psi; }
    const MeroExpr& dh() const { return c_->dh; }
    const MeroExpr& dphi() const { return c_->dphi; }
    const MeroExpr& dpsi() const { return c_->dpsi; }
    const PuncturedSphere& domain() const { return c_->domain; }
    const std::string& label() const { return c_->label; }
    bool degenerate_ok() const { return c_->degenerate_ok; }
    bool has_explicit_components() const { return c_->explicit_xz; }
    bool is_algebraic() const;
    // phi and psi are single exp-terms and some expression is transcendental:
    // evaluations then go through logarithms to avoid overflow.
    bool log_mode() const { return c_->log_mode; }

    const XzForms& xz() const { return c_->xz; }
    // phi h', psi h', h', phi psi h' (the period integrands).
    const XzForms& period_forms() const { return c_->forms; }
    // Finite points where some x_z component is singular, plus finite punctures.
    const std::vector<Complex>& singular_points() const { return c_->singular; }

    CVec4 xz_at(Complex z) const;
    // log(|phi - conj psi| |h'|), robust to overflow in log mode.
    double log_rho_h(Complex z) const;

private:
    struct Cache {
        MeroExpr phi, psi, dh, dphi, dpsi;
        PuncturedSphere domain;
        std::string label;
        bool degenerate_ok = false;
        bool explicit_xz = false;
        bool log_mode = false;
        XzForms xz, forms;
        std::vector<Complex> singular;
    };
    WeierstrassData() = default;
    void build(bool explicit_components);
    std::shared_ptr<const Cache> c_;
};

// ---------------------------------------------------------------- operations

XzForms xz_components(const WeierstrassData& data);
double lorentz_isotropy_check(const WeierstrassData& data, const std::vector<Complex>& points);
// e^{2 omega} = 4 |phi - conj psi|^2 |h'|^2 = 2 <x_z, conj x_z>.
double metric_density(const WeierstrassData& data, Complex z);

struct PathPiece {
    enum Kind { Line, Arc } kind = Line;
    Complex a, b;            // line endpoints
    Complex center;          // arc
    double radius = 0.0, t0 = 0.0, t1 = 0.0;

    Complex at(double s) const;
    Complex tangent(double s) const;
    Complex start() const { return at(0.0); }
    Complex end() const { return at(1.0); }
    double distance_to(Complex p) const;
};

struct PathSpec {
    std::vector<PathPiece> pieces;

    static PathSpec line(Complex a, Complex b);
    static PathSpec arc(Complex center, double radius, double t0, double t1);
    static PathSpec circle(Complex center, double radius) { return arc(center, radius, 0.0, 2.0 * kPi); }
    PathSpec& then_line(Complex b);
    PathSpec& then_arc(Complex center, double radius, double t0, double t1);
    Complex basepoint() const;
    Complex endpoint() const;
};

// Integral of x_z dz along the path (complex, before taking 2 Re).
CVec4 integrate_xz(const WeierstrassData& data, const PathSpec& path, const Settings& s = Settings::defaults());
// 2 Re of the above: the position relative to the basepoint.
Vec4 immerse(const WeierstrassData& data, const PathSpec& path, const Settings& s = Settings::defaults());

struct RegularityReport {
    bool condition1 = true;  // poles of phi, psi disjoint in the interior
    bool condition2 = true;  // zeros of dh match poles of phi or psi
    bool partial = false;    // transcendental data: only checkable points examined
    std::optional<bool> locus_empty;  // filled in by the locus module
    std::vector<SpherePoint> essential;
    std::vector<std::string> notes;

    bool pass() const { return condition1 && condition2 && locus_empty.value_or(true); }
};
RegularityReport regularity_report(const WeierstrassData& data);

struct PeriodRow {
    SpherePoint puncture;
    double radius = 0.0;
    Complex phi_dh, psi_dh, dh, phipsi_dh;
    double antisymmetry = 0.0;   // |P(phi dh) + conj P(psi dh)|
    double re_dh = 0.0;          // |Re P(dh)|
    double re_phipsi_dh = 0.0;   // |Re P(phi psi dh)|
    bool pass = false;
};

struct PeriodReport {
    std::vector<PeriodRow> rows;
    bool pass = true;
};
PeriodReport period_report(const WeierstrassData& data, const Settings& s = Settings::defaults());

WeierstrassData lorentz_frame_change(const WeierstrassData& data, const Mat2c& A);

struct CompletenessResult {
    bool divergent = false;
    double exponent = 0.0;       // ds ~ r^exponent dr in the chart at the puncture
    int levels = 0;
    std::vector<double> partial_sums;
};
// Heuristic: integrates ds along a ray into the puncture over a geometric schedule.
CompletenessResult completeness_probe(const WeierstrassData& data, const SpherePoint& puncture,
                                      const Settings& s = Settings::defaults(), double ray_angle = 0.0);

// Text data files: key = value lines with keys label, phi, psi, dh, punctures
// ("0; inf; (1,2)"), degenerate (true/false).
WeierstrassData load_wdata(const std::string& path);
void save_wdata(const WeierstrassData& data, const std::string& path);
WeierstrassData parse_wdata(const std::string& text);
std::string format_wdata(const WeierstrassData& data);

}  // namespace sslab
