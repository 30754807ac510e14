#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sslab/ends.hpp"
#include "sslab/wdata.hpp"

namespace sslab {

// Named parameters as text (CLI --param k=v) with typed getters.
class Params {
public:
    Params() = default;
    Params(std::initializer_list<std::pair<const std::string, std::string>> items) : items_(items) {}

    Params& set(const std::string& key, const std::string& value);
    Params& set(const std::string& key, const char* value) { return set(key, std::string(value)); }
    Params& set(const std::string& key, double value);
    Params& set(const std::string& key, Complex value);
    Params& set(const std::string& key, int value);
    Params& set(const std::string& key, bool value);
    // "k=v"
    Params& parse_assignment(const std::string& text);

    bool has(const std::string& key) const { return items_.count(key) > 0; }
    int get_int(const std::string& key, int fallback) const;
    double get_real(const std::string& key, double fallback) const;
    Complex get_complex(const std::string& key, Complex fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    const std::map<std::string, std::string>& items() const { return items_; }
    std::string str() const;

private:
    std::map<std::string, std::string> items_;
};

struct ExpectedEnd {
    SpherePoint puncture;
    EndKind kind = EndKind::Regular;
    std::optional<int> index, d, d_tilde;
};

struct ExpectedCompleteness {
    SpherePoint puncture;
    bool divergent = true;
};

// Analysis results an entry is known to have; unset fields are not claimed.
struct Expected {
    std::optional<double> K_total, Kperp_total;
    double tol = 1e-6;
    bool pole_conditions = true;  // regularity conditions on poles of phi, psi and zeros of dh
    std::optional<bool> periods_pass;
    std::optional<bool> locus_empty;
    std::vector<ExpectedEnd> ends;
    std::vector<ExpectedCompleteness> completeness;
    std::optional<std::pair<double, double>> density_range;
    std::optional<bool> embedded;
    std::optional<int> intersection_clusters;
    std::string citation;
    std::string notes;
};

struct CatalogEntry {
    std::string name;
    WeierstrassData data;
    std::optional<Expected> expected;
    std::string provenance;
    Params params;
};

CatalogEntry catenoid(double t, double s = 1.0, bool allow_bad = false);
CatalogEntry helicoid_family(double t, Complex lambda);
CatalogEntry maximal_catenoid();
CatalogEntry enneper1(Complex c, Complex s = 1.0, bool allow_irregular = false);
CatalogEntry enneper2(Complex c, Complex s = 1.0, bool allow_irregular = false);
CatalogEntry enneper_k(int k, Complex c, Complex s = 1.0, bool allow_irregular = false);
CatalogEntry knoid(int k, Complex a, Complex b);
CatalogEntry graph1();
CatalogEntry graph2(int n);
CatalogEntry essential_M(int k, double a, bool allow_k1 = false);
CatalogEntry essential_E(int k, double a, bool allow_k1 = false, bool allow_a0 = false);
CatalogEntry essential_C(int k, double a, bool allow_k1 = false, bool allow_a0 = false);
CatalogEntry singular1(Complex a);
CatalogEntry singular2(Complex a = 0.0, Complex b = 2.0);
CatalogEntry incomplete_demo();
CatalogEntry alias_palmer(const CatalogEntry& base, Complex a);

// The explicit graph1 components (1, sqrt2 i, cosh z, sinh z) against the
// x_z of its Weierstrass data: largest relative difference over samples.
double graph1_form_mismatch(int samples = 200);

struct CatalogInfo {
    std::string name;
    std::string params;    // parameter ranges and defaults
    std::string citation;
};
const std::vector<CatalogInfo>& list_entries();

// Builds an entry by name; unknown names or parameters raise ParamError.
CatalogEntry make_entry(const std::string& name, const Params& params = {});

}  // namespace sslab
