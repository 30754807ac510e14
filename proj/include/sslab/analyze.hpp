#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sslab/catalog.hpp"
#include "sslab/curv.hpp"
#include "sslab/locus.hpp"
#include "sslab/mesh.hpp"

namespace sslab {

// One comparison against the expected record.
struct Check {
    std::string name;
    std::string expected;
    std::string measured;
    bool pass = false;
    bool expected_fail = false;  // a documented failure that was reproduced
};

struct AnalyzeOptions {
    bool area = true;        // second total-curvature method
    bool mesh = true;        // self-intersection scan when the record makes a claim
    int locus_grid = 0;      // 0: settings value
};

struct AnalysisReport {
    std::string name, params, citation, notes;
    bool algebraic = false;
    RegularityReport regularity;
    std::optional<LocusFinding> locus;
    PeriodReport periods;
    std::vector<EndRecord> ends;
    std::vector<std::string> errors;  // analyses that could not run
    std::vector<std::pair<SpherePoint, CompletenessResult>> completeness;
    std::optional<TotalCurvature> contour, area;
    std::optional<LedgerReport> ledger;
    std::optional<std::pair<double, double>> density_seen;
    std::optional<IntersectionReport> intersections;
    std::vector<Check> checks;

    bool pass() const;
};

AnalysisReport analyze(const CatalogEntry& entry, const Settings& s = Settings::defaults(),
                       const AnalyzeOptions& opt = {});

std::string format_text(const AnalysisReport& r);
// Flat key=value lines.
std::string format_kv(const AnalysisReport& r);

}  // namespace sslab
