#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sslab/settings.hpp"

namespace sslab {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceReport {
    std::vector<CriterionResult> results;
    bool pass() const;
};

inline constexpr int kCriteria = 11;

// Runs criteria 1..11 (or the listed ones). Each result line is also written
// to progress as soon as it is known.
AcceptanceReport run_acceptance(const Settings& s = Settings::defaults(), const std::vector<int>& only = {},
                                std::ostream* progress = nullptr);

// "criterion N: PASS|FAIL title (detail)"
std::string format_result(const CriterionResult& r);
std::string format_acceptance(const AcceptanceReport& r);
std::string format_acceptance_kv(const AcceptanceReport& r);

}  // namespace sslab
