#pragma once

#include <functional>
#include <string>
#include <vector>

namespace isokit {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Measured values behind the verdict.
    std::string detail;
    double seconds = 0.0;
};

/// Criteria 1-9: worked examples, family round-trip, formula and operator
/// equivalence, motion invariance, oracle agreement, negative controls.
/// `progress` is called after each criterion.
[[nodiscard]] std::vector<CriterionResult>
run_acceptance(const std::function<void(const CriterionResult&)>& progress = {});

/// One line per criterion: "PASS  3  name  (detail, 0.012 s)".
[[nodiscard]] std::string format_criterion(const CriterionResult& r);

} // namespace isokit
