#pragma once

#include <nlohmann/json_fwd.hpp>

#include <functional>
#include <string>
#include <vector>

namespace brw {

/// Outcome of one acceptance criterion. `pass` requires both the checked
/// property and the wall-time budget; `detail` carries the measured values so
/// a failure names what went wrong.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  bool all_pass() const;
  nlohmann::json to_json() const;
};

/// Ids of the available criteria, ascending.
std::vector<int> acceptance_ids();

/// One-line rendering: "[PASS] #3 set-order-expansions (0.01s / 5s) ...".
std::string format_line(const CriterionResult& r);

/// Runs the selected criteria in id order (empty = all), invoking `progress`
/// with each result as it finishes. A criterion that throws is recorded as a
/// failure carrying the exception text; unknown ids throw.
AcceptanceReport run_acceptance(const std::vector<int>& ids = {},
                                const std::function<void(const CriterionResult&)>& progress = {});

}  // namespace brw
