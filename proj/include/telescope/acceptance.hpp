#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace telescope {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;
};

/// Runs the acceptance criteria (all of them when `only` is empty). Every random choice
/// derives from `seed`. A criterion fails when a check fails or it exceeds its time budget.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0, const std::vector<int>& only = {});

/// `PASS  3  name  (1.20 s / 120 s)  detail`
std::string format_result(const CriterionResult& r);

}  // namespace telescope
