#pragma once

#include <string>
#include <vector>

#include "wavekit/numerics.hpp"

namespace wavekit::app {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 means none

  bool passed() const;
};

inline constexpr int kCheckedCriteria = 9;

/// Runs acceptance criterion `id` (1-9), including its runtime limit.
CriterionReport run_criterion(int id, const QuadratureSpec& spec = {});

}  // namespace wavekit::app
