#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aqcc::selftest {

enum class Tier { Quick, Desk, Full };

struct CriterionResult {
  int id = 0;
  bool pass = false;
  std::string detail;
  double seconds = 0, limit_seconds = 0;
};

// Runs acceptance criteria 1-7 at the given scale. Progress notes go to `log`.
std::vector<CriterionResult> run_acceptance(Tier tier, std::ostream& log);

std::string format_result(const CriterionResult& r);

}  // namespace aqcc::selftest
