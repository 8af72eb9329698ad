#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace profinite::cli {

  /// Exit codes.
  inline constexpr int kOk             = 0;
  inline constexpr int kBudgetExceeded = 1;
  inline constexpr int kInputError     = 2;

  /// Environment variable overriding the default search budget.
  inline constexpr const char* kBudgetVariable = "PROFINITE_BUDGET";

  /// Runs one command. `args` excludes the program name.
  int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace profinite::cli
