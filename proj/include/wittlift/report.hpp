#pragma once

// Batch front-end: parse problem descriptions, dispatch to the library,
// emit machine-readable reports, and run the built-in corpus. Reports are
// deterministic byte-for-byte; timing is opt-in so that repeated runs can be
// diffed.

#include "wittlift/kummer.hpp"

#include <string>
#include <vector>

namespace wittlift {

const char* library_version();

struct RunOptions {
  bool json = false;
  bool timing = false;
  bool lenient = false;  // negative verdicts still exit 0
  Int bound = 1 << 22;
  std::string filter;
  std::string task_override;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 negative verdict, 2 input error
  bool verdict = false;
  std::string output;
};

RunResult run_problem_text(const std::string& text, const RunOptions& opt);
RunResult run_corpus(const RunOptions& opt);

// acceptance criteria, shared between the CLI corpus and the test suite;
// the wall-clock budgets are enforced by the acceptance binary, not here,
// so that instrumented or slow builds still get a meaningful scoreboard
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string details;
  double millis = 0.0;
  double budget_ms = 0.0;
};
std::vector<CriterionResult> run_acceptance_criteria(const std::string& filter = "",
                                                     bool include_determinism = false);

}  // namespace wittlift
