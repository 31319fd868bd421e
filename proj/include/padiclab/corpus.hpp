#pragma once

// The acceptance suites: fixed corpora, reference oracles and one verdict per
// criterion. Shared by the `corpus` subcommand and the acceptance test.

#include "padiclab/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace padiclab::corpus {

inline constexpr uint64_t kDefaultSeed = 20260917;

struct Options {
  uint64_t seed = kDefaultSeed;
  /// Keep per-case rows in the detail output.
  bool verbose = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  /// Pinned tolerances and limits, printed with the verdict.
  std::string tolerance;
  bool passed = false;
  std::string summary;
  double seconds = 0;
  Json detail;
};

inline constexpr int kCriteria = 10;

CriterionResult run_criterion(int id, const Options& options);
std::vector<CriterionResult> run_all(const std::vector<int>& ids, const Options& options);

/// "[PASS] C1 closed-form-integrals: <summary> {tolerance}"
std::string format_line(const CriterionResult& r);
Json to_json(const CriterionResult& r, bool with_timing);

}  // namespace padiclab::corpus
