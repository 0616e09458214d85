#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace natmono {

enum class CaseStatus { Pass, Fail, Info };

struct CaseResult {
  std::string name;
  CaseStatus status = CaseStatus::Pass;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;

  bool passed() const;
};

/// monodromy, assembly, numeric_monodromy, propagator, class_invariance,
/// okubo, limits.
const std::vector<std::string>& suite_names();

/// Runs one named suite. Random draws come from a generator seeded with
/// `seed`, so reruns with the same seed produce identical reports.
SuiteReport run_suite(std::string_view name, std::uint64_t seed);

/// Aggregates several reports under suite name "all", prefixing case names.
SuiteReport merge_reports(const std::vector<SuiteReport>& reports);

std::string_view to_string(CaseStatus s);

/// {suite, cases: [{name, status, observed, expected, tolerance}]}
nlohmann::json to_json(const SuiteReport& report);

}  // namespace natmono
