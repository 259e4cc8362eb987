#pragma once

#include "subcheck/report.hpp"
#include "subcheck/suite/problem.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace subcheck::suite {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structure-only groups, then (when the problem has a map) submersion groups.
std::vector<std::string> available_groups(const Problem& p);
/// "all" or a comma separated list of group names; throws UsageError.
std::vector<std::string> parse_selection(const Problem& p, const std::string& csv);

/// Deterministic for fixed (problem, selection, sampling) and either policy.
CheckReport run_suite(const Problem& p, const std::vector<std::string>& selection, const Sampling& sampling,
                      ExecutionPolicy policy = ExecutionPolicy::Serial);

enum class ReportFormat { Text, Json };

struct RunInfo {
  std::string name;
  std::string digest;
  std::uint64_t seed = 0;
  std::size_t points = 0;
  std::string phi_convention;
};

std::string report_text(const CheckReport& r, const RunInfo& info);
/// {version, spec_digest, seed, checks: [{name, residual, tolerance, pass, points, notes}]}
std::string report_json(const CheckReport& r, const RunInfo& info);
/// 0 when every check passes, 1 otherwise.
int emit_report(const CheckReport& r, const RunInfo& info, ReportFormat format, std::ostream& out);

}  // namespace subcheck::suite
