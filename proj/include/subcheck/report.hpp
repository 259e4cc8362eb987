#pragma once

// Per-point measurements, their deterministic reduction into a CheckReport,
// and the serial / OpenMP point runners that produce them.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace subcheck {

using Point = Eigen::VectorXd;

/// What a check asserts. Identities must hold on every valid input;
/// properties are verdicts about the particular structure or map.
enum class CheckKind { Identity, Property, Classification, Equivalence };

std::string to_string(CheckKind k);

struct Measurement {
  std::string group;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::Identity;
  std::string label;  // categorical value, e.g. a rank or a classification
};

struct GroupIssue {
  std::string group;
  std::string message;
  bool degenerate = false;  // excluded from maxima rather than an error
};

struct PointOutcome {
  std::vector<Measurement> measurements;
  std::vector<GroupIssue> issues;
};

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::size_t points = 0;
  std::map<std::string, std::string> notes;
};

struct CheckReport {
  std::vector<CheckResult> checks;  // sorted by name

  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
  /// Residual of a named check; throws std::out_of_range when absent.
  double residual(const std::string& name) const;
  void merge(CheckReport other);
};

/// Order-independent reduction: max residual per check name, label agreement
/// across points, issue counts per group. Output sorted by check name.
CheckReport aggregate(const std::vector<PointOutcome>& outcomes);

/// Appends an equivalence entry: passes iff every present member check
/// shares one verdict (residual <= tolerance).
void add_equivalence(CheckReport& report, const std::string& name, const std::vector<std::string>& members,
                     double tolerance);

enum class ExecutionPolicy { Serial, Parallel };

using PointKernel = std::function<PointOutcome(std::size_t index, const Point& p)>;

/// Reference implementation: one point after another.
std::vector<PointOutcome> evaluate_points_serial(const std::vector<Point>& points, const PointKernel& kernel);
/// OpenMP fan-out over points; results land in per-index slots, so the
/// outcome vector is identical to the serial one.
std::vector<PointOutcome> evaluate_points_parallel(const std::vector<Point>& points, const PointKernel& kernel);

std::vector<PointOutcome> evaluate_points(const std::vector<Point>& points, const PointKernel& kernel,
                                          ExecutionPolicy policy);

/// Runs kernel over points and aggregates.
CheckReport run_kernel(const std::vector<Point>& points, const PointKernel& kernel,
                       ExecutionPolicy policy = ExecutionPolicy::Serial);

/// Runs one group's body at a point; its measurements are appended on
/// success, and an exception becomes a GroupIssue for that group instead.
void run_group(PointOutcome& out, const std::string& group,
               const std::function<void(std::vector<Measurement>&)>& body);

}  // namespace subcheck
