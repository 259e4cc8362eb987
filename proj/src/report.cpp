#include "subcheck/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <set>
#include <stdexcept>

namespace subcheck {

std::string to_string(CheckKind k) {
  switch (k) {
    case CheckKind::Identity: return "identity";
    case CheckKind::Property: return "property";
    case CheckKind::Classification: return "classification";
    case CheckKind::Equivalence: return "equivalence";
  }
  return "unknown";
}

bool CheckReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* CheckReport::find(const std::string& name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

double CheckReport::residual(const std::string& name) const {
  const auto* c = find(name);
  if (!c) throw std::out_of_range("no check named " + name);
  return c->residual;
}

void CheckReport::merge(CheckReport other) {
  for (auto& c : other.checks) checks.push_back(std::move(c));
  std::stable_sort(checks.begin(), checks.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
}

namespace {

std::string format_tolerance(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

struct Accumulator {
  std::string group;
  double residual = 0.0;
  double tolerance = 0.0;
  bool nan = false;
  std::size_t points = 0;
  CheckKind kind = CheckKind::Identity;
  std::set<std::string> labels;
};

struct GroupStats {
  std::size_t degenerate = 0;
  std::size_t errors = 0;
  std::string first_error;
  std::string first_degenerate;
};

}  // namespace

CheckReport aggregate(const std::vector<PointOutcome>& outcomes) {
  std::map<std::string, Accumulator> acc;
  std::map<std::string, GroupStats> groups;
  for (const auto& o : outcomes) {
    for (const auto& m : o.measurements) {
      auto& a = acc[m.name];
      a.group = m.group;
      a.tolerance = m.tolerance;
      a.kind = m.kind;
      if (std::isnan(m.residual))
        a.nan = true;
      else
        a.residual = std::max(a.residual, m.residual);
      ++a.points;
      a.labels.insert(m.label);
    }
    for (const auto& issue : o.issues) {
      auto& g = groups[issue.group];
      if (issue.degenerate) {
        if (g.degenerate++ == 0) g.first_degenerate = issue.message;
      } else {
        if (g.errors++ == 0) g.first_error = issue.message;
      }
    }
  }

  CheckReport report;
  std::set<std::string> groups_with_checks;
  for (const auto& [name, a] : acc) {
    CheckResult r;
    r.name = name;
    r.tolerance = a.tolerance;
    r.points = a.points;
    r.residual = a.nan ? std::numeric_limits<double>::quiet_NaN() : a.residual;
    r.pass = !a.nan && a.residual <= a.tolerance;
    r.notes["kind"] = to_string(a.kind);
    if (a.labels.size() == 1) {
      if (!a.labels.begin()->empty()) r.notes["value"] = *a.labels.begin();
    } else {
      std::string all;
      for (const auto& l : a.labels) all += (all.empty() ? "" : ",") + l;
      r.notes["value"] = "inconsistent:" + all;
      r.pass = false;
    }
    groups_with_checks.insert(a.group);
    if (auto it = groups.find(a.group); it != groups.end()) {
      const auto& g = it->second;
      if (g.degenerate) {
        r.notes["excluded_points"] = std::to_string(g.degenerate);
        r.notes["excluded_reason"] = g.first_degenerate;
      }
      if (g.errors) {
        r.notes["errors"] = std::to_string(g.errors);
        r.notes["first_error"] = g.first_error;
        r.pass = false;
      }
    }
    report.checks.push_back(std::move(r));
  }
  for (const auto& [group, g] : groups) {
    if (groups_with_checks.count(group)) continue;
    CheckResult r;
    r.name = group + ".evaluation";
    r.residual = static_cast<double>(g.errors + g.degenerate);
    r.tolerance = 0.0;
    r.pass = false;
    r.notes["kind"] = "identity";
    if (g.errors) {
      r.notes["errors"] = std::to_string(g.errors);
      r.notes["first_error"] = g.first_error;
    }
    if (g.degenerate) {
      r.notes["excluded_points"] = std::to_string(g.degenerate);
      r.notes["excluded_reason"] = g.first_degenerate;
    }
    report.checks.push_back(std::move(r));
  }
  std::sort(report.checks.begin(), report.checks.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return report;
}

void add_equivalence(CheckReport& report, const std::string& name, const std::vector<std::string>& members,
                     double tolerance) {
  std::vector<const CheckResult*> present;
  for (const auto& m : members)
    if (const auto* c = report.find(m)) present.push_back(c);
  if (present.empty()) return;
  CheckResult r;
  r.name = name;
  r.tolerance = tolerance;  // members are judged at this level; the residual itself is 0 or 1
  std::size_t holds = 0;
  std::size_t points = 0;
  for (const auto* c : present) {
    const bool h = !std::isnan(c->residual) && c->residual <= tolerance;
    holds += h ? 1 : 0;
    points = std::max(points, c->points);
    r.notes[c->name] = h ? "holds" : "fails";
  }
  const bool agree = holds == 0 || holds == present.size();
  r.residual = agree ? 0.0 : 1.0;
  r.pass = agree;
  r.points = points;
  r.notes["kind"] = to_string(CheckKind::Equivalence);
  r.notes["verdict_tolerance"] = format_tolerance(tolerance);
  r.notes["verdict"] = holds == present.size() ? "all hold" : (holds == 0 ? "none hold" : "disagree");
  report.checks.push_back(std::move(r));
  std::sort(report.checks.begin(), report.checks.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
}

std::vector<PointOutcome> evaluate_points_serial(const std::vector<Point>& points, const PointKernel& kernel) {
  std::vector<PointOutcome> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      out[i] = kernel(i, points[i]);
    } catch (const std::exception& e) {
      out[i].issues.push_back({"kernel", e.what(), false});
    }
  }
  return out;
}

std::vector<PointOutcome> evaluate_points_parallel(const std::vector<Point>& points, const PointKernel& kernel) {
  std::vector<PointOutcome> out(points.size());
  const auto n = static_cast<long long>(points.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out[idx] = kernel(idx, points[idx]);
    } catch (const std::exception& e) {
      out[idx].issues.push_back({"kernel", e.what(), false});
    }
  }
  return out;
}

std::vector<PointOutcome> evaluate_points(const std::vector<Point>& points, const PointKernel& kernel,
                                          ExecutionPolicy policy) {
  return policy == ExecutionPolicy::Parallel ? evaluate_points_parallel(points, kernel)
                                             : evaluate_points_serial(points, kernel);
}

CheckReport run_kernel(const std::vector<Point>& points, const PointKernel& kernel, ExecutionPolicy policy) {
  return aggregate(evaluate_points(points, kernel, policy));
}

void run_group(PointOutcome& out, const std::string& group,
               const std::function<void(std::vector<Measurement>&)>& body) {
  std::vector<Measurement> local;
  try {
    body(local);
  } catch (const std::exception& e) {
    out.issues.push_back({group, e.what(), false});
    return;
  }
  for (auto& m : local) out.measurements.push_back(std::move(m));
}

}  // namespace subcheck
