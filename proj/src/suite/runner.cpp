#include "subcheck/suite/runner.hpp"

#include "subcheck/contact/structure.hpp"
#include "subcheck/submersion/checks.hpp"
#include "subcheck/suite/sampling.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace subcheck::suite {

namespace {

const std::vector<std::string>& structure_groups() {
  static const std::vector<std::string> g = {"almost_contact", "metric_compatibility", "cosymplectic", "connection"};
  return g;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string format_residual(double r) {
  if (std::isnan(r)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

}  // namespace

std::vector<std::string> available_groups(const Problem& p) {
  std::vector<std::string> out = structure_groups();
  if (p.submersion)
    for (const auto& g : submersion::submersion_groups()) out.push_back(g);
  return out;
}

std::vector<std::string> parse_selection(const Problem& p, const std::string& csv) {
  const auto avail = available_groups(p);
  if (csv == "all") return avail;
  std::vector<std::string> picked;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    if (!contains(avail, item)) {
      std::string known;
      for (const auto& g : avail) known += (known.empty() ? "" : ", ") + g;
      throw UsageError("unknown or inapplicable check group '" + item + "' (available: " + known + ")");
    }
    if (!contains(picked, item)) picked.push_back(item);
  }
  if (picked.empty()) throw UsageError("no check groups selected");
  // report order does not depend on the order given
  std::vector<std::string> ordered;
  for (const auto& g : avail)
    if (contains(picked, g)) ordered.push_back(g);
  return ordered;
}

CheckReport run_suite(const Problem& p, const std::vector<std::string>& selection, const Sampling& sampling,
                      ExecutionPolicy policy) {
  const auto points = sample_points(sampling, p.source.dim());
  const Tolerances& tol = p.tolerances;
  std::vector<std::string> structure, mapped;
  for (const auto& g : selection) (contains(structure_groups(), g) ? structure : mapped).push_back(g);
  if (!mapped.empty() && !p.submersion) throw UsageError("submersion checks need a target and a map");

  const PointKernel kernel = [&](std::size_t, const Point& x) {
    PointOutcome out;
    if (!structure.empty()) {
      std::optional<contact::StructurePoint> sp;
      try {
        sp = contact::evaluate_structure(p.source, x);
      } catch (const std::exception& e) {
        for (const auto& g : structure) out.issues.push_back({g, e.what(), false});
      }
      if (sp) {
        const auto& S = *sp;
        if (contains(structure, "almost_contact"))
          run_group(out, "almost_contact", [&](auto& ms) { contact::measure_almost_contact(S, tol, ms); });
        if (contains(structure, "metric_compatibility"))
          run_group(out, "metric_compatibility",
                    [&](auto& ms) { contact::measure_metric_compatibility(S, tol, ms); });
        if (contains(structure, "cosymplectic"))
          run_group(out, "cosymplectic", [&](auto& ms) { contact::measure_cosymplectic(S, tol, ms); });
        if (contains(structure, "connection"))
          run_group(out, "connection", [&](auto& ms) { contact::measure_connection(p.source, S, tol, ms); });
      }
    }
    if (!mapped.empty()) submersion::measure_submersion(*p.submersion, x, mapped, tol, out);
    return out;
  };
  CheckReport report = run_kernel(points, kernel, policy);
  submersion::add_submersion_equivalences(report, tol);
  const std::string conv = contact::to_string(p.source.convention());
  for (auto& c : report.checks)
    if (c.name.rfind("almost_contact.", 0) == 0) c.notes["phi_convention"] = conv;
  return report;
}

std::string report_text(const CheckReport& r, const RunInfo& info) {
  std::size_t width = 5;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  std::ostringstream out;
  out << "problem " << info.name << "  digest " << info.digest << "  seed " << info.seed << "  points "
      << info.points << "  phi " << info.phi_convention << "\n";
  out << std::string(width - 5, ' ') << "check" << "   residual  tolerance  verdict\n";
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    char line[64];
    std::snprintf(line, sizeof line, "  %9s  %9s  %s", format_residual(c.residual).c_str(),
                  format_residual(c.tolerance).c_str(), c.pass ? "PASS" : "FAIL");
    out << std::string(width - c.name.size(), ' ') << c.name << line;
    if (auto it = c.notes.find("value"); it != c.notes.end()) out << "  " << it->second;
    if (auto it = c.notes.find("verdict"); it != c.notes.end()) out << "  " << it->second;
    if (auto it = c.notes.find("first_error"); it != c.notes.end()) out << "  error: " << it->second;
    if (auto it = c.notes.find("excluded_points"); it != c.notes.end()) out << "  excluded " << it->second;
    out << "\n";
    failed += c.pass ? 0 : 1;
  }
  out << r.checks.size() - failed << " passed, " << failed << " failed\n";
  return out.str();
}

std::string report_json(const CheckReport& r, const RunInfo& info) {
  using nlohmann::json;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e;
    e["name"] = c.name;
    e["residual"] = std::isnan(c.residual) ? json(nullptr) : json(c.residual);
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    e["points"] = c.points;
    e["notes"] = c.notes;
    checks.push_back(std::move(e));
  }
  json doc = {{"version", 1},
              {"name", info.name},
              {"spec_digest", info.digest},
              {"seed", info.seed},
              {"points", info.points},
              {"phi_convention", info.phi_convention},
              {"equivalence_semantics", "co-occurrence of verdicts at tolerance, not a proof of implication"},
              {"all_pass", r.all_pass()},
              {"checks", std::move(checks)}};
  return doc.dump(2) + "\n";
}

int emit_report(const CheckReport& r, const RunInfo& info, ReportFormat format, std::ostream& out) {
  out << (format == ReportFormat::Json ? report_json(r, info) : report_text(r, info));
  return r.all_pass() ? 0 : 1;
}

}  // namespace subcheck::suite
