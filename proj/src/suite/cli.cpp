#include "subcheck/suite/cli.hpp"

#include "subcheck/suite/registry.hpp"
#include "subcheck/suite/runner.hpp"
#include "subcheck/suite/spec_file.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace subcheck::suite {

namespace {

struct VerifyArgs {
  std::string example;
  std::string spec;
  std::string checks = "all";
  std::optional<std::size_t> points;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_algebraic;
  std::optional<double> tol_differential;
  std::string report = "text";
  std::string out;
  std::string phi_convention = "cols";
};

Problem load_problem(const std::string& example, const std::string& spec) {
  if (!example.empty() && !spec.empty()) throw UsageError("give either --example or --spec, not both");
  if (!example.empty()) return registry_entry(example);
  if (!spec.empty()) return load_spec(spec);
  throw UsageError("one of --example or --spec is required");
}

void write_to(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("error writing " + path);
}

int verify(const VerifyArgs& a, std::ostream& out) {
  Problem p = load_problem(a.example, a.spec);
  p = p.with_convention(contact::phi_convention_from_string(a.phi_convention));
  if (a.points) {
    if (*a.points < 1) throw UsageError("--points must be at least 1");
    p.sampling.points = *a.points;
  }
  if (a.seed) p.sampling.seed = *a.seed;
  if (a.tol_algebraic) p.tolerances.algebraic = *a.tol_algebraic;
  if (a.tol_differential) p.tolerances.differential = *a.tol_differential;
  if (!(p.tolerances.algebraic > 0) || !(p.tolerances.differential > 0))
    throw UsageError("tolerances must be positive");

  const auto selection = parse_selection(p, a.checks);
  const CheckReport report = run_suite(p, selection, p.sampling, ExecutionPolicy::Parallel);
  const RunInfo info{p.name, spec_digest(p), p.sampling.seed, p.sampling.points,
                     contact::to_string(p.source.convention())};
  const ReportFormat fmt = a.report == "json" ? ReportFormat::Json : ReportFormat::Text;
  std::ostringstream text;
  const int code = emit_report(report, info, fmt, text);
  write_to(a.out, text.str(), out);
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for almost contact structures and anti-invariant Riemannian submersions",
               "subcheck"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "run check groups on a registry example or a spec file");
  auto* src = verify_cmd->add_option("--example", va.example, "registry example ex1..ex6");
  auto* spec = verify_cmd->add_option("--spec", va.spec, "JSON spec file");
  src->excludes(spec);
  verify_cmd->add_option("--checks", va.checks, "comma separated groups, or all")->capture_default_str();
  verify_cmd->add_option("--points", va.points, "number of sample points");
  verify_cmd->add_option("--seed", va.seed, "sampling seed");
  verify_cmd->add_option("--tol-algebraic", va.tol_algebraic, "algebraic identity tolerance");
  verify_cmd->add_option("--tol-differential", va.tol_differential, "second-derivative identity tolerance");
  verify_cmd->add_option("--report", va.report, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  verify_cmd->add_option("--out", va.out, "write the report here instead of stdout");
  verify_cmd->add_option("--phi-convention", va.phi_convention, "how phi matrices are read: cols or rows")
      ->check(CLI::IsMember({"cols", "rows"}))
      ->capture_default_str();

  std::string export_example, export_out;
  auto* export_cmd = app.add_subcommand("export", "write a registry example as a JSON spec file");
  export_cmd->add_option("--example", export_example, "registry example ex1..ex6")->required();
  export_cmd->add_option("--out", export_out, "output path (default stdout)");

  auto* list_cmd = app.add_subcommand("list", "list registry examples and their check groups");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    // subcommand help requests arrive as CallForHelp too; anything else is misuse
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*verify_cmd) return verify(va, out);
    if (*export_cmd) {
      write_to(export_out, problem_to_json(registry_entry(export_example)) + "\n", out);
      return kExitPass;
    }
    if (*list_cmd) {
      for (const auto& n : registry_names()) {
        const Problem p = registry_entry(n);
        out << n << "  " << registry_description(n) << "\n    groups:";
        for (const auto& g : available_groups(p)) out << " " << g;
        out << "\n";
      }
      return kExitPass;
    }
  } catch (const SpecParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownExample& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    // UsageError and spec validation failures
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace subcheck::suite
