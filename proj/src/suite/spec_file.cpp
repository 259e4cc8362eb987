#include "subcheck/suite/spec_file.hpp"

#include "subcheck/dsl/expr.hpp"
#include "subcheck/dsl/parser.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace subcheck::suite {

using nlohmann::json;

SchemaError::SchemaError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

SpecParseError::SpecParseError(std::string path, std::size_t offset, const std::string& message)
    : std::runtime_error(path + ": offset " + std::to_string(offset) + ": " + message),
      path_(std::move(path)),
      offset_(offset) {}

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& member(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(at(path, key), "missing");
  return *it;
}

const json* optional_member(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void require_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw SchemaError(path.empty() ? "$" : path, "expected an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw SchemaError(at(path, k), "unknown key");
}

const json& array_of(const json& j, const std::string& path, std::size_t expected) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  if (j.size() != expected)
    throw SchemaError(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
  return j;
}

dsl::Expr expression(const json& j, const std::string& path, const std::vector<std::string>& coords) {
  dsl::Expr e;
  if (j.is_number()) {
    e = dsl::make_number(j.get<double>());
  } else if (j.is_string()) {
    try {
      e = dsl::parse(j.get<std::string>());
    } catch (const dsl::ParseError& pe) {
      throw SpecParseError(path, pe.offset(), pe.message());
    }
  } else {
    throw SchemaError(path, "expected an expression string");
  }
  for (const auto& v : dsl::free_vars(e))
    if (std::find(coords.begin(), coords.end(), v) == coords.end())
      throw SchemaError(path, "unknown coordinate '" + v + "'");
  return e;
}

std::vector<dsl::Expr> expr_list(const json& j, const std::string& path, std::size_t n,
                                 const std::vector<std::string>& coords) {
  array_of(j, path, n);
  std::vector<dsl::Expr> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(expression(j[i], at(path, i), coords));
  return out;
}

geometry::ExprGrid expr_grid(const json& j, const std::string& path, std::size_t n,
                             const std::vector<std::string>& coords) {
  array_of(j, path, n);
  geometry::ExprGrid out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n)
      throw SchemaError(at(path, i), "expected a row of " + std::to_string(n) + " entries");
    out.push_back(expr_list(j[i], at(path, i), n, coords));
  }
  return out;
}

std::vector<std::string> coordinates(const json& obj, const std::string& path) {
  const json& c = member(obj, path, "coords");
  const std::string cp = at(path, "coords");
  if (!c.is_array() || c.empty()) throw SchemaError(cp, "expected a nonempty array of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].is_string()) throw SchemaError(at(cp, i), "expected a string");
    out.push_back(c[i].get<std::string>());
  }
  if (const json* d = optional_member(obj, "dim")) {
    if (!d->is_number_unsigned() || d->get<std::size_t>() != out.size())
      throw SchemaError(at(path, "dim"), "does not match the number of coordinates (" + std::to_string(out.size()) + ")");
  }
  return out;
}

geometry::ChartManifold chart(const json& obj, const std::string& path) {
  const auto coords = coordinates(obj, path);
  const std::string mp = at(path, "metric");
  const json& metric = member(obj, path, "metric");
  // shape problems are reported at the metric itself
  if (!metric.is_array() || metric.size() != coords.size())
    throw SchemaError(mp, "expected a " + std::to_string(coords.size()) + "x" + std::to_string(coords.size()) +
                              " array");
  try {
    return {coords, expr_grid(metric, mp, coords.size(), coords)};
  } catch (const geometry::ValidationError& e) {
    throw SchemaError(path, e.what());
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& path, std::size_t n) {
  array_of(j, path, n);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(number(j[i], at(path, i)));
  return out;
}

json grid_json(const geometry::ExprGrid& g) {
  json out = json::array();
  for (const auto& row : g) {
    json r = json::array();
    for (const auto& e : row) r.push_back(dsl::print(e));
    out.push_back(std::move(r));
  }
  return out;
}

json list_json(const std::vector<dsl::Expr>& l) {
  json out = json::array();
  for (const auto& e : l) out.push_back(dsl::print(e));
  return out;
}

json chart_json(const geometry::ChartManifold& M) {
  return {{"dim", M.dim()}, {"coords", M.coords()}, {"metric", grid_json(M.metric())}};
}

}  // namespace

Problem parse_spec(const std::string& text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  require_keys(doc, "", {"source", "target", "map", "sampling", "tolerances", "name"});

  Problem p;
  p.name = name;
  if (const json* n = optional_member(doc, "name")) {
    if (!n->is_string()) throw SchemaError("name", "expected a string");
    p.name = n->get<std::string>();
  }

  const json& src = member(doc, "", "source");
  require_keys(src, "source", {"dim", "coords", "metric", "phi", "xi", "eta"});
  auto base = chart(src, "source");
  const std::vector<std::string> coords = base.coords();
  const std::size_t m = coords.size();
  if (m % 2 == 0) throw SchemaError("source.dim", "an almost contact structure needs odd dimension");
  auto phi = expr_grid(member(src, "source", "phi"), "source.phi", m, coords);
  auto xi = expr_list(member(src, "source", "xi"), "source.xi", m, coords);
  auto eta = expr_list(member(src, "source", "eta"), "source.eta", m, coords);
  p.source = contact::AlmostContactStructure(std::move(base), std::move(phi), {std::move(xi)}, {std::move(eta)});

  const json* tgt = optional_member(doc, "target");
  const json* map = optional_member(doc, "map");
  if ((tgt == nullptr) != (map == nullptr))
    throw SchemaError(tgt ? "map" : "target", "target and map must be given together");
  if (tgt) {
    require_keys(*tgt, "target", {"dim", "coords", "metric"});
    auto target = chart(*tgt, "target");
    if (target.dim() > m) throw SchemaError("target.dim", "exceeds the source dimension");
    auto components = expr_list(*map, "map", target.dim(), coords);
    p.submersion = submersion::SubmersionSpec(p.source, std::move(target), std::move(components));
  }

  if (const json* s = optional_member(doc, "sampling")) {
    require_keys(*s, "sampling", {"box_min", "box_max", "points", "seed"});
    if (const json* b = optional_member(*s, "box_min")) p.sampling.box_min = numbers(*b, "sampling.box_min", m);
    if (const json* b = optional_member(*s, "box_max")) p.sampling.box_max = numbers(*b, "sampling.box_max", m);
    if (p.sampling.box_min.empty() != p.sampling.box_max.empty())
      throw SchemaError("sampling", "box_min and box_max must be given together");
    for (std::size_t i = 0; i < p.sampling.box_min.size(); ++i)
      if (!(p.sampling.box_min[i] <= p.sampling.box_max[i]))
        throw SchemaError(at("sampling.box_min", i), "exceeds box_max");
    if (const json* n = optional_member(*s, "points")) {
      if (!n->is_number_integer() || n->get<long long>() < 1) throw SchemaError("sampling.points", "expected an integer >= 1");
      p.sampling.points = n->get<std::size_t>();
    }
    if (const json* n = optional_member(*s, "seed")) {
      if (!n->is_number_unsigned()) throw SchemaError("sampling.seed", "expected a nonnegative integer");
      p.sampling.seed = n->get<std::uint64_t>();
    }
  }
  if (const json* t = optional_member(doc, "tolerances")) {
    require_keys(*t, "tolerances", {"algebraic", "differential", "oracle"});
    const auto tol = [&](const char* key, double& slot) {
      if (const json* v = optional_member(*t, key)) {
        slot = number(*v, at("tolerances", key));
        if (!(slot > 0)) throw SchemaError(at("tolerances", key), "must be positive");
      }
    };
    tol("algebraic", p.tolerances.algebraic);
    tol("differential", p.tolerances.differential);
    tol("oracle", p.tolerances.oracle);
  }
  return p;
}

Problem load_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return parse_spec(buf.str(), path.stem().string());
}

std::string problem_to_json(const Problem& p, int indent) {
  const auto& S = p.source;
  json doc;
  doc["name"] = p.name;
  doc["source"] = chart_json(S.base());
  doc["source"]["phi"] = grid_json(S.phi());
  doc["source"]["xi"] = list_json(S.xi().components);
  doc["source"]["eta"] = list_json(S.eta().components);
  if (p.submersion) {
    doc["target"] = chart_json(p.submersion->target());
    doc["map"] = list_json(p.submersion->map());
  }
  json sampling = {{"points", p.sampling.points}, {"seed", p.sampling.seed}};
  const std::size_t m = S.dim();
  sampling["box_min"] = p.sampling.box_min.empty() ? std::vector<double>(m, -1.0) : p.sampling.box_min;
  sampling["box_max"] = p.sampling.box_max.empty() ? std::vector<double>(m, 1.0) : p.sampling.box_max;
  doc["sampling"] = std::move(sampling);
  doc["tolerances"] = {{"algebraic", p.tolerances.algebraic},
                       {"differential", p.tolerances.differential},
                       {"oracle", p.tolerances.oracle}};
  return doc.dump(indent);
}

std::string spec_digest(const Problem& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : problem_to_json(p, -1)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace subcheck::suite
