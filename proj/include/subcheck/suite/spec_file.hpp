#pragma once

// JSON problem files. Layout:
//   source   {dim, coords[], metric[][], phi[][], xi[], eta[]}
//   target   {dim, coords[], metric[][]}        optional, together with map
//   map      []                                 expression strings
//   sampling {box_min[], box_max[], points, seed}
//   tolerances {algebraic, differential, oracle}
// Expression entries are strings in the expression language; plain JSON
// numbers are accepted as constants.

#include "subcheck/suite/problem.hpp"

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace subcheck::suite {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// An expression string that does not parse; offset is within that string.
class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(std::string path, std::size_t offset, const std::string& message);
  const std::string& path() const { return path_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string path_;
  std::size_t offset_;
};

/// Parses and validates a document; defaults fill absent sampling and tolerances.
Problem parse_spec(const std::string& text, const std::string& name = "spec");
Problem load_spec(const std::filesystem::path& path);

/// Inverse of parse_spec up to expression printing. indent < 0 is compact.
std::string problem_to_json(const Problem& p, int indent = 2);

/// FNV-1a 64 of the compact canonical JSON, as 16 hex digits.
std::string spec_digest(const Problem& p);

}  // namespace subcheck::suite
