#pragma once

#include "subcheck/suite/problem.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace subcheck::suite {

class UnknownExample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ex1 ... ex6.
const std::vector<std::string>& registry_names();
/// One-line description of a registry entry.
std::string registry_description(const std::string& name);
/// Built from expression strings in code; throws UnknownExample.
Problem registry_entry(const std::string& name);

/// The flat R^(2k+1) structure with phi d/dy_i = d/dx_i, phi d/dx_i = -d/dy_i,
/// xi = d/dz, eta = dz. Coordinates x1..xk, y1..yk, z.
contact::AlmostContactStructure flat_cosymplectic(std::size_t k);

/// Euclidean R^n with the given coordinate names (or t1..tn).
geometry::ChartManifold euclidean(std::size_t n, std::vector<std::string> coords = {});

}  // namespace subcheck::suite
