#pragma once

#include "subcheck/contact/structure.hpp"
#include "subcheck/submersion/submersion.hpp"
#include "subcheck/tolerances.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subcheck::suite {

struct Sampling {
  std::vector<double> box_min;  // empty means [-1, 1] in every coordinate
  std::vector<double> box_max;
  std::size_t points = 64;
  std::uint64_t seed = 42;
};

/// What a run is about: a structure, optionally a map out of it.
struct Problem {
  std::string name;
  contact::AlmostContactStructure source;
  std::optional<submersion::SubmersionSpec> submersion;
  Sampling sampling;
  Tolerances tolerances;

  Problem with_convention(contact::PhiConvention c) const;
};

}  // namespace subcheck::suite
