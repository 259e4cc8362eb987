#pragma once

#include "subcheck/report.hpp"
#include "subcheck/suite/problem.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace subcheck::suite {

/// xoshiro256** with its state filled from splitmix64(seed).
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform();

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// points x dim draws, coordinate by coordinate within each point:
/// x_i = min_i + u (max_i - min_i).
std::vector<Point> sample_points(const Sampling& s, std::size_t dim);

}  // namespace subcheck::suite
