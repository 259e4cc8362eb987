#include "subcheck/suite/sampling.hpp"

#include <stdexcept>

namespace subcheck::suite {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  for (auto& w : s_) w = splitmix64(seed);
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<Point> sample_points(const Sampling& s, std::size_t dim) {
  const auto bound = [&](const std::vector<double>& b, double fallback, const char* what) {
    if (b.empty()) return std::vector<double>(dim, fallback);
    if (b.size() != dim)
      throw std::invalid_argument(std::string(what) + " has " + std::to_string(b.size()) + " entries, expected " +
                                  std::to_string(dim));
    return b;
  };
  const auto lo = bound(s.box_min, -1.0, "box_min");
  const auto hi = bound(s.box_max, 1.0, "box_max");
  Xoshiro256 rng(s.seed);
  std::vector<Point> out(s.points, Point(static_cast<Eigen::Index>(dim)));
  for (auto& p : out)
    for (std::size_t i = 0; i < dim; ++i) p(static_cast<Eigen::Index>(i)) = lo[i] + rng.uniform() * (hi[i] - lo[i]);
  return out;
}

}  // namespace subcheck::suite
