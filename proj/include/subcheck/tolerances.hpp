#pragma once

namespace subcheck {

struct Tolerances {
  double algebraic = 1e-9;     // identities exact in exact arithmetic
  double differential = 1e-8;  // identities that go through derivatives
  double oracle = 1e-6;        // comparisons against finite differences
};

}  // namespace subcheck
