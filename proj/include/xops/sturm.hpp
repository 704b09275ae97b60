// Sturm sequences: exact counts of distinct real roots of a polynomial on
// closed intervals whose ends may be infinite. Requires scalars with a real
// embedding (plain rationals or Q(sqrt(d)) with d > 0).
#pragma once

#include <optional>

#include "xops/poly.hpp"

namespace xops {

// endpoint of an interval: finite scalar, or +/- infinity
struct Endpoint {
  std::optional<Scalar> value;  // nullopt = infinite
  int infinity_sign = 0;        // -1 / +1 when infinite
  static Endpoint finite(const Scalar& v) { return {v, 0}; }
  static Endpoint neg_inf() { return {std::nullopt, -1}; }
  static Endpoint pos_inf() { return {std::nullopt, +1}; }
  bool is_finite() const { return value.has_value(); }
};

// number of distinct real roots of p in the closed interval [lo, hi]
int count_roots_closed(const Poly& p, const Endpoint& lo, const Endpoint& hi);

}  // namespace xops
