// Exact dense linear algebra over Scalar. Row reduction uses fraction-free
// (Bareiss) elimination; nullspace bases come out in reduced column echelon
// order (free columns in increasing index order, pivot entries back-solved).
#pragma once

#include <optional>
#include <vector>

#include "xops/scalar.hpp"

namespace xops {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;

int rank(Mat m);
std::vector<Vec> nullspace(const Mat& m);

// solution set of A x = b as {particular, nullspace basis}; nullopt if inconsistent
struct AffineSolution {
  Vec particular;
  std::vector<Vec> homogeneous;
};
std::optional<AffineSolution> solve_affine(const Mat& a, const Vec& b);

// determinant of a square matrix (Bareiss)
Scalar determinant(Mat m);

// true if v lies in the span of basis
bool in_span(const std::vector<Vec>& basis, const Vec& v);

}  // namespace xops
