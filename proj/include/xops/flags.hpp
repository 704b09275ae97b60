// Polynomial flags of codimension <= 2: canonical constructors with recorded
// affine position, membership and invariance tests, and the spaces of
// second-order operators preserving each flag. Flags are represented by their
// defining differential constraints; degree-regular bases are generated on
// demand (constraints stay valid at special moduli where bases degenerate).
#pragma once

#include <string>

#include "xops/diffop.hpp"
#include "xops/linalg.hpp"

namespace xops {

enum class FlagVariant { Standard, E1, E11, E2 };

struct FlagSpec {
  FlagVariant variant = FlagVariant::Standard;
  std::vector<Scalar> moduli;  // E1: {a}; E11: {a0, a1}; E2: {a01, a03, a23}
  // position: x = scale * z + shift maps canonical coordinates (poles at 0
  // and 1, or at 0) to the working variable
  Scalar scale = Scalar(1), shift = Scalar(0);

  static FlagSpec standard() { return FlagSpec{}; }
  static FlagSpec e1(const Scalar& a, const Scalar& b = Scalar(0)) {
    return FlagSpec{FlagVariant::E1, {a}, Scalar(1), b};
  }
  static FlagSpec e11(const Scalar& a0, const Scalar& a1) {
    return FlagSpec{FlagVariant::E11, {a0, a1}, Scalar(1), Scalar(0)};
  }
  // general-position two-pole flag: p'(b0) = a0 p(b0), p'(b1) = a1 p(b1)
  static FlagSpec e11_at(const Scalar& a0, const Scalar& a1, const Scalar& b0,
                         const Scalar& b1);
  static FlagSpec e2(const Scalar& a01, const Scalar& a03, const Scalar& a23) {
    return FlagSpec{FlagVariant::E2, {a01, a03, a23}, Scalar(1), Scalar(0)};
  }

  bool is_canonical() const { return scale == Scalar(1) && shift == Scalar(0); }
};

std::vector<Poly> degree_regular_basis(const FlagSpec& flag, int count);
bool membership(const FlagSpec& flag, const Poly& y);
bool invariance_check(const DiffOp& t, const FlagSpec& flag, int depth);

struct DegreeSequence {
  // first two degrees; the remaining ones are n_k = k + 1 (both gaps of a
  // codimension-2 flag sit among the first four degrees)
  int n1 = 0, n2 = 1;
  int degree(int k) const { return k == 1 ? n1 : (k == 2 ? n2 : k + 1); }
  int codim(int k) const { return degree(k) + 1 - k; }
  int codimension() const { return codim(2) > codim(1) ? codim(2) : codim(1); }
};

enum class X2Class {
  E11_23, E11_13, E11_03, E11_12,
  E2a_13, E2a_03, E2a_12, E2a_02,
  E2b_23, E2c_23,
};
std::string to_string(X2Class c);

struct Classification {
  X2Class cls;
  DegreeSequence degrees;
};
// throws std::invalid_argument for flags outside the supported catalog
Classification classify_x2_flag(const FlagSpec& flag);

struct E2ConstraintResult {
  bool satisfied = false;
  bool via_2a = false, via_2b = false, via_2c = false;
  Scalar value;  // the product a03 (a01-a23) (6 a03 + a01 a23 (a01+a23))
};
E2ConstraintResult e2_constraint(const Scalar& a01, const Scalar& a03, const Scalar& a23);

struct D2Basis {
  std::vector<DiffOp> ops;  // identity first
  std::string diagnostic;
  int dimension() const { return int(ops.size()); }
};
D2Basis d2_space(const FlagSpec& flag);

// constraint matrix for operators preserving the two-pole flag, unknowns
// ordered [p_-2, p_-1, q_-1, p_0, q_0, c_1, c_0]
Mat e11_constraint_matrix(const Scalar& a0, const Scalar& a1);

// one-pole flag data: forced subleading coefficients and the linear system
// M (p0, q0, 1)^t = 0
struct OnePoleSystem {
  Scalar p_m1, q_m1;
  Mat m;  // 3 x 3
};
OnePoleSystem e2_one_pole_system(const Scalar& a01, const Scalar& a03, const Scalar& a23);

// operators with a pole at 0 preserving the one-pole flag, normalized to
// p_-2 = 1, c = -4 (empty when the constraint system is inconsistent),
// plus the pole-free degree-homogeneous solutions
struct OnePoleSolutions {
  std::optional<DiffOp> pole_op;
  std::vector<DiffOp> homogeneous;
};
OnePoleSolutions solve_one_pole(const Scalar& a01, const Scalar& a03, const Scalar& a23);

bool exceptionality_check(const DiffOp& t, const FlagSpec& flag);

// linear-system rows imposing flag invariance on an ansatz of candidate
// operators, generated from exact jets of images of basis elements
Mat invariance_rows(const FlagSpec& flag, const std::vector<DiffOp>& ansatz, int depth);

// mu T mu^{-1}
DiffOp gauge_conjugate(const DiffOp& t, const RatFun& mu);

// closed forms of the general flag-preserving operators (free constants
// instantiated by the caller)
DiffOp e11_23_operator(const Scalar& a0, const Scalar& a1, const Scalar& c, const Scalar& lambda);
DiffOp e11_13_operator(const Scalar& a0, const Scalar& c0, const Scalar& c1, const Scalar& lambda);
DiffOp e11_03_operator(const Scalar& q0, const Scalar& c0, const Scalar& c1, const Scalar& lambda);
DiffOp e11_12_operator(const Scalar& q0, const Scalar& c0, const Scalar& c1, const Scalar& lambda);
DiffOp e2a13_operator(const Scalar& a, const Scalar& c, const Scalar& lambda);
DiffOp e2a03_operator(const Scalar& c, const Scalar& q0, const Scalar& lambda);
DiffOp e2a12_operator(const Scalar& p0, const Scalar& c, const Scalar& lambda);
DiffOp e2a02_operator(const Scalar& p0, const Scalar& q0, const Scalar& c, const Scalar& lambda);
DiffOp e2b23_operator(const Scalar& a, const Scalar& c, const Scalar& lambda);
DiffOp e2c23_operator(const Scalar& a, const Scalar& c, const Scalar& lambda);

}  // namespace xops
