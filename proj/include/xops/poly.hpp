// Dense univariate polynomials over exact scalars.
// degree() of the zero polynomial is the sentinel kDegNegInf, kept distinct
// from 0 so that deg(p*q) = deg p + deg q reads correctly with the convention
// (-inf) + n = -inf.
#pragma once

#include <climits>
#include <initializer_list>
#include <string>
#include <vector>

#include "xops/scalar.hpp"

namespace xops {

inline constexpr int kDegNegInf = INT_MIN;

class Poly {
 public:
  Poly() = default;
  Poly(const Scalar& c) { if (!c.is_zero()) c_.push_back(c); }
  Poly(int c) : Poly(Scalar(c)) {}
  explicit Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

  static Poly x() { return Poly({Scalar(0), Scalar(1)}); }
  static Poly monomial(int deg, const Scalar& c = Scalar(1));

  int degree() const { return c_.empty() ? kDegNegInf : int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Scalar& coeff(int k) const;
  const Scalar& leading() const;
  const std::vector<Scalar>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly l, const Poly& r) { return l += r; }
  friend Poly operator-(Poly l, const Poly& r) { return l -= r; }
  friend Poly operator*(const Poly& l, const Poly& r);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator*(const Scalar& s) const;
  Poly operator/(const Scalar& s) const { return *this * s.inverse(); }
  friend bool operator==(const Poly& l, const Poly& r) { return l.c_ == r.c_; }
  friend bool operator!=(const Poly& l, const Poly& r) { return !(l == r); }

  // euclidean division; throws on zero divisor
  static std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den);
  // exact division; throws if the remainder is nonzero
  Poly divide_exact(const Poly& den) const;

  Poly derivative() const;
  Scalar eval(const Scalar& x) const;
  // p(s*x + t)
  Poly compose_affine(const Scalar& s, const Scalar& t) const;
  // p(inner(x))
  Poly compose(const Poly& inner) const;

  Poly monic() const;
  // primitive integer form: smallest positive rational multiple with coprime
  // integer coefficients (requires rational coefficients); returns {prim, c}
  // with *this == prim * c
  std::pair<Poly, Scalar> primitive_rational() const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Scalar> c_;  // c_[k] multiplies x^k; trailing entry nonzero
};

Poly gcd(const Poly& a, const Poly& b);  // monic gcd; gcd(0,0) = 0

}  // namespace xops
