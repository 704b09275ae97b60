// Exact scalars: rationals with an optional fixed quadratic extension Q(sqrt(d)).
// A Scalar is a + b*sqrt(d) with a, b rational and d a squarefree integer fixed
// per computation context; d == 0 marks a plain rational (b must vanish).
// Mixing two scalars with different nonzero d is an error.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace xops {

using Rational = mpq_class;

struct scalar_context_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Scalar {
 public:
  Scalar() : a_(0), b_(0), d_(0) {}
  Scalar(int v) : a_(v), b_(0), d_(0) {}
  Scalar(long v) : a_(long(v)), b_(0), d_(0) {}
  Scalar(const Rational& v) : a_(v), b_(0), d_(0) { a_.canonicalize(); }
  Scalar(const Rational& a, const Rational& b, long d);

  static Scalar of_fraction(long num, long den);
  // sqrt(d) itself, or the exact rational root when d is a perfect square
  static Scalar sqrt_int(long d);

  const Rational& rat_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  long surd_d() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  // throws unless the value lies in Q
  const Rational& as_rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar l, const Scalar& r) { return l += r; }
  friend Scalar operator-(Scalar l, const Scalar& r) { return l -= r; }
  friend Scalar operator*(Scalar l, const Scalar& r) { return l *= r; }
  friend Scalar operator/(Scalar l, const Scalar& r) { return l /= r; }
  friend bool operator==(const Scalar& l, const Scalar& r);
  friend bool operator!=(const Scalar& l, const Scalar& r) { return !(l == r); }

  Scalar inverse() const;
  // galois conjugate a - b*sqrt(d)
  Scalar conjugate() const;
  // exact sign; requires a real embedding (d > 0 or rational)
  int sign() const;
  bool operator<(const Scalar& o) const { return (*this - o).sign() < 0; }
  bool operator>(const Scalar& o) const { return (*this - o).sign() > 0; }
  bool operator<=(const Scalar& o) const { return (*this - o).sign() <= 0; }
  bool operator>=(const Scalar& o) const { return (*this - o).sign() >= 0; }

  // "p/q" or "p/q+r/s*sqrt(d)"
  std::string str() const;
  static std::optional<Scalar> parse(const std::string& text);

 private:
  void normalize();
  static long merge_ctx(const Scalar& l, const Scalar& r);

  Rational a_, b_;
  long d_;
};

Scalar parse_scalar_or_throw(const std::string& text);

// exact square root of a nonnegative rational, in Q or Q(sqrt(d))
Scalar scalar_sqrt(const Scalar& s);

}  // namespace xops
