// Reduced ratio of polynomials: gcd(num, den) = 1, den monic and nonzero.
#pragma once

#include "xops/poly.hpp"

namespace xops {

class RatFun {
 public:
  RatFun() : num_(), den_(Scalar(1)) {}
  RatFun(const Poly& num) : num_(num), den_(Scalar(1)) {}
  RatFun(const Scalar& c) : num_(c), den_(Scalar(1)) {}
  RatFun(int c) : num_(Scalar(c)), den_(Scalar(1)) {}
  RatFun(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.is_constant() && is_polynomial(); }
  // throws unless polynomial / constant
  Poly as_poly() const;
  Scalar as_constant() const;

  RatFun operator-() const { return RatFun(-num_, den_); }
  friend RatFun operator+(const RatFun& l, const RatFun& r);
  friend RatFun operator-(const RatFun& l, const RatFun& r);
  friend RatFun operator*(const RatFun& l, const RatFun& r);
  friend RatFun operator/(const RatFun& l, const RatFun& r);
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }
  friend bool operator==(const RatFun& l, const RatFun& r) {
    return l.num_ == r.num_ && l.den_ == r.den_;
  }
  friend bool operator!=(const RatFun& l, const RatFun& r) { return !(l == r); }

  RatFun derivative() const;
  Scalar eval(const Scalar& x) const;  // throws on pole
  bool has_pole_at(const Scalar& x) const { return den_.eval(x).is_zero(); }
  RatFun compose_affine(const Scalar& s, const Scalar& t) const;

  std::string str(const std::string& var = "x") const;

 private:
  Poly num_, den_;
};

}  // namespace xops
