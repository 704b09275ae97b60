// Quasi-rational functions: R(x) * exp(g(x)) * prod_i base_i(x)^gamma_i with
// R rational, g polynomial (zero constant term), base_i nonconstant
// polynomials and gamma_i rational exponents. Closed under multiplication,
// division and differentiation; the logarithmic derivative is always a
// rational function. Integer exponents fold into the rational prefactor, so
// the symbolic power factors carry genuinely fractional exponents only.
//
// Bases keep their orientation: (1-x)^a and (x-1)^a are distinct factors,
// since relating them needs (-1)^a. Construct consistently per interval.
#pragma once

#include <vector>

#include "xops/ratfun.hpp"

namespace xops {

struct PowerFactor {
  Poly base;           // nonconstant
  Rational exponent;   // non-integer after normalization
};

class QuasiRational {
 public:
  QuasiRational() : pre_(Scalar(1)) {}
  QuasiRational(const RatFun& r) : pre_(r) {}
  QuasiRational(const Poly& p) : pre_(RatFun(p)) {}
  QuasiRational(const Scalar& c) : pre_(RatFun(c)) {}
  QuasiRational(RatFun pre, Poly exp_arg, std::vector<PowerFactor> powers);

  static QuasiRational exp_of(const Poly& g) {
    return QuasiRational(RatFun(Scalar(1)), g, {});
  }
  static QuasiRational power(const Poly& base, const Rational& exponent) {
    return QuasiRational(RatFun(Scalar(1)), Poly(), {{base, exponent}});
  }

  const RatFun& prefactor() const { return pre_; }
  const Poly& exp_arg() const { return expg_; }
  const std::vector<PowerFactor>& powers() const { return pows_; }

  bool is_zero() const { return pre_.is_zero(); }
  bool is_rational() const { return expg_.is_zero() && pows_.empty(); }
  RatFun as_ratfun() const;  // throws unless is_rational()

  friend QuasiRational operator*(const QuasiRational& l, const QuasiRational& r);
  friend QuasiRational operator/(const QuasiRational& l, const QuasiRational& r);
  QuasiRational operator*(const Scalar& c) const;
  QuasiRational& operator*=(const QuasiRational& o) { return *this = *this * o; }
  friend bool operator==(const QuasiRational& l, const QuasiRational& r);
  friend bool operator!=(const QuasiRational& l, const QuasiRational& r) { return !(l == r); }

  QuasiRational inverse() const;
  QuasiRational derivative() const;
  RatFun log_derivative() const;  // throws on zero

  // exact ratio l/r when it reduces to a scalar
  static std::optional<Scalar> ratio_if_constant(const QuasiRational& l,
                                                 const QuasiRational& r);

  std::string str(const std::string& var = "x") const;

 private:
  void normalize();
  RatFun pre_;
  Poly expg_;
  std::vector<PowerFactor> pows_;
};

// Wronskian of 1..3 quasi-rational functions, with the exp/power parts pulled
// out of the determinant of the remaining rational data.
QuasiRational wronskian(const std::vector<QuasiRational>& fs);

// W[f_1, .., f_k, y] as a differential operator acting on the last slot,
// expressed by its action coefficients: returns c such that
// W[f..., y] = (prod f_i) * sum_k c[k] y^(k). Sizes: k+1 coefficients.
std::vector<RatFun> wronskian_operator_coeffs(const std::vector<QuasiRational>& fs);

}  // namespace xops
