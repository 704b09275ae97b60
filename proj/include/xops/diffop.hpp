// Linear differential operators with rational coefficients,
// T[y] = sum_k c_k(z) y^(k). The classification machinery works with orders
// 0..2; compose() is generic and the order adds.
#pragma once

#include <optional>
#include <vector>

#include "xops/quasirational.hpp"
#include "xops/sturm.hpp"

namespace xops {

struct not_in_normal_form : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct non_quasi_rational_weight : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DiffOp {
 public:
  DiffOp() = default;
  explicit DiffOp(std::vector<RatFun> coeffs) : c_(std::move(coeffs)) { trim(); }

  static DiffOp identity() { return DiffOp({RatFun(Scalar(1))}); }
  static DiffOp zero() { return DiffOp(); }
  // b * (y' - w y)
  static DiffOp first_order(const RatFun& b, const RatFun& w) {
    return DiffOp({-(b * w), b});
  }
  static DiffOp second_order(const RatFun& p, const RatFun& q, const RatFun& r) {
    return DiffOp({r, q, p});
  }

  int order() const { return c_.empty() ? -1 : int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const RatFun& coeff(int k) const;
  const std::vector<RatFun>& coeffs() const { return c_; }

  DiffOp operator+(const DiffOp& o) const;
  DiffOp operator-(const DiffOp& o) const;
  DiffOp operator*(const Scalar& s) const;
  DiffOp operator*(const RatFun& f) const;  // multiply coefficients (gauge-style scaling)
  friend bool operator==(const DiffOp& l, const DiffOp& r) { return l.c_ == r.c_; }
  friend bool operator!=(const DiffOp& l, const DiffOp& r) { return !(l == r); }

  // T + lambda * Id
  DiffOp plus_constant(const Scalar& lambda) const;

  // z = s*x + t pullback: returns the operator in the x variable
  DiffOp change_variable_affine(const Scalar& s, const Scalar& t) const;

  std::string str(const std::string& var = "z") const;

 private:
  void trim();
  std::vector<RatFun> c_;
};

RatFun apply(const DiffOp& op, const Poly& y);
RatFun apply(const DiffOp& op, const RatFun& y);
// T[f] = f * (ratio); requires the operator coefficients to stay rational
QuasiRational apply(const DiffOp& op, const QuasiRational& f);
// the rational function T[f]/f
RatFun apply_ratio(const DiffOp& op, const QuasiRational& f);

DiffOp compose(const DiffOp& s, const DiffOp& t);

// degree-homogeneous Laurent blocks at z = b:
// T_i[y] = (z-b)^i (p_i (z-b)^2 y'' + q_i (z-b) y' + r_i y)
struct LaurentBlock {
  int shift;
  Scalar p, q, r;
};
std::vector<LaurentBlock> laurent_decompose(const DiffOp& op, const Scalar& b, int depth);

// simple-pole normal form: T = polynomial part + sum_i c_i (y' - a_i y)/(z - b_i)
struct PolePoint {
  Scalar b, c, a;
};
struct PoleProfile {
  std::vector<PolePoint> poles;
  Poly poly_p, poly_q;  // polynomial parts of the y'' and y' coefficients
  Scalar r0;            // constant part of the y coefficient
};
PoleProfile pole_profile(const DiffOp& op);  // throws not_in_normal_form

struct Interval {
  Endpoint lo, hi;
  static Interval real_line() { return {Endpoint::neg_inf(), Endpoint::pos_inf()}; }
  static Interval positive_halfline() {
    return {Endpoint::finite(Scalar(0)), Endpoint::pos_inf()};
  }
  static Interval finite(const Scalar& a, const Scalar& b) {
    return {Endpoint::finite(a), Endpoint::finite(b)};
  }
};

struct SLForm {
  QuasiRational P, W, R;
  Interval interval;
};
// Sturm-Liouville data of a second-order operator; throws when q/p does not
// integrate to polynomial + logarithmic terms
SLForm sl_form(const DiffOp& op, const Interval& interval);

bool check_factorization(const DiffOp& t, const DiffOp& a, const DiffOp& b,
                         const Scalar& lambda0);
bool check_intertwining(const DiffOp& a, const DiffOp& t, const DiffOp& that);

// distinct complex poles of the operator = degree of the squarefree part of
// the combined coefficient denominator
int distinct_pole_count(const DiffOp& op);
// the unique pole when distinct_pole_count() == 1 and it is rational
std::optional<Scalar> single_rational_pole(const DiffOp& op);

}  // namespace xops
