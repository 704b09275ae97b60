#include "xops/ratfun.hpp"

namespace xops {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  Poly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divide_exact(g);
    den_ = den_.divide_exact(g);
  }
  Scalar lead = den_.leading();
  if (lead != Scalar(1)) {
    Scalar inv = lead.inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
  if (num_.is_zero()) den_ = Poly(Scalar(1));
}

Poly RatFun::as_poly() const {
  if (!is_polynomial()) throw std::domain_error("rational function is not a polynomial: " + str());
  return num_ * den_.leading().inverse();
}

Scalar RatFun::as_constant() const {
  Poly p = as_poly();
  if (!p.is_constant()) throw std::domain_error("rational function is not constant");
  return p.coeff(0);
}

RatFun operator+(const RatFun& l, const RatFun& r) {
  return RatFun(l.num_ * r.den_ + r.num_ * l.den_, l.den_ * r.den_);
}

RatFun operator-(const RatFun& l, const RatFun& r) {
  return RatFun(l.num_ * r.den_ - r.num_ * l.den_, l.den_ * r.den_);
}

RatFun operator*(const RatFun& l, const RatFun& r) {
  return RatFun(l.num_ * r.num_, l.den_ * r.den_);
}

RatFun operator/(const RatFun& l, const RatFun& r) {
  if (r.is_zero()) throw std::domain_error("division by zero rational function");
  return RatFun(l.num_ * r.den_, l.den_ * r.num_);
}

RatFun RatFun::derivative() const {
  return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Scalar RatFun::eval(const Scalar& x) const {
  Scalar d = den_.eval(x);
  if (d.is_zero()) throw std::domain_error("evaluation at a pole");
  return num_.eval(x) / d;
}

RatFun RatFun::compose_affine(const Scalar& s, const Scalar& t) const {
  return RatFun(num_.compose_affine(s, t), den_.compose_affine(s, t));
}

std::string RatFun::str(const std::string& var) const {
  if (is_polynomial()) return as_poly().str(var);
  return "(" + num_.str(var) + ") / (" + den_.str(var) + ")";
}

}  // namespace xops
