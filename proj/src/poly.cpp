#include "xops/poly.hpp"

#include <sstream>

namespace xops {

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::monomial(int deg, const Scalar& c) {
  if (deg < 0) throw std::invalid_argument("negative monomial degree");
  std::vector<Scalar> v(deg + 1, Scalar(0));
  v[deg] = c;
  return Poly(std::move(v));
}

const Scalar& Poly::coeff(int k) const {
  static const Scalar zero(0);
  if (k < 0 || k >= int(c_.size())) return zero;
  return c_[k];
}

const Scalar& Poly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& l, const Poly& r) {
  if (l.is_zero() || r.is_zero()) return Poly();
  std::vector<Scalar> v(l.c_.size() + r.c_.size() - 1, Scalar(0));
  for (size_t i = 0; i < l.c_.size(); ++i)
    for (size_t j = 0; j < r.c_.size(); ++j) v[i + j] += l.c_[i] * r.c_[j];
  return Poly(std::move(v));
}

Poly Poly::operator*(const Scalar& s) const {
  Poly r(*this);
  for (auto& c : r.c_) c *= s;
  r.trim();
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly rem = num, quot;
  Scalar lead_inv = den.leading().inverse();
  while (!rem.is_zero() && rem.degree() >= den.degree()) {
    int k = rem.degree() - den.degree();
    Scalar q = rem.leading() * lead_inv;
    quot += Poly::monomial(k, q);
    rem -= den * Poly::monomial(k, q);
  }
  return {quot, rem};
}

Poly Poly::divide_exact(const Poly& den) const {
  auto [q, r] = divmod(*this, den);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Scalar> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Scalar(int(i));
  return Poly(std::move(v));
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar acc(0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::compose_affine(const Scalar& s, const Scalar& t) const {
  Poly arg({t, s});
  Poly acc;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * arg + Poly(c_[i]);
  return acc;
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + Poly(c_[i]);
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

std::pair<Poly, Scalar> Poly::primitive_rational() const {
  if (is_zero()) return {Poly(), Scalar(1)};
  mpz_class den_lcm(1), num_gcd(0);
  for (const auto& c : c_) {
    const Rational& r = c.as_rational();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), r.get_den().get_mpz_t());
  }
  for (const auto& c : c_) {
    Rational r = c.as_rational() * Rational(den_lcm);
    r.canonicalize();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), r.get_num().get_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  Scalar c(content);
  return {*this * c.inverse(), c};
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (coeff(k).is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0 || coeff(k) != Scalar(1)) {
      os << "(" << coeff(k).str() << ")";
      if (k > 0) os << "*";
    }
    if (k > 0) os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    auto [q, r] = Poly::divmod(x, y);
    x = y;
    y = r.is_zero() ? r : r.monic();  // keep coefficients small
  }
  return x.is_zero() ? x : x.monic();
}

}  // namespace xops
