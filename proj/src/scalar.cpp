#include "xops/scalar.hpp"

#include <sstream>

namespace xops {

Scalar::Scalar(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 1) {  // sqrt(1) folds away
    a_ += b_;
    b_ = 0;
    d_ = 0;
  }
  if (d_ == 0 && b_ != 0) throw scalar_context_error("surd part with d=0");
  normalize();
}

Scalar Scalar::of_fraction(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return Scalar(r);
}

Scalar Scalar::sqrt_int(long d) {
  if (d < 0) return Scalar(Rational(0), Rational(1), d);
  mpz_class n(d), root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  if (root * root == n) return Scalar(Rational(root));
  return Scalar(Rational(0), Rational(1), d);
}

void Scalar::normalize() {
  if (b_ == 0) d_ = 0;
}

long Scalar::merge_ctx(const Scalar& l, const Scalar& r) {
  if (l.d_ == 0) return r.d_;
  if (r.d_ == 0 || l.d_ == r.d_) return l.d_;
  throw scalar_context_error("mixing sqrt(" + std::to_string(l.d_) + ") with sqrt(" +
                             std::to_string(r.d_) + ")");
}

const Rational& Scalar::as_rational() const {
  if (b_ != 0) throw scalar_context_error("scalar not rational: " + str());
  return a_;
}

Scalar Scalar::operator-() const { return Scalar(-a_, -b_, d_); }

Scalar& Scalar::operator+=(const Scalar& o) {
  d_ = merge_ctx(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  d_ = merge_ctx(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  long d = merge_ctx(*this, o);
  Rational a = a_ * o.a_ + Rational(d) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero scalar");
  if (b_ == 0) return Scalar(Rational(1) / a_);
  Rational nrm = a_ * a_ - Rational(d_) * b_ * b_;
  // nrm != 0 since sqrt(d) is irrational here
  return Scalar(a_ / nrm, -b_ / nrm, d_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::conjugate() const { return Scalar(a_, -b_, d_); }

bool operator==(const Scalar& l, const Scalar& r) {
  if (l.a_ != r.a_) return false;
  if (l.b_ == 0 && r.b_ == 0) return true;
  Scalar::merge_ctx(l, r);
  return l.b_ == r.b_;
}

int Scalar::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (d_ < 0) throw scalar_context_error("sign undefined in complex extension");
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // compare a^2 with d*b^2; sign decided by the larger magnitude term
  Rational lhs = a_ * a_, rhs = Rational(d_) * b_ * b_;
  if (lhs == rhs) return 0;
  return (lhs > rhs) ? sa : sb;
}

std::string Scalar::str() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_;
    return os.str();
  }
  if (a_ != 0) os << a_ << (sgn(b_) < 0 ? "-" : "+") << abs(b_);
  else os << b_;
  os << "*sqrt(" << d_ << ")";
  return os.str();
}

namespace {

std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  // mpq_class(str) aborts on garbage, so validate first: [-+]?digits(/digits)?
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  size_t digits = 0;
  while (i < s.size() && isdigit((unsigned char)s[i])) ++i, ++digits;
  if (digits == 0) return std::nullopt;
  if (i < s.size()) {
    if (s[i] != '/') return std::nullopt;
    ++i;
    size_t dd = 0;
    while (i < s.size() && isdigit((unsigned char)s[i])) ++i, ++dd;
    if (dd == 0 || i != s.size()) return std::nullopt;
  }
  Rational r(s[0] == '+' ? s.substr(1) : s);  // mpq rejects a leading '+'
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

}  // namespace

std::optional<Scalar> Scalar::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace((unsigned char)c)) s += c;
  auto star = s.find("*sqrt(");
  if (star == std::string::npos) {
    auto r = parse_rational(s);
    if (!r) return std::nullopt;
    return Scalar(*r);
  }
  if (s.empty() || s.back() != ')') return std::nullopt;
  std::string dstr = s.substr(star + 6, s.size() - star - 7);
  try {
    size_t used = 0;
    long d = std::stol(dstr, &used);
    if (used != dstr.size()) return std::nullopt;
    // split "A+B" / "A-B" at the sign of the surd coefficient
    std::string head = s.substr(0, star);
    size_t cut = std::string::npos;
    for (size_t i = 1; i < head.size(); ++i)
      if (head[i] == '+' || head[i] == '-') cut = i;
    Rational a(0), b(0);
    if (cut == std::string::npos) {
      auto bb = parse_rational(head);
      if (!bb) return std::nullopt;
      b = *bb;
    } else {
      auto aa = parse_rational(head.substr(0, cut));
      auto bb = parse_rational(head.substr(cut));  // keeps the sign
      if (!aa || !bb) return std::nullopt;
      a = *aa;
      b = *bb;
    }
    return Scalar(a, b, d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

namespace {

long squarefree_core(mpz_class n, mpz_class& square_out) {
  square_out = 1;
  mpz_class out(1);
  for (long p = 2; p * p <= n && p < 1000000; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p * p)) {
      n /= p * p;
      square_out *= p;
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      out *= p;
    }
  }
  out *= n;
  if (!out.fits_slong_p()) throw scalar_context_error("surd out of range");
  return out.get_si();
}

}  // namespace

Scalar scalar_sqrt(const Scalar& s) {
  const Rational& r = s.as_rational();
  if (sgn(r) < 0) throw std::domain_error("square root of negative scalar");
  if (r == 0) return Scalar(0);
  // sqrt(p/q) = sqrt(p q)/q
  mpz_class pq = r.get_num() * r.get_den();
  mpz_class sq;
  long d = squarefree_core(pq, sq);
  Rational coeff(sq, r.get_den());
  coeff.canonicalize();
  if (d == 1) return Scalar(coeff);
  return Scalar(Rational(0), coeff, d);
}

Scalar parse_scalar_or_throw(const std::string& text) {
  auto s = Scalar::parse(text);
  if (!s) throw std::invalid_argument("cannot parse exact scalar: '" + text + "'");
  return *s;
}

}  // namespace xops
