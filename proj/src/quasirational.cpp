#include "xops/quasirational.hpp"

#include <algorithm>
#include <sstream>

namespace xops {

namespace {

// c^e as an exact rational, when it is one (c > 0)
std::optional<Rational> rational_power(Rational c, const Rational& e) {
  c.canonicalize();
  if (c <= 0) return std::nullopt;
  if (c == 1) return Rational(1);
  const mpz_class &p = e.get_num(), &q = e.get_den();
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), c.get_num().get_mpz_t(), q.get_ui()) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), c.get_den().get_mpz_t(), q.get_ui()) == 0) return std::nullopt;
  Rational root(rn, rd);
  root.canonicalize();
  mpz_class pabs = abs(p);
  if (!pabs.fits_ulong_p()) return std::nullopt;
  Rational out(1);
  for (unsigned long i = 0; i < pabs.get_ui(); ++i) out *= root;
  if (p < 0) out = Rational(1) / out;
  out.canonicalize();
  return out;
}

int cmp_rational(const Rational& a, const Rational& b) { return cmp(a, b); }

int cmp_scalar_key(const Scalar& a, const Scalar& b) {
  if (int c = cmp_rational(a.rat_part(), b.rat_part())) return c;
  if (int c = cmp_rational(a.surd_part(), b.surd_part())) return c;
  if (a.surd_d() != b.surd_d()) return a.surd_d() < b.surd_d() ? -1 : 1;
  return 0;
}

int cmp_poly_key(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int k = 0; k <= std::max(a.degree(), 0); ++k)
    if (int c = cmp_scalar_key(a.coeff(k), b.coeff(k))) return c;
  return 0;
}

}  // namespace

QuasiRational::QuasiRational(RatFun pre, Poly exp_arg, std::vector<PowerFactor> powers)
    : pre_(std::move(pre)), expg_(std::move(exp_arg)), pows_(std::move(powers)) {
  normalize();
}

void QuasiRational::normalize() {
  if (pre_.is_zero()) {
    expg_ = Poly();
    pows_.clear();
    return;
  }
  if (!expg_.coeff(0).is_zero())
    throw std::domain_error("exp argument with nonzero constant term is not exactly representable");
  std::vector<PowerFactor> kept;
  for (auto& f : pows_) {
    if (f.exponent == 0) continue;
    if (f.base.is_constant()) {
      // constant^exponent must itself be rational to stay exact
      Rational c = f.base.coeff(0).as_rational();
      auto v = rational_power(c, f.exponent);
      if (!v) throw std::domain_error("irrational constant power");
      pre_ *= RatFun(Scalar(*v));
      continue;
    }
    // pull the integer part of the exponent into the prefactor
    Rational e = f.exponent;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), e.get_num().get_mpz_t(), e.get_den().get_mpz_t());
    Rational frac = e - Rational(fl);
    frac.canonicalize();
    if (fl != 0) {
      if (!fl.fits_slong_p()) throw std::domain_error("power factor exponent too large");
      long n = fl.get_si();
      Poly pw(Scalar(1));
      for (long i = 0; i < std::abs(n); ++i) pw *= f.base;
      pre_ = (n > 0) ? pre_ * RatFun(pw) : pre_ / RatFun(pw);
    }
    if (frac == 0) continue;
    // scale the base to primitive integer form when the extracted content
    // has an exact rational power
    Poly base = f.base;
    try {
      auto [prim, content] = base.primitive_rational();
      if (content != Scalar(1)) {
        auto cp = rational_power(content.as_rational(), frac);
        if (cp) {
          pre_ *= RatFun(Scalar(*cp));
          base = prim;
        }
      }
    } catch (const scalar_context_error&) {
      // extension coefficients: keep base as constructed
    }
    kept.push_back({base, frac});
  }
  std::sort(kept.begin(), kept.end(), [](const PowerFactor& a, const PowerFactor& b) {
    return cmp_poly_key(a.base, b.base) < 0;
  });
  pows_.clear();
  for (auto& f : kept) {
    if (!pows_.empty() && pows_.back().base == f.base) {
      pows_.back().exponent += f.exponent;
      pows_.back().exponent.canonicalize();
      if (pows_.back().exponent == 0) pows_.pop_back();
      // merged exponents can become integral; renormalize below
    } else {
      pows_.push_back(f);
    }
  }
  bool again = false;
  for (auto& f : pows_)
    if (f.exponent.get_den() == 1) again = true;
  if (again) {
    auto tmp = std::move(pows_);
    pows_.clear();
    auto pre = std::move(pre_);
    *this = QuasiRational(std::move(pre), std::move(expg_), std::move(tmp));
  }
}

RatFun QuasiRational::as_ratfun() const {
  if (!is_rational()) throw std::domain_error("quasi-rational value is not rational: " + str());
  return pre_;
}

QuasiRational operator*(const QuasiRational& l, const QuasiRational& r) {
  std::vector<PowerFactor> pows = l.pows_;
  pows.insert(pows.end(), r.pows_.begin(), r.pows_.end());
  return QuasiRational(l.pre_ * r.pre_, l.expg_ + r.expg_, std::move(pows));
}

QuasiRational QuasiRational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  std::vector<PowerFactor> pows = pows_;
  for (auto& f : pows) f.exponent = -f.exponent;
  return QuasiRational(RatFun(Scalar(1)) / pre_, -expg_, std::move(pows));
}

QuasiRational operator/(const QuasiRational& l, const QuasiRational& r) { return l * r.inverse(); }

QuasiRational QuasiRational::operator*(const Scalar& c) const {
  return QuasiRational(pre_ * RatFun(c), expg_, pows_);
}

bool operator==(const QuasiRational& l, const QuasiRational& r) {
  if (l.pre_ != r.pre_ || l.expg_ != r.expg_ || l.pows_.size() != r.pows_.size()) return false;
  for (size_t i = 0; i < l.pows_.size(); ++i)
    if (l.pows_[i].base != r.pows_[i].base || l.pows_[i].exponent != r.pows_[i].exponent)
      return false;
  return true;
}

RatFun QuasiRational::log_derivative() const {
  if (is_zero()) throw std::domain_error("log-derivative of zero");
  RatFun ld = pre_.derivative() / pre_ + RatFun(expg_.derivative());
  for (const auto& f : pows_)
    ld += RatFun(f.base.derivative() * Scalar(Rational(f.exponent)), f.base);
  return ld;
}

QuasiRational QuasiRational::derivative() const {
  if (is_zero()) return *this;
  RatFun sym(Poly(expg_.derivative()));
  for (const auto& f : pows_)
    sym += RatFun(f.base.derivative() * Scalar(Rational(f.exponent)), f.base);
  return QuasiRational(pre_.derivative() + pre_ * sym, expg_, pows_);
}

std::optional<Scalar> QuasiRational::ratio_if_constant(const QuasiRational& l,
                                                       const QuasiRational& r) {
  if (r.is_zero()) return std::nullopt;
  QuasiRational q = l / r;
  if (!q.is_rational() || !q.pre_.is_constant()) return std::nullopt;
  return q.pre_.as_constant();
}

std::string QuasiRational::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool wrap = (!expg_.is_zero() || !pows_.empty()) && !pre_.is_constant();
  if (wrap) os << "[" << pre_.str(var) << "]";
  else os << pre_.str(var);
  if (!expg_.is_zero()) os << " * exp(" << expg_.str(var) << ")";
  for (const auto& f : pows_)
    os << " * (" << f.base.str(var) << ")^(" << Rational(f.exponent) << ")";
  return os.str();
}

namespace {

// jet factors: f^(k) = f * D_k where D_0 = 1, D_{k+1} = D_k' + D_k * ld
std::vector<RatFun> jet_factors(const RatFun& ld, int upto) {
  std::vector<RatFun> d{RatFun(Scalar(1))};
  for (int k = 0; k < upto; ++k) d.push_back(d.back().derivative() + d.back() * ld);
  return d;
}

RatFun det_ratfun(const std::vector<std::vector<RatFun>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (n == 3)
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  throw std::invalid_argument("wronskian supports up to 3 functions");
}

}  // namespace

QuasiRational wronskian(const std::vector<QuasiRational>& fs) {
  if (fs.empty() || fs.size() > 3) throw std::invalid_argument("wronskian takes 1 to 3 functions");
  for (const auto& f : fs)
    if (f.is_zero()) return QuasiRational(Scalar(0));
  QuasiRational prod(Scalar(1));
  std::vector<std::vector<RatFun>> cols;
  for (const auto& f : fs) {
    prod *= f;
    cols.push_back(jet_factors(f.log_derivative(), int(fs.size()) - 1));
  }
  std::vector<std::vector<RatFun>> m(fs.size(), std::vector<RatFun>(fs.size()));
  for (size_t r = 0; r < fs.size(); ++r)
    for (size_t c = 0; c < fs.size(); ++c) m[r][c] = cols[c][r];
  return prod * QuasiRational(det_ratfun(m));
}

std::vector<RatFun> wronskian_operator_coeffs(const std::vector<QuasiRational>& fs) {
  size_t k = fs.size();
  if (k < 1 || k > 2) throw std::invalid_argument("wronskian operator supports 1 or 2 functions");
  std::vector<std::vector<RatFun>> cols;
  for (const auto& f : fs) cols.push_back(jet_factors(f.log_derivative(), int(k)));
  std::vector<RatFun> out(k + 1);
  for (size_t j = 0; j <= k; ++j) {
    // cofactor of the y^(j) entry in the last column
    std::vector<std::vector<RatFun>> minor;
    for (size_t r = 0; r <= k; ++r) {
      if (r == j) continue;
      std::vector<RatFun> row;
      for (size_t c = 0; c < k; ++c) row.push_back(cols[c][r]);
      minor.push_back(std::move(row));
    }
    RatFun d = det_ratfun(minor);
    out[j] = ((j + k) % 2 == 0) ? d : -d;
  }
  return out;
}

}  // namespace xops
