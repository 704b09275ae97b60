#include "xops/diffop.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace xops {

void DiffOp::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const RatFun& DiffOp::coeff(int k) const {
  static const RatFun zero;
  if (k < 0 || k >= int(c_.size())) return zero;
  return c_[k];
}

DiffOp DiffOp::operator+(const DiffOp& o) const {
  std::vector<RatFun> v(std::max(c_.size(), o.c_.size()));
  for (size_t k = 0; k < v.size(); ++k) v[k] = coeff(int(k)) + o.coeff(int(k));
  return DiffOp(std::move(v));
}

DiffOp DiffOp::operator-(const DiffOp& o) const {
  std::vector<RatFun> v(std::max(c_.size(), o.c_.size()));
  for (size_t k = 0; k < v.size(); ++k) v[k] = coeff(int(k)) - o.coeff(int(k));
  return DiffOp(std::move(v));
}

DiffOp DiffOp::operator*(const Scalar& s) const {
  std::vector<RatFun> v = c_;
  for (auto& c : v) c = c * RatFun(s);
  return DiffOp(std::move(v));
}

DiffOp DiffOp::operator*(const RatFun& f) const {
  std::vector<RatFun> v = c_;
  for (auto& c : v) c = c * f;
  return DiffOp(std::move(v));
}

DiffOp DiffOp::plus_constant(const Scalar& lambda) const {
  std::vector<RatFun> v = c_;
  if (v.empty()) v.push_back(RatFun(lambda));
  else v[0] += RatFun(lambda);
  return DiffOp(std::move(v));
}

DiffOp DiffOp::change_variable_affine(const Scalar& s, const Scalar& t) const {
  std::vector<RatFun> v;
  RatFun spow(Scalar(1));
  RatFun sinv(s.inverse());
  for (size_t k = 0; k < c_.size(); ++k) {
    v.push_back(c_[k].compose_affine(s, t) * spow);
    spow = spow * sinv;
  }
  return DiffOp(std::move(v));
}

std::string DiffOp::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (int k = order(); k >= 0; --k) {
    if (coeff(k).is_zero()) continue;
    os << "[" << coeff(k).str(var) << "] y";
    for (int i = 0; i < k; ++i) os << "'";
    if (k > 0 || !coeff(0).is_zero()) os << (k > 0 ? " + " : "");
  }
  return os.str();
}

RatFun apply(const DiffOp& op, const Poly& y) {
  RatFun acc;
  Poly d = y;
  for (int k = 0; k <= op.order(); ++k) {
    if (!op.coeff(k).is_zero()) acc += op.coeff(k) * RatFun(d);
    d = d.derivative();
  }
  return acc;
}

RatFun apply(const DiffOp& op, const RatFun& y) {
  RatFun acc;
  RatFun d = y;
  for (int k = 0; k <= op.order(); ++k) {
    if (!op.coeff(k).is_zero()) acc += op.coeff(k) * d;
    d = d.derivative();
  }
  return acc;
}

RatFun apply_ratio(const DiffOp& op, const QuasiRational& f) {
  if (f.is_zero()) throw std::domain_error("apply_ratio on zero function");
  RatFun ld = f.log_derivative();
  RatFun jet(Scalar(1));  // f^(k) = f * jet_k
  RatFun acc;
  for (int k = 0; k <= op.order(); ++k) {
    if (!op.coeff(k).is_zero()) acc += op.coeff(k) * jet;
    jet = jet.derivative() + jet * ld;
  }
  return acc;
}

QuasiRational apply(const DiffOp& op, const QuasiRational& f) {
  if (f.is_zero()) return f;
  return f * QuasiRational(apply_ratio(op, f));
}

DiffOp compose(const DiffOp& s, const DiffOp& t) {
  if (s.is_zero() || t.is_zero()) return DiffOp::zero();
  std::map<int, RatFun> acc;
  // derivative powers: D^j (c(z) D^k) = sum_i binom(j,i) c^(j-i) D^(i+k)
  for (int j = 0; j <= s.order(); ++j) {
    if (s.coeff(j).is_zero()) continue;
    for (int k = 0; k <= t.order(); ++k) {
      if (t.coeff(k).is_zero()) continue;
      RatFun der = t.coeff(k);
      std::vector<RatFun> ders{der};
      for (int i = 0; i < j; ++i) {
        der = der.derivative();
        ders.push_back(der);
      }
      Scalar binom(1);
      for (int i = 0; i <= j; ++i) {
        if (i > 0) binom = binom * Scalar(j - i + 1) / Scalar(i);
        RatFun term = s.coeff(j) * ders[j - i] * RatFun(binom);
        auto it = acc.find(i + k);
        if (it == acc.end()) acc.emplace(i + k, term);
        else it->second += term;
      }
    }
  }
  int top = acc.empty() ? -1 : acc.rbegin()->first;
  std::vector<RatFun> v(top + 1);
  for (auto& [k, c] : acc) v[k] = c;
  return DiffOp(std::move(v));
}

namespace {

// Laurent coefficients of f at z = b for exponents lo..lo+count-1
std::vector<Scalar> laurent_series(const RatFun& f, const Scalar& b, int lo, int count) {
  Poly n = f.num().compose_affine(Scalar(1), b);
  Poly d = f.den().compose_affine(Scalar(1), b);
  int m = 0;
  while (d.coeff(m).is_zero()) ++m;  // d != 0
  // u = d / t^m, series of n/u, then shift by -m
  std::vector<Scalar> u;
  for (int k = m; k <= d.degree(); ++k) u.push_back(d.coeff(k));
  int need = lo + count + m;  // coefficients of n/u for t^0..t^(need-1)
  if (need <= 0) return std::vector<Scalar>(count, Scalar(0));
  std::vector<Scalar> a(need, Scalar(0));
  Scalar u0inv = u[0].inverse();
  for (int k = 0; k < need; ++k) {
    Scalar s = n.coeff(k);
    for (int j = 1; j <= k && j < int(u.size()); ++j) s -= u[j] * a[k - j];
    a[k] = s * u0inv;
  }
  std::vector<Scalar> out(count, Scalar(0));
  for (int i = 0; i < count; ++i) {
    int idx = lo + i + m;
    if (idx >= 0 && idx < need) out[i] = a[idx];
  }
  return out;
}

int pole_order_at(const RatFun& f, const Scalar& b) {
  if (f.is_zero()) return 0;
  Poly d = f.den();
  int ord = 0;
  while (d.eval(b).is_zero()) {
    d = d.divide_exact(Poly({-b, Scalar(1)}));
    ++ord;
  }
  return ord;
}

}  // namespace

std::vector<LaurentBlock> laurent_decompose(const DiffOp& op, const Scalar& b, int depth) {
  if (op.order() > 2) throw std::invalid_argument("laurent_decompose expects order <= 2");
  // block index i draws p from coeff2 at (z-b)^(i+2), q from coeff1 at
  // (z-b)^(i+1), r from coeff0 at (z-b)^i
  int lo = 0;
  lo = std::min(lo, -pole_order_at(op.coeff(0), b));
  lo = std::min(lo, -pole_order_at(op.coeff(1), b) - 1);
  lo = std::min(lo, -pole_order_at(op.coeff(2), b) - 2);
  int count = depth;
  std::vector<Scalar> r = laurent_series(op.coeff(0), b, lo, count);
  std::vector<Scalar> q = laurent_series(op.coeff(1), b, lo + 1, count);
  std::vector<Scalar> p = laurent_series(op.coeff(2), b, lo + 2, count);
  std::vector<LaurentBlock> blocks;
  for (int i = 0; i < count; ++i) blocks.push_back({lo + i, p[i], q[i], r[i]});
  while (!blocks.empty() && blocks.front().p.is_zero() && blocks.front().q.is_zero() &&
         blocks.front().r.is_zero())
    blocks.erase(blocks.begin());
  return blocks;
}

namespace {

long squarefree_part(mpz_class n) {
  if (n < 0) n = -n;
  mpz_class out(1);
  for (long p = 2; p * p <= n && p < 1000000; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p * p)) n /= p * p;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      out *= p;
    }
  }
  out *= n;
  if (!out.fits_slong_p()) throw std::domain_error("surd context out of range");
  return out.get_si();
}

}  // namespace


// one rational root of p, if any (quadratic formula for degree 2, bounded
// divisor scan above that)
static std::optional<Scalar> rational_root(const Poly& p_in) {
  Poly p = p_in.monic();
  if (p.degree() <= 0) return std::nullopt;
  if (p.degree() == 1) return -p.coeff(0);
  if (!p.coeff(0).is_rational() || !p.coeff(1).is_rational()) return std::nullopt;
  if (p.coeff(0).is_zero()) return Scalar(0);
  if (p.degree() == 2) {
    Scalar b = p.coeff(1), c = p.coeff(0);
    Scalar disc = b * b - Scalar(4) * c;
    if (!disc.is_rational() || disc.sign() < 0) return std::nullopt;
    Rational dr = disc.as_rational();
    mpz_class pq = dr.get_num() * dr.get_den();
    mpz_class sq;
    mpz_sqrt(sq.get_mpz_t(), pq.get_mpz_t());
    if (sq * sq != pq) return std::nullopt;
    return (-b + Scalar(Rational(sq, dr.get_den()))) / Scalar(2);
  }
  auto [prim, content] = p.primitive_rational();
  mpz_class a0 = abs(prim.coeff(0).as_rational().get_num());
  mpz_class an = abs(prim.leading().as_rational().get_num());
  for (mpz_class dn = 1; dn <= a0 && dn < 100000; ++dn) {
    if (!mpz_divisible_p(a0.get_mpz_t(), dn.get_mpz_t())) continue;
    for (mpz_class dd = 1; dd <= an; ++dd) {
      if (!mpz_divisible_p(an.get_mpz_t(), dd.get_mpz_t())) continue;
      for (int sg : {1, -1}) {
        Rational cand(sg * dn, dd);
        cand.canonicalize();
        Scalar c(cand);
        if (p.eval(c).is_zero()) return c;
      }
    }
  }
  return std::nullopt;
}

// roots of a squarefree polynomial, splitting quadratics into Q(sqrt(d))
// when the base field is plain Q; throws when a factor cannot be split
static std::vector<Scalar> all_roots(Poly p) {
  std::vector<Scalar> roots;
  p = p.monic();
  // strip linear factors found by the rational root test
  while (p.degree() > 2) {
    auto root = rational_root(p);
    if (!root) throw std::domain_error("cannot factor denominator: " + p.str());
    roots.push_back(*root);
    p = p.divide_exact(Poly({-*root, Scalar(1)}));
  }
  if (p.degree() == 1) roots.push_back(-p.coeff(0));
  if (p.degree() == 2) {
    Scalar b = p.coeff(1), c = p.coeff(0);
    Scalar disc = b * b - Scalar(4) * c;
    if (disc.is_zero()) {
      roots.push_back(-b / Scalar(2));
      roots.push_back(-b / Scalar(2));
    } else if (disc.is_rational()) {
      Rational dr = disc.as_rational();
      // sqrt(p/q) = sqrt(p*q)/q
      mpz_class pq = dr.get_num() * dr.get_den();
      long d0 = squarefree_part(pq);
      mpz_class rem = pq / d0;
      mpz_class sq;
      mpz_sqrt(sq.get_mpz_t(), rem.get_mpz_t());
      Scalar root_disc = Scalar(Rational(sq, dr.get_den())) * Scalar::sqrt_int(d0);
      roots.push_back((-b + root_disc) / Scalar(2));
      roots.push_back((-b - root_disc) / Scalar(2));
    } else {
      throw std::domain_error("quadratic over extension field does not split");
    }
  }
  return roots;
}

PoleProfile pole_profile(const DiffOp& op) {
  if (op.order() > 2) throw not_in_normal_form("operator order exceeds 2");
  const RatFun &p = op.coeff(2), &q = op.coeff(1), &r = op.coeff(0);
  if (!p.is_polynomial()) throw not_in_normal_form("y'' coefficient has poles");
  Poly pp = p.as_poly();
  if (pp.degree() > 2) throw not_in_normal_form("y'' coefficient degree exceeds 2");

  // q = polynomial of degree <= 1 plus simple poles
  auto [qpoly, qrem] = Poly::divmod(q.num(), q.den());
  if (qpoly.degree() > 1) throw not_in_normal_form("y' polynomial part degree exceeds 1");
  Poly qden = q.den();
  if (gcd(qden, qden.derivative()).degree() > 0)
    throw not_in_normal_form("y' coefficient has a multiple pole");
  auto [rpoly, rrem] = Poly::divmod(r.num(), r.den());
  if (rpoly.degree() > 0) throw not_in_normal_form("y coefficient polynomial part not constant");
  if (gcd(r.den(), r.den().derivative()).degree() > 0)
    throw not_in_normal_form("y coefficient has a multiple pole");

  std::vector<Scalar> qroots = qden.degree() > 0 ? all_roots(qden) : std::vector<Scalar>{};
  Poly rden = r.den();
  PoleProfile out;
  out.poly_p = pp;
  out.poly_q = qpoly;
  out.r0 = rpoly.coeff(0);
  for (const Scalar& b : qroots) {
    // residue of q at simple pole b: num(b) / den'(b)
    Scalar c = q.num().eval(b) / qden.derivative().eval(b);
    Scalar a(0);
    if (r.den().eval(b).is_zero()) {
      Scalar rres = r.num().eval(b) / r.den().derivative().eval(b);
      a = -rres / c;
    }
    out.poles.push_back({b, c, a});
  }
  // r may not have poles beyond q's
  Poly leftovers = rden;
  for (const Scalar& b : qroots) {
    Poly lin({-b, Scalar(1)});
    if (!leftovers.eval(b).is_zero()) continue;
    leftovers = leftovers.divide_exact(lin);
  }
  if (leftovers.degree() > 0)
    throw not_in_normal_form("y coefficient has a pole with no matching y' term");
  return out;
}

namespace {

int sign_on_interval(const Poly& f, const Interval& iv) {
  // sample a point strictly inside the interval
  Scalar x(0);
  if (iv.lo.is_finite() && iv.hi.is_finite())
    x = (*iv.lo.value + *iv.hi.value) / Scalar(2);
  else if (iv.lo.is_finite())
    x = *iv.lo.value + Scalar(1);
  else if (iv.hi.is_finite())
    x = *iv.hi.value - Scalar(1);
  Scalar v = f.eval(x);
  if (v.is_zero()) {
    // nudge; fine for the sign heuristics used on weights
    x += Scalar(Rational(1, 7));
    v = f.eval(x);
  }
  return v.sign();
}

}  // namespace

SLForm sl_form(const DiffOp& op, const Interval& interval) {
  if (op.order() != 2) throw std::invalid_argument("sl_form expects a second-order operator");
  RatFun qp = op.coeff(1) / op.coeff(2);
  // partial fractions of q/p over irreducible factors of the denominator
  auto [poly_part, rem] = Poly::divmod(qp.num(), qp.den());
  Poly den = qp.den();
  if (gcd(den, den.derivative()).degree() > 0)
    throw non_quasi_rational_weight("q/p has a multiple pole");

  // antiderivative of the polynomial part, constant term zero
  Poly gpoly;
  if (!poly_part.is_zero()) {
    std::vector<Scalar> g(poly_part.degree() + 2, Scalar(0));
    for (int k = 0; k <= poly_part.degree(); ++k) g[k + 1] = poly_part.coeff(k) / Scalar(k + 1);
    gpoly = Poly(std::move(g));
  }

  std::vector<PowerFactor> factors;
  if (den.degree() > 0) {
    // peel rational linear factors; keep a trailing irreducible quadratic
    std::vector<Poly> irred;
    Poly rest = den.monic();
    while (rest.degree() > 0) {
      if (rest.degree() == 1) {
        irred.push_back(rest.monic());
        rest = Poly(Scalar(1));
        break;
      }
      auto root = rational_root(rest);
      if (root) {
        irred.push_back(Poly({-*root, Scalar(1)}));
        rest = rest.divide_exact(Poly({-*root, Scalar(1)}));
        continue;
      }
      if (rest.degree() == 2) {
        irred.push_back(rest.monic());
        rest = Poly(Scalar(1));
        break;
      }
      throw non_quasi_rational_weight("cannot factor q/p denominator: " + rest.str());
    }
    for (const Poly& f : irred) {
      if (f.degree() == 1) {
        Scalar b = -f.coeff(0);
        // residue of rem/den at the simple root b
        Scalar gamma = rem.eval(b) / den.monic().derivative().eval(b);
        if (!gamma.is_rational())
          throw non_quasi_rational_weight("irrational exponent in weight");
        Poly base = f;
        if (sign_on_interval(base, interval) < 0) base = -base;
        factors.push_back({base, gamma.as_rational()});
      } else {
        // quadratic factor: numerator A = a1 z + a0 of the partial fraction
        // A/f solves A * (den/f) = rem (mod f)
        Poly fz = f;
        Poly cof = den.monic().divide_exact(fz);
        auto redmod = [&](const Poly& p2) { return Poly::divmod(p2, fz).second; };
        Poly c0 = redmod(cof);
        Poly c1 = redmod(cof * Poly::x());
        Scalar m00 = c0.coeff(0), m01 = c1.coeff(0);
        Scalar m10 = c0.coeff(1), m11 = c1.coeff(1);
        Poly rr = redmod(rem);
        Scalar det = m00 * m11 - m01 * m10;
        if (det.is_zero()) throw non_quasi_rational_weight("degenerate partial fraction");
        Scalar a0 = (rr.coeff(0) * m11 - rr.coeff(1) * m01) / det;
        Scalar a1 = (m00 * rr.coeff(1) - m10 * rr.coeff(0)) / det;
        // a1 z + a0 = gamma f' + delta with f' = 2z + f1
        Scalar gamma = a1 / Scalar(2);
        Scalar delta = a0 - gamma * fz.coeff(1);
        if (!delta.is_zero())
          throw non_quasi_rational_weight("arctangent-type term in weight integral");
        if (!gamma.is_rational())
          throw non_quasi_rational_weight("irrational exponent in weight");
        Poly base = fz;
        if (sign_on_interval(base, interval) < 0) base = -base;
        factors.push_back({base, gamma.as_rational()});
      }
    }
  }
  QuasiRational P(RatFun(Scalar(1)), gpoly, factors);
  QuasiRational W = P / QuasiRational(op.coeff(2));
  QuasiRational R = W * QuasiRational(-op.coeff(0));
  return SLForm{P, W, R, interval};
}

bool check_factorization(const DiffOp& t, const DiffOp& a, const DiffOp& b,
                         const Scalar& lambda0) {
  return (t - compose(b, a).plus_constant(lambda0)).is_zero();
}

bool check_intertwining(const DiffOp& a, const DiffOp& t, const DiffOp& that) {
  return (compose(that, a) - compose(a, t)).is_zero();
}

int distinct_pole_count(const DiffOp& op) {
  Poly den(Scalar(1));
  for (int k = 0; k <= op.order(); ++k) {
    Poly d = op.coeff(k).den();
    den = den * d.divide_exact(gcd(d, den));
  }
  if (den.degree() <= 0) return 0;
  Poly rad = den.divide_exact(gcd(den, den.derivative()));
  return rad.degree();
}

std::optional<Scalar> single_rational_pole(const DiffOp& op) {
  Poly den(Scalar(1));
  for (int k = 0; k <= op.order(); ++k) {
    Poly d = op.coeff(k).den();
    den = den * d.divide_exact(gcd(d, den));
  }
  if (den.degree() <= 0) return std::nullopt;
  Poly rad = den.divide_exact(gcd(den, den.derivative()));
  if (rad.degree() != 1) return std::nullopt;
  return -rad.monic().coeff(0);
}

}  // namespace xops
