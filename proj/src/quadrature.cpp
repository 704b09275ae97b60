#include "xops/quadrature.hpp"

#include <algorithm>

namespace xops {

PrecisionGuard::PrecisionGuard(unsigned digits10) : previous(Real::default_precision()) {
  Real::default_precision(digits10);
}
PrecisionGuard::~PrecisionGuard() { Real::default_precision(previous); }

Real scalar_to_real(const Scalar& s) {
  Real a;
  mpfr_set_q(a.backend().data(), s.rat_part().get_mpq_t(), MPFR_RNDN);
  if (s.surd_part() == 0) return a;
  Real b;
  mpfr_set_q(b.backend().data(), s.surd_part().get_mpq_t(), MPFR_RNDN);
  if (s.surd_d() < 0) throw std::domain_error("complex scalar has no real value");
  return a + b * sqrt(Real(s.surd_d()));
}

Real poly_eval_real(const Poly& p, const Real& x) {
  Real acc(0);
  for (int k = p.degree(); k >= 0; --k) acc = acc * x + scalar_to_real(p.coeff(k));
  return acc;
}

Real ratfun_eval_real(const RatFun& f, const Real& x) {
  return poly_eval_real(f.num(), x) / poly_eval_real(f.den(), x);
}

Real quasirational_eval_real(const QuasiRational& f, const Real& x) {
  Real acc = ratfun_eval_real(f.prefactor(), x);
  if (!f.exp_arg().is_zero()) acc *= exp(poly_eval_real(f.exp_arg(), x));
  for (const auto& pf : f.powers()) {
    Real base = poly_eval_real(pf.base, x);
    Real e;
    mpfr_set_q(e.backend().data(), pf.exponent.get_mpq_t(), MPFR_RNDN);
    if (base < 0) throw std::domain_error("negative base under fractional power");
    if (base == 0) {
      if (pf.exponent > 0) return Real(0);
      throw std::domain_error("zero base under negative fractional power");
    }
    acc *= pow(base, e);
  }
  return acc;
}

namespace {

// multiplicity of b as a root of p
int root_order(const Poly& p, const Scalar& b) {
  Poly w = p;
  int ord = 0;
  while (!w.is_zero() && w.eval(b).is_zero()) {
    w = w.divide_exact(Poly({-b, Scalar(1)}));
    ++ord;
  }
  return ord;
}

// sign of the leading behavior of g at the infinite end e (g nonconstant)
int exp_arg_limit_sign(const Poly& g, const Endpoint& e) {
  int lead = g.leading().sign();
  if (e.infinity_sign > 0) return lead;
  return (g.degree() % 2 == 0) ? lead : -lead;
}

}  // namespace

EndpointLimit endpoint_limit(const QuasiRational& f, const Endpoint& e) {
  if (f.is_zero()) return EndpointLimit::Zero;
  if (e.is_finite()) {
    const Scalar& b = *e.value;
    Rational ord(root_order(f.prefactor().num(), b) - root_order(f.prefactor().den(), b));
    for (const auto& pf : f.powers()) ord += Rational(root_order(pf.base, b)) * pf.exponent;
    if (ord > 0) return EndpointLimit::Zero;
    if (ord == 0) return EndpointLimit::Finite;
    return EndpointLimit::Divergent;
  }
  if (!f.exp_arg().is_zero() && f.exp_arg().degree() >= 1) {
    int s = exp_arg_limit_sign(f.exp_arg(), e);
    return s < 0 ? EndpointLimit::Zero : EndpointLimit::Divergent;
  }
  Rational deg(f.prefactor().num().degree() - f.prefactor().den().degree());
  for (const auto& pf : f.powers()) deg += Rational(pf.base.degree()) * pf.exponent;
  if (deg < 0) return EndpointLimit::Zero;
  if (deg == 0) return EndpointLimit::Finite;
  return EndpointLimit::Divergent;
}

bool boundary_vanishing(const SLForm& sl) {
  // p W = P identically
  return endpoint_limit(sl.P, sl.interval.lo) == EndpointLimit::Zero &&
         endpoint_limit(sl.P, sl.interval.hi) == EndpointLimit::Zero;
}

namespace {

bool integrable_at(const QuasiRational& f, const Endpoint& e) {
  if (f.is_zero()) return true;
  if (e.is_finite()) {
    const Scalar& b = *e.value;
    Rational ord(root_order(f.prefactor().num(), b) - root_order(f.prefactor().den(), b));
    for (const auto& pf : f.powers()) ord += Rational(root_order(pf.base, b)) * pf.exponent;
    return ord > -1;
  }
  if (!f.exp_arg().is_zero() && f.exp_arg().degree() >= 1)
    return exp_arg_limit_sign(f.exp_arg(), e) < 0;
  Rational deg(f.prefactor().num().degree() - f.prefactor().den().degree());
  for (const auto& pf : f.powers()) deg += Rational(pf.base.degree()) * pf.exponent;
  return deg < -1;
}

}  // namespace

bool moments_finite(const QuasiRational& weight, const Interval& iv) {
  // finite endpoints: local exponent > -1 covers every moment; infinite
  // endpoints need exponential decay
  for (const Endpoint* e : {&iv.lo, &iv.hi}) {
    if (e->is_finite()) {
      if (!integrable_at(weight, *e)) return false;
    } else {
      if (weight.exp_arg().is_zero() || weight.exp_arg().degree() < 1) return false;
      if (exp_arg_limit_sign(weight.exp_arg(), *e) >= 0) return false;
    }
  }
  return true;
}

// ---- double-exponential quadrature cores ------------------------------------

namespace {

Real pi_real() {
  Real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

struct LevelSummer {
  // trapezoid sums of g over t = k h for the doubly exponential transforms;
  // g returns the full weighted term and reports saturation via false
  std::function<bool(const Real&, Real&)> term;

  // refine h = h0 / 2^level until the level difference passes tol; `cut`
  // truncates the tails and must sit well below tol so truncation noise
  // cannot mask convergence
  void run(Real h, unsigned max_levels, const Real& tol, const Real& cut, Real& value,
           Real& err, bool& converged) const {
    Real prev = 0;
    err = Real("inf");
    converged = false;
    for (unsigned level = 0; level <= max_levels; ++level) {
      Real sum = 0;
      Real scale = 0;
      for (int dir : {+1, -1}) {
        int consecutive_small = 0;
        for (long k = (dir > 0 ? 0 : 1); k < 200000; ++k) {
          Real t = h * Real(long(dir) * k);
          Real term_val;
          if (!term(t, term_val)) break;
          sum += term_val;
          scale = fmax(scale, abs(term_val));
          if (abs(term_val) <= cut * (Real(1) + scale)) {
            if (++consecutive_small >= 3) break;
          } else {
            consecutive_small = 0;
          }
        }
      }
      Real total = sum * h;
      if (level > 0) {
        err = abs(total - prev);
        if (err <= tol * fmax(Real(1), abs(total))) {
          value = total;
          converged = true;
          return;
        }
      }
      prev = total;
      h /= 2;
    }
    value = prev;
  }
};

struct CoreResult {
  Real value{0}, error{0};
  bool converged = false;
};

// finite interval (a, b), integrand regular up to the ends
CoreResult tanh_sinh_core(const std::function<Real(const Real&)>& f, const Real& a,
                          const Real& b, const Real& tol, const Real& cut,
                          unsigned max_levels) {
  Real half_pi = pi_real() / 2;
  Real mid = (a + b) / 2, rad = (b - a) / 2;
  LevelSummer s;
  s.term = [&](const Real& t, Real& out) -> bool {
    Real u = half_pi * sinh(t);
    Real ch = cosh(u);
    Real x = mid + rad * tanh(u);
    if (x <= a || x >= b) return false;  // node saturated
    Real w = half_pi * cosh(t) / (ch * ch);
    out = f(x) * w * rad;
    return true;
  };
  CoreResult r;
  s.run(Real(1), max_levels, tol, cut, r.value, r.error, r.converged);
  return r;
}

// (a, +inf)
CoreResult exp_sinh_core(const std::function<Real(const Real&)>& f, const Real& a,
                         const Real& tol, const Real& cut, unsigned max_levels) {
  Real half_pi = pi_real() / 2;
  LevelSummer s;
  s.term = [&](const Real& t, Real& out) -> bool {
    Real u = half_pi * sinh(t);
    Real x = exp(u);
    if (x == 0 || isinf(x)) return false;
    Real w = x * half_pi * cosh(t);
    out = f(a + x) * w;
    return bool(isfinite(out));
  };
  CoreResult r;
  s.run(Real(1), max_levels, tol, cut, r.value, r.error, r.converged);
  return r;
}

// the whole line
CoreResult sinh_sinh_core(const std::function<Real(const Real&)>& f, const Real& tol,
                          const Real& cut, unsigned max_levels) {
  Real half_pi = pi_real() / 2;
  LevelSummer s;
  s.term = [&](const Real& t, Real& out) -> bool {
    Real u = half_pi * sinh(t);
    Real x = sinh(u);
    if (isinf(x)) return false;
    Real w = half_pi * cosh(t) * cosh(u);
    out = f(x) * w;
    return bool(isfinite(out));
  };
  CoreResult r;
  s.run(Real(1), max_levels, tol, cut, r.value, r.error, r.converged);
  return r;
}

// ---- singularity-removing substitution --------------------------------------

// f(P(v)) with monomial contents of transformed power factors folded exactly;
// also reports the constant term of the transformed exponential argument,
// which the caller applies numerically
struct Substituted {
  QuasiRational f;
  Scalar exp_shift;
  // positive constants raised to rational powers, applied numerically
  std::vector<std::pair<Scalar, Rational>> const_powers;
};

Substituted substitute_poly(const QuasiRational& f, const Poly& p) {
  Substituted out;
  RatFun pre(f.prefactor().num().compose(p), f.prefactor().den().compose(p));
  Poly g = f.exp_arg().compose(p);
  out.exp_shift = g.coeff(0);
  if (!out.exp_shift.is_zero()) g -= Poly(out.exp_shift);
  std::vector<PowerFactor> factors;
  Poly v = Poly::x();
  for (const auto& pf : f.powers()) {
    Poly base = pf.base.compose(p);
    int k = 0;
    while (!base.is_zero() && base.coeff(0).is_zero()) {
      base = base.divide_exact(v);
      ++k;
    }
    if (k > 0) {
      Rational ke = Rational(k) * pf.exponent;
      ke.canonicalize();
      if (ke.get_den() != 1)
        throw std::logic_error("substitution left a fractional monomial power");
      long e = ke.get_num().get_si();
      if (e >= 0) pre = pre * RatFun(Poly::monomial(int(e)));
      else pre = pre / RatFun(Poly::monomial(int(-e)));
    }
    if (base.is_constant()) {
      // the factor reduced to a positive constant; apply it numerically
      out.const_powers.emplace_back(base.coeff(0), pf.exponent);
      continue;
    }
    factors.push_back({base, pf.exponent});
  }
  out.f = QuasiRational(pre, g, std::move(factors));
  return out;
}

// least common multiple of exponent denominators of factors vanishing at b
long fractional_lcm_at(const QuasiRational& f, const Scalar& b) {
  mpz_class l(1);
  for (const auto& pf : f.powers()) {
    if (root_order(pf.base, b) == 0) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), pf.exponent.get_den().get_mpz_t());
  }
  return l.get_si();
}

// integral over (a, m) where fractional power factors may vanish at a;
// substitute x = a + (m-a) v^q to remove the singularity exactly
CoreResult singular_piece(const QuasiRational& f, const Scalar& a, const Scalar& m,
                          bool mirrored, const Real& tol, const Real& cut,
                          unsigned max_levels) {
  long q = fractional_lcm_at(f, a);
  Scalar width = mirrored ? a - m : m - a;
  Poly subst;  // P(v) = a +/- width v^q
  {
    std::vector<Scalar> c(size_t(q) + 1, Scalar(0));
    c[0] = a;
    c[size_t(q)] = mirrored ? -width : width;
    subst = Poly(std::move(c));
  }
  Substituted s = substitute_poly(f, subst);
  QuasiRational integrand = s.f * QuasiRational(RatFun(subst.derivative()));
  if (mirrored) integrand = integrand * Scalar(-1);  // orientation of dv
  Real shift = exp(scalar_to_real(s.exp_shift));
  for (const auto& [c, e] : s.const_powers) {
    Real ce;
    mpfr_set_q(ce.backend().data(), e.get_mpq_t(), MPFR_RNDN);
    Real cb = scalar_to_real(c);
    if (!(cb > 0)) throw std::domain_error("nonpositive constant under fractional power");
    shift *= pow(cb, ce);
  }
  auto fn = [&](const Real& x) { return quasirational_eval_real(integrand, x); };
  CoreResult r = tanh_sinh_core(fn, Real(0), Real(1), tol, cut, max_levels);
  r.value *= shift;
  r.error *= shift;
  return r;
}

bool has_fractional_singularity(const QuasiRational& f, const Endpoint& e) {
  if (!e.is_finite()) return false;
  for (const auto& pf : f.powers())
    if (root_order(pf.base, *e.value) > 0 && pf.exponent.get_den() != 1) return true;
  return false;
}

}  // namespace

IntegrationResult integrate_fn(const std::function<Real(const Real&)>& f, const Interval& iv,
                               const QuadratureConfig& cfg,
                               const std::vector<Scalar>& extra_split_points) {
  PrecisionGuard guard(cfg.decimal_digits + cfg.guard_digits);
  Real tol = pow(Real(10), -Real(int(cfg.decimal_digits)));
  Real cut = pow(Real(10), -Real(int(cfg.decimal_digits + cfg.guard_digits) - 5));
  (void)extra_split_points;
  CoreResult r;
  if (!iv.lo.is_finite() && !iv.hi.is_finite()) {
    r = sinh_sinh_core(f, tol, cut, cfg.max_levels);
  } else if (iv.lo.is_finite() && iv.hi.is_finite()) {
    r = tanh_sinh_core(f, scalar_to_real(*iv.lo.value), scalar_to_real(*iv.hi.value), tol, cut,
                       cfg.max_levels);
  } else if (iv.lo.is_finite()) {
    r = exp_sinh_core(f, scalar_to_real(*iv.lo.value), tol, cut, cfg.max_levels);
  } else {
    auto g = [&](const Real& x) { return f(-x); };
    r = exp_sinh_core(g, -scalar_to_real(*iv.hi.value), tol, cut, cfg.max_levels);
  }
  IntegrationResult out;
  out.value = r.value;
  out.error_estimate = r.error;
  Real tol_ok =
      pow(Real(10), -Real(int(cfg.decimal_digits) - 10)) * fmax(Real(1), abs(r.value));
  out.converged = r.converged && r.error <= tol_ok;
  return out;
}

IntegrationResult integrate(const QuasiRational& f, const Interval& iv,
                            const QuadratureConfig& cfg) {
  IntegrationResult res;
  if (f.is_zero()) {
    res.value = 0;
    res.error_estimate = 0;
    res.converged = true;
    return res;
  }
  if (!integrable_at(f, iv.lo) || !integrable_at(f, iv.hi)) {
    res.divergent = true;
    return res;
  }
  PrecisionGuard guard(cfg.decimal_digits + cfg.guard_digits);
  Real tol = pow(Real(10), -Real(int(cfg.decimal_digits)));
  Real cut = pow(Real(10), -Real(int(cfg.decimal_digits + cfg.guard_digits) - 5));
  auto fn = [&](const Real& x) { return quasirational_eval_real(f, x); };

  std::vector<CoreResult> pieces;
  if (iv.lo.is_finite() && iv.hi.is_finite()) {
    Scalar mid = (*iv.lo.value + *iv.hi.value) / Scalar(2);
    bool sing_lo = has_fractional_singularity(f, iv.lo);
    bool sing_hi = has_fractional_singularity(f, iv.hi);
    if (sing_lo || sing_hi) {
      pieces.push_back(sing_lo
                           ? singular_piece(f, *iv.lo.value, mid, false, tol, cut, cfg.max_levels)
                           : tanh_sinh_core(fn, scalar_to_real(*iv.lo.value),
                                            scalar_to_real(mid), tol, cut, cfg.max_levels));
      pieces.push_back(sing_hi
                           ? singular_piece(f, *iv.hi.value, mid, true, tol, cut, cfg.max_levels)
                           : tanh_sinh_core(fn, scalar_to_real(mid),
                                            scalar_to_real(*iv.hi.value), tol, cut,
                                            cfg.max_levels));
    } else {
      pieces.push_back(tanh_sinh_core(fn, scalar_to_real(*iv.lo.value),
                                      scalar_to_real(*iv.hi.value), tol, cut, cfg.max_levels));
    }
  } else if (iv.lo.is_finite()) {
    Scalar split = *iv.lo.value + Scalar(1);
    if (has_fractional_singularity(f, iv.lo))
      pieces.push_back(singular_piece(f, *iv.lo.value, split, false, tol, cut, cfg.max_levels));
    else
      pieces.push_back(tanh_sinh_core(fn, scalar_to_real(*iv.lo.value),
                                      scalar_to_real(split), tol, cut, cfg.max_levels));
    pieces.push_back(exp_sinh_core(fn, scalar_to_real(split), tol, cut, cfg.max_levels));
  } else if (iv.hi.is_finite()) {
    Scalar split = *iv.hi.value - Scalar(1);
    auto g = [&](const Real& x) { return fn(-x); };
    if (has_fractional_singularity(f, iv.hi))
      pieces.push_back(singular_piece(f, *iv.hi.value, split, true, tol, cut, cfg.max_levels));
    else
      pieces.push_back(tanh_sinh_core(fn, scalar_to_real(split), scalar_to_real(*iv.hi.value),
                                      tol, cut, cfg.max_levels));
    pieces.push_back(exp_sinh_core(g, -scalar_to_real(split), tol, cut, cfg.max_levels));
  } else {
    pieces.push_back(sinh_sinh_core(fn, tol, cut, cfg.max_levels));
  }

  res.value = 0;
  res.error_estimate = 0;
  res.converged = true;
  for (const auto& p : pieces) {
    res.value += p.value;
    res.error_estimate += p.error;
    if (!p.converged) res.converged = false;
  }
  Real tol_ok =
      pow(Real(10), -Real(int(cfg.decimal_digits) - 10)) * fmax(Real(1), abs(res.value));
  if (res.error_estimate > tol_ok) res.converged = false;
  return res;
}

Real green_symmetry_residual(const DiffOp& t, const Poly& f, const Poly& g, const SLForm& sl,
                             const QuadratureConfig& cfg) {
  RatFun lhs = apply(t, f) * RatFun(g) - apply(t, g) * RatFun(f);
  QuasiRational integrand = QuasiRational(lhs) * sl.W;
  IntegrationResult r = integrate(integrand, sl.interval, cfg);
  if (r.divergent) return Real("inf");
  return abs(r.value);
}

OrthogonalityReport orthogonality_core(const std::vector<std::pair<int, Poly>>& polys,
                                       const QuasiRational& weight, const Interval& iv,
                                       const QuadratureConfig& cfg) {
  PrecisionGuard guard(cfg.decimal_digits + cfg.guard_digits);
  OrthogonalityReport rep;
  size_t n = polys.size();
  rep.gram.assign(n, std::vector<Real>(n, Real(0)));
  rep.norms.assign(n, Real(0));
  rep.max_offdiag = 0;
  for (auto& [idx, p] : polys) rep.indices.push_back(idx);
  IntegrationResult m0 = integrate(weight, iv, cfg);
  rep.moment0 = m0.value;
  if (!m0.converged) rep.all_converged = false;

  std::vector<std::vector<Real>> raw(n, std::vector<Real>(n, Real(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      QuasiRational integrand =
          QuasiRational(RatFun(polys[i].second * polys[j].second)) * weight;
      IntegrationResult r = integrate(integrand, iv, cfg);
      if (!r.converged) rep.all_converged = false;
      raw[i][j] = raw[j][i] = r.value;
    }
    rep.norms[i] = raw[i][i];
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      rep.gram[i][j] = raw[i][j] / sqrt(abs(raw[i][i] * raw[j][j]));
      if (i != j) rep.max_offdiag = fmax(rep.max_offdiag, abs(rep.gram[i][j]));
    }
  return rep;
}

}  // namespace xops
