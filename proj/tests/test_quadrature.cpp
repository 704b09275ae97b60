#include "doctest.h"

#include "xops/classical.hpp"
#include "xops/quadrature.hpp"

using namespace xops;

namespace {

Scalar q(long n, long d = 1) { return Scalar::of_fraction(n, d); }

Real tolerance(int digits) { return pow(Real(10), -digits); }

// independent oracle: adaptive bisection with fixed-order Gauss-Legendre
// panels; the nodes come from Newton iteration on Legendre polynomials,
// deliberately unrelated to the double-exponential machinery it cross-checks
struct GaussRule {
  std::vector<Real> nodes, weights;
  explicit GaussRule(int n) {
    Real pi;
    mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
    for (int i = 0; i < n; ++i) {
      Real x = cos(pi * (Real(i) + Real(3) / 4) / (Real(n) + Real(1) / 2));
      for (int it = 0; it < 200; ++it) {
        // Legendre P_n and derivative by recurrence
        Real p0(1), p1 = x;
        for (int k = 2; k <= n; ++k) {
          Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        Real dp = Real(n) * (x * p1 - p0) / (x * x - 1);
        Real dx = p1 / dp;
        x -= dx;
        if (abs(dx) < pow(Real(10), -70)) break;
      }
      Real p0(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      Real dp = Real(n) * (x * p1 - p0) / (x * x - 1);
      nodes.push_back(x);
      weights.push_back(2 / ((1 - x * x) * dp * dp));
    }
  }
  Real apply(const std::function<Real(const Real&)>& f, const Real& a, const Real& b) const {
    Real mid = (a + b) / 2, rad = (b - a) / 2, acc = 0;
    for (size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(mid + rad * nodes[i]);
    return acc * rad;
  }
};

Real gauss_bisect(const GaussRule& rule, const std::function<Real(const Real&)>& f, Real a,
                  Real b, Real tol, int depth, Real whole) {
  Real m = (a + b) / 2;
  Real left = rule.apply(f, a, m), right = rule.apply(f, m, b);
  if (depth <= 0 || abs(left + right - whole) < tol) return left + right;
  return gauss_bisect(rule, f, a, m, tol / 2, depth - 1, left) +
         gauss_bisect(rule, f, m, b, tol / 2, depth - 1, right);
}

Real oracle_integrate(const std::function<Real(const Real&)>& f, Real a, Real b, Real tol) {
  static GaussRule rule(24);
  return gauss_bisect(rule, f, a, b, tol, 40, rule.apply(f, a, b));
}

}  // namespace

TEST_CASE("integration matches a battery of closed forms") {
  QuadratureConfig cfg;
  cfg.decimal_digits = 50;
  PrecisionGuard guard(80);
  Real pi;
  mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
  Real tol = tolerance(40);
  Poly x = Poly::x();
  Interval hl = Interval::positive_halfline();
  struct Case {
    QuasiRational f;
    Interval iv;
    Real expect;
  };
  std::vector<Case> battery;
  // int_0^inf e^-x = 1
  battery.push_back({QuasiRational::exp_of(Poly({q(0), q(-1)})), hl, Real(1)});
  // int_-inf^inf e^-x^2 = sqrt(pi)
  battery.push_back({QuasiRational::exp_of(Poly({q(0), q(0), q(-1)})), Interval::real_line(),
                     sqrt(pi)});
  // int_0^1 x^{-1/2} = 2
  battery.push_back({QuasiRational::power(x, Rational(-1, 2)),
                     Interval::finite(q(0), q(1)), Real(2)});
  // int_-1^1 (1-x)^{-1/2}(1+x)^{-1/2} = pi
  battery.push_back({QuasiRational::power(Poly({q(1), q(-1)}), Rational(-1, 2)) *
                         QuasiRational::power(Poly({q(1), q(1)}), Rational(-1, 2)),
                     Interval::finite(q(-1), q(1)), pi});
  // int_0^inf x^2 e^-x = 2
  battery.push_back({QuasiRational(RatFun(Poly::monomial(2))) *
                         QuasiRational::exp_of(Poly({q(0), q(-1)})),
                     hl, Real(2)});
  // int_0^inf sqrt(x) e^-x = sqrt(pi)/2
  battery.push_back({QuasiRational::power(x, Rational(1, 2)) *
                         QuasiRational::exp_of(Poly({q(0), q(-1)})),
                     hl, sqrt(pi) / 2});
  // int_-1^1 (1-x^2) dx = 4/3
  battery.push_back({QuasiRational(RatFun(Poly({q(1), q(0), q(-1)}))),
                     Interval::finite(q(-1), q(1)), Real(4) / 3});
  // int_0^inf e^-2x = 1/2
  battery.push_back({QuasiRational::exp_of(Poly({q(0), q(-2)})), hl, Real(1) / 2});
  // int_-inf^inf x^2 e^-x^2 = sqrt(pi)/2
  battery.push_back({QuasiRational(RatFun(Poly::monomial(2))) *
                         QuasiRational::exp_of(Poly({q(0), q(0), q(-1)})),
                     Interval::real_line(), sqrt(pi) / 2});
  // int_0^1 x^{1/4}(2-x) dx = 4/5 + ... = 2*(4/5) - 4/9... use exact: 2*4/5 - 4/9
  battery.push_back({QuasiRational::power(x, Rational(1, 4)) *
                         QuasiRational(RatFun(Poly({q(2), q(-1)}))),
                     Interval::finite(q(0), q(1)), Real(8) / 5 - Real(4) / 9});

  for (const auto& c : battery) {
    IntegrationResult r = integrate(c.f, c.iv, cfg);
    CHECK(r.converged);
    CHECK(abs(r.value - c.expect) < tol);
  }
}

TEST_CASE("divergent integrals are detected symbolically") {
  QuadratureConfig cfg;
  cfg.decimal_digits = 30;
  Poly x = Poly::x();
  // x^{-1} on (0,1): not integrable at 0
  QuasiRational f(RatFun(Poly(q(1)), x));
  auto r = integrate(f, Interval::finite(q(0), q(1)), cfg);
  CHECK(r.divergent);
  // polynomial on the half-line
  auto r2 = integrate(QuasiRational(RatFun(x)), Interval::positive_halfline(), cfg);
  CHECK(r2.divergent);
  // growing exponential
  auto r3 = integrate(QuasiRational::exp_of(x), Interval::positive_halfline(), cfg);
  CHECK(r3.divergent);
}

TEST_CASE("fourth-order weight pole integral cross-checked against adaptive bisection") {
  // the one-pole Laguerre-type weight e^-x x^{1/4}/(4x+3)^4 integrated over
  // the half-line; oracle truncates at x = 260 (tail < e^-260)
  QuadratureConfig cfg;
  cfg.decimal_digits = 45;
  PrecisionGuard guard(80);
  Poly den({q(3), q(4)});
  QuasiRational w = QuasiRational::exp_of(Poly({q(0), q(-1)})) *
                    QuasiRational::power(Poly::x(), Rational(1, 4)) *
                    QuasiRational(RatFun(Poly(q(1)), den * den * den * den));
  IntegrationResult r = integrate(w, Interval::positive_halfline(), cfg);
  REQUIRE(r.converged);
  CHECK(r.value > 0);
  auto fn = [&](const Real& x) {
    if (x <= 0) return Real(0);
    return quasirational_eval_real(w, x);
  };
  // substitute x = u^4 on (0,1) so the oracle sees a smooth integrand, and
  // pre-split the tail so the adaptive rule samples the mass
  auto fn_sub = [&](const Real& u) {
    Real u2 = u * u;
    return fn(u2 * u2) * 4 * u2 * u;
  };
  Real oracle = oracle_integrate(fn_sub, Real(0), Real(1), tolerance(34));
  Real cuts[] = {Real(1), Real(4), Real(16), Real(64), Real(260)};
  for (int i = 0; i + 1 < 5; ++i)
    oracle += oracle_integrate(fn, cuts[i], cuts[i + 1], tolerance(34));
  CHECK(abs(r.value - oracle) < tolerance(30));
}

TEST_CASE("boundary vanishing analysis") {
  // Laguerre alpha = 1/2: p W = e^-x x^{3/2} -> 0 at both ends
  auto lag = classical_operator(ClassicalParams::laguerre(q(1, 2)));
  DiffOp t = DiffOp::second_order(RatFun(lag.p), RatFun(lag.q), RatFun());
  SLForm sl = sl_form(t, Interval::positive_halfline());
  CHECK(boundary_vanishing(sl));
  // Jacobi alpha = beta = -1/2: p W = (1-x)^{1/2}(1+x)^{1/2} -> 0
  auto jac = classical_operator(ClassicalParams::jacobi(q(-1, 2), q(-1, 2)));
  DiffOp tj = DiffOp::second_order(RatFun(jac.p), RatFun(jac.q), RatFun());
  CHECK(boundary_vanishing(sl_form(tj, Interval::finite(q(-1), q(1)))));
  // Laguerre alpha = -1: p W = e^-x x^0 tends to 1 at the origin
  auto lag2 = classical_operator(ClassicalParams::laguerre(q(-1)));
  DiffOp t2 = DiffOp::second_order(RatFun(lag2.p), RatFun(lag2.q), RatFun());
  CHECK_FALSE(boundary_vanishing(sl_form(t2, Interval::positive_halfline())));
}

TEST_CASE("green formula residual vanishes for classical systems") {
  QuadratureConfig cfg;
  cfg.decimal_digits = 50;
  auto her = classical_operator(ClassicalParams::hermite());
  DiffOp t = DiffOp::second_order(RatFun(her.p), RatFun(her.q), RatFun());
  SLForm sl = sl_form(t, Interval::real_line());
  Real r = green_symmetry_residual(t, Poly::x(), Poly::monomial(2), sl, cfg);
  CHECK(r < tolerance(30));
  // f = g gives exactly zero
  CHECK(green_symmetry_residual(t, Poly::x(), Poly::x(), sl, cfg) == 0);
  auto lag = classical_operator(ClassicalParams::laguerre(q(1, 2)));
  DiffOp tl = DiffOp::second_order(RatFun(lag.p), RatFun(lag.q), RatFun());
  SLForm sll = sl_form(tl, Interval::positive_halfline());
  CHECK(green_symmetry_residual(tl, Poly(q(1)), Poly::x(), sll, cfg) < tolerance(30));
}

TEST_CASE("doubling precision shrinks orthogonality off-diagonals") {
  std::vector<std::pair<int, Poly>> polys;
  for (int n = 0; n <= 4; ++n)
    polys.emplace_back(n, classical_poly(ClassicalParams::laguerre(q(1, 2)), n));
  QuasiRational w = QuasiRational::exp_of(Poly({q(0), q(-1)})) *
                    QuasiRational::power(Poly::x(), Rational(1, 2));
  QuadratureConfig lo, hi;
  lo.decimal_digits = 25;
  hi.decimal_digits = 50;
  auto rl = orthogonality_core(polys, w, Interval::positive_halfline(), lo);
  auto rh = orthogonality_core(polys, w, Interval::positive_halfline(), hi);
  CHECK(rl.all_converged);
  CHECK(rh.all_converged);
  CHECK(rl.max_offdiag < tolerance(15));
  CHECK(rh.max_offdiag < tolerance(35));
  CHECK(rh.max_offdiag < rl.max_offdiag);
  for (const auto& nrm : rh.norms) CHECK(nrm > 0);
}
