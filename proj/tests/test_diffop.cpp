#include "doctest.h"

#include "xops/classical.hpp"
#include "xops/diffop.hpp"
#include "xops/quadrature.hpp"

#include <random>

using namespace xops;

namespace {

Scalar q(long n, long d = 1) { return Scalar::of_fraction(n, d); }

// y'' - 2 y'/z : preserves the monomial flag with degrees {0,2,3,...}
DiffOp unstable_x1_op() {
  return DiffOp::second_order(RatFun(Poly(q(1))), RatFun(Poly(q(-2)), Poly::x()), RatFun());
}

// y'' - 2(1+1/z) y' + (2/z) y : preserves span{z+1, z^2, z^3, ...}
DiffOp stable_x1_op() {
  RatFun c1 = RatFun(Poly(q(-2))) + RatFun(Poly(q(-2)), Poly::x());
  RatFun c0 = RatFun(Poly(q(2)), Poly::x());
  return DiffOp::second_order(RatFun(Poly(q(1))), c1, c0);
}

std::mt19937_64 rng(0x5eed0002);
Scalar rnd() {
  std::uniform_int_distribution<long> nd(-8, 8), dd(1, 4);
  return Scalar::of_fraction(nd(rng), dd(rng));
}

DiffOp random_first_order() {
  RatFun b(Poly({rnd(), rnd()}));
  while (b.is_zero()) b = RatFun(Poly({rnd(), rnd()}));
  RatFun w(Poly({rnd()}), Poly({rnd(), Scalar(1)}));
  return DiffOp::first_order(b, w);
}

}  // namespace

TEST_CASE("apply matches the displayed operator actions") {
  DiffOp t1 = unstable_x1_op();
  CHECK(apply(t1, Poly(q(1))).is_zero());
  CHECK(apply(t1, Poly::monomial(2)) == RatFun(Poly(q(-2))));
  DiffOp t2 = stable_x1_op();
  CHECK(apply(t2, Poly({q(1), q(1)})).is_zero());
  // differentiation oracle: T[z^3] computed term by term
  Poly z3 = Poly::monomial(3);
  RatFun expect = RatFun(Poly(z3.derivative().derivative())) +
                  (RatFun(Poly(q(-2))) + RatFun(Poly(q(-2)), Poly::x())) * RatFun(z3.derivative()) +
                  RatFun(Poly(q(2)), Poly::x()) * RatFun(z3);
  CHECK(apply(t2, z3) == expect);
}

TEST_CASE("compose basics and the first-order pair factoring the stable operator") {
  DiffOp d = DiffOp({RatFun(), RatFun(Poly(q(1)))});  // y'
  CHECK(compose(DiffOp::identity(), stable_x1_op()) == stable_x1_op());
  CHECK(compose(d, d) == DiffOp({RatFun(), RatFun(), RatFun(Poly(q(1)))}));
  // A = (y'-y)/z, B = z y' - (z+1) y; B A equals the stable operator shifted
  // by +1 (the factorization constant is -1: T = BA - 1)
  DiffOp a = DiffOp::first_order(RatFun(Poly(q(1)), Poly::x()), RatFun(Poly(q(1))));
  DiffOp b = DiffOp({RatFun(Poly({q(-1), q(-1)})), RatFun(Poly::x())});
  DiffOp ba = compose(b, a);
  CHECK(ba == stable_x1_op().plus_constant(q(1)));
  CHECK(check_factorization(stable_x1_op(), a, b, q(-1)));
  CHECK_FALSE(check_factorization(stable_x1_op(), a, b, q(0)));
  // order adds under composition
  CHECK(compose(a, compose(a, a)).order() == 3);
}

TEST_CASE("compose is associative") {
  for (int trial = 0; trial < 12; ++trial) {
    DiffOp a = random_first_order(), b = random_first_order(), c = random_first_order();
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("apply of composition equals nested apply on rational results") {
  for (int trial = 0; trial < 12; ++trial) {
    DiffOp a = random_first_order(), b = random_first_order();
    Poly y = Poly({rnd(), rnd(), rnd(), q(1)});
    RatFun inner = apply(b, y);
    // nested application through a rational intermediate
    RatFun nested = apply(a, inner);
    CHECK(apply(compose(a, b), y) == nested);
  }
}

TEST_CASE("laurent blocks at a pole") {
  DiffOp t = unstable_x1_op();
  auto blocks = laurent_decompose(t, q(0), 4);
  REQUIRE(!blocks.empty());
  CHECK(blocks[0].shift == -2);
  CHECK(blocks[0].p == q(1));
  CHECK(blocks[0].q == q(-2));
  CHECK(blocks[0].r == q(0));
  // T_{-2} annihilates exactly z^0 and z^3: j(j-1) - 2j = j(j-3)
  for (int j = 0; j <= 5; ++j) {
    Scalar val = blocks[0].p * Scalar(j * (j - 1)) + blocks[0].q * Scalar(j) + blocks[0].r;
    CHECK(val.is_zero() == (j == 0 || j == 3));
  }
  // re-summing the blocks reproduces the coefficients exactly; a polynomial
  // operator still has degree-lowering blocks (y'' sits at shift -2) but no
  // singular coefficient content
  DiffOp poly_op = DiffOp::second_order(RatFun(Poly({q(1), q(2)})), RatFun(Poly({q(3)})),
                                        RatFun(Poly({q(5), q(0), q(7)})));
  auto bl = laurent_decompose(poly_op, q(1), 8);
  RatFun c2, c1, c0;
  Poly zm1({q(-1), q(1)});
  auto zpow = [&](int k) {
    Poly acc(q(1));
    for (int i = 0; i < k; ++i) acc = acc * zm1;
    return RatFun(acc);
  };
  for (const auto& blk : bl) {
    REQUIRE(blk.shift >= -2);
    if (blk.shift + 2 >= 0) c2 += zpow(blk.shift + 2) * RatFun(blk.p);
    if (blk.shift + 1 < 0)
      CHECK(blk.q.is_zero());
    else
      c1 += zpow(blk.shift + 1) * RatFun(blk.q);
    if (blk.shift < 0)
      CHECK(blk.r.is_zero());
    else
      c0 += zpow(blk.shift) * RatFun(blk.r);
  }
  CHECK(c2 == poly_op.coeff(2));
  CHECK(c1 == poly_op.coeff(1));
  CHECK(c0 == poly_op.coeff(0));
}

TEST_CASE("pole profile accepts the simple-pole normal form") {
  // y'' + z(1 - 4/(z^2-1)) y': poles at 1 and -1 with zero slopes
  RatFun c1 = RatFun(Poly({q(0), q(1)})) -
              RatFun(Poly({q(0), q(4)}), Poly({q(-1), q(0), q(1)}));
  DiffOp t = DiffOp::second_order(RatFun(Poly(q(1))), c1, RatFun());
  auto prof = pole_profile(t);
  REQUIRE(prof.poles.size() == 2);
  for (const auto& p : prof.poles) {
    CHECK(p.a == q(0));
    CHECK(p.c == q(-2));
    CHECK((p.b == q(1) || p.b == q(-1)));
  }
  CHECK(prof.poly_q == Poly({q(0), q(1)}));
  // classical operators have no poles
  auto hermite = classical_operator(ClassicalParams::hermite());
  auto prof2 = pole_profile(DiffOp::second_order(RatFun(hermite.p), RatFun(hermite.q), RatFun()));
  CHECK(prof2.poles.empty());
  // y'' + y/z^2 has a double pole in the y coefficient with no y' partner
  DiffOp bad = DiffOp::second_order(RatFun(Poly(q(1))), RatFun(),
                                    RatFun(Poly(q(1)), Poly::monomial(2)));
  CHECK_THROWS_AS(pole_profile(bad), not_in_normal_form);
}

TEST_CASE("pole profile ties y-residues to y'-residues") {
  // c (y' - a y)/(z - b) with a=3, b=2, c=5 plus polynomial parts
  RatFun inv(Poly(q(1)), Poly({q(-2), q(1)}));
  DiffOp t = DiffOp::second_order(RatFun(Poly({q(1), q(0), q(1)})),
                                  RatFun(Poly({q(1), q(1)})) + inv * q(5),
                                  RatFun(Poly(q(4))) + inv * q(-15));
  auto prof = pole_profile(t);
  REQUIRE(prof.poles.size() == 1);
  CHECK(prof.poles[0].b == q(2));
  CHECK(prof.poles[0].c == q(5));
  CHECK(prof.poles[0].a == q(3));
  CHECK(prof.r0 == q(4));
}

TEST_CASE("sl_form reproduces the classical weights") {
  Interval halfline = Interval::positive_halfline();
  auto lag = classical_operator(ClassicalParams::laguerre(q(1, 2)));
  DiffOp t = DiffOp::second_order(RatFun(lag.p), RatFun(lag.q), RatFun());
  SLForm sl = sl_form(t, halfline);
  QuasiRational expect = QuasiRational::exp_of(Poly({q(0), q(-1)})) *
                         QuasiRational::power(Poly::x(), Rational(1, 2));
  CHECK(sl.W == expect);
  CHECK((sl.W * QuasiRational(RatFun(lag.p))) == sl.P);

  auto her = classical_operator(ClassicalParams::hermite());
  DiffOp h = DiffOp::second_order(RatFun(her.p), RatFun(her.q), RatFun());
  SLForm slh = sl_form(h, Interval::real_line());
  CHECK(slh.W == QuasiRational::exp_of(Poly({q(0), q(0), q(-1)})));

  // Laguerre-shaped operator with an extra -2p(log xi)' y' term: the weight
  // picks up 1/xi^2
  Poly xi({q(3), q(1)});
  RatFun extra = RatFun(Poly({q(0), q(-2)})) * RatFun(xi.derivative(), xi);
  DiffOp texc = DiffOp::second_order(RatFun(lag.p), RatFun(lag.q) + extra, RatFun());
  SLForm sle = sl_form(texc, halfline);
  QuasiRational expect_exc = expect * QuasiRational(RatFun(Poly(q(1)), xi * xi));
  CHECK(sle.W == expect_exc);
  CHECK((sle.W * QuasiRational(RatFun(lag.p))) == sle.P);
  CHECK(sle.R.is_zero());

  // weight positivity orientation on a finite interval
  auto jac = classical_operator(ClassicalParams::jacobi(q(1, 2), q(1, 3)));
  DiffOp tj = DiffOp::second_order(RatFun(jac.p), RatFun(jac.q), RatFun());
  SLForm slj = sl_form(tj, Interval::finite(q(-1), q(1)));
  QuasiRational wj = QuasiRational::power(Poly({q(1), q(-1)}), Rational(1, 2)) *
                     QuasiRational::power(Poly({q(1), q(1)}), Rational(1, 3));
  CHECK(slj.W == wj);
}

TEST_CASE("sl_form rejects non-quasi-rational weights") {
  // q/p with a double pole
  DiffOp bad = DiffOp::second_order(RatFun(Poly::monomial(2)), RatFun(Poly(q(1))), RatFun());
  CHECK_THROWS_AS(sl_form(bad, Interval::positive_halfline()), non_quasi_rational_weight);
  // arctangent-type: q/p = 1/(z^2+1)
  DiffOp bad2 = DiffOp::second_order(RatFun(Poly({q(1), q(0), q(1)})), RatFun(Poly(q(1))),
                                     RatFun());
  CHECK_THROWS_AS(sl_form(bad2, Interval::real_line()), non_quasi_rational_weight);
}

TEST_CASE("factorization and intertwining checks") {
  DiffOp d = DiffOp({RatFun(), RatFun(Poly(q(1)))});  // y'
  DiffOp dd = compose(d, d);
  CHECK(check_factorization(dd, d, d, q(0)));
  CHECK_FALSE(check_factorization(dd, d, d, q(1)));
  CHECK(check_intertwining(d, dd, dd));
  CHECK_FALSE(check_intertwining(d, dd, dd.plus_constant(q(1))));
}

TEST_CASE("pole counting") {
  CHECK(distinct_pole_count(stable_x1_op()) == 1);
  CHECK(single_rational_pole(stable_x1_op()).value() == q(0));
  // denominator 2x^2+1: two complex poles
  Poly xi({q(1), q(0), q(2)});
  DiffOp t = DiffOp::second_order(RatFun(Poly(q(1))), RatFun(xi.derivative(), xi), RatFun());
  CHECK(distinct_pole_count(t) == 2);
  CHECK_FALSE(single_rational_pole(t).has_value());
}

TEST_CASE("sl_form returns R = -r W for operators with a zeroth-order term") {
  // Laguerre-shaped operator with constant zeroth-order coefficient
  auto lag = classical_operator(ClassicalParams::laguerre(q(1, 2)));
  DiffOp t = DiffOp::second_order(RatFun(lag.p), RatFun(lag.q), RatFun(Poly(q(3))));
  SLForm sl = sl_form(t, Interval::positive_halfline());
  CHECK(sl.R == (sl.W * QuasiRational(RatFun(Poly(q(-3))))));
}

TEST_CASE("intertwining of the shifted two-pole operator with the classical one") {
  // A = y'/(2x^2+1) lowers the two-pole system onto the classical one; the
  // relation holds exactly once the eigenvalue offset 6 is made explicit
  Poly xi({q(1), q(0), q(2)});
  DiffOp a({RatFun(), RatFun(Poly(q(1)), xi)});
  RatFun c1 = RatFun(Poly({q(0), q(-2)})) - RatFun(Scalar(2)) * RatFun(xi.derivative(), xi);
  DiffOp hhat = DiffOp::second_order(RatFun(Poly(q(1))), c1, RatFun());
  DiffOp h = DiffOp::second_order(RatFun(Poly(q(1))), RatFun(Poly({q(0), q(-2)})), RatFun());
  CHECK(check_intertwining(a, hhat.plus_constant(q(6)), h));
  CHECK_FALSE(check_intertwining(a, hhat, h));
}
