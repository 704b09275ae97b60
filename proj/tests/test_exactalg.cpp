#include "doctest.h"

#include "xops/classical.hpp"
#include "xops/linalg.hpp"
#include "xops/quasirational.hpp"
#include "xops/sturm.hpp"

#include <random>

using namespace xops;

namespace {

Scalar q(long n, long d = 1) { return Scalar::of_fraction(n, d); }

std::mt19937_64 rng(0x5eed0001);
Scalar random_rational(long num_range = 12, long den_range = 6) {
  std::uniform_int_distribution<long> nd(-num_range, num_range), dd(1, den_range);
  return Scalar::of_fraction(nd(rng), dd(rng));
}

Poly random_poly(int maxdeg) {
  std::uniform_int_distribution<int> dd(0, maxdeg);
  int deg = dd(rng);
  std::vector<Scalar> c;
  for (int i = 0; i <= deg; ++i) c.push_back(random_rational());
  return Poly(std::move(c));
}

}  // namespace

TEST_CASE("scalar arithmetic in quadratic extension") {
  Scalar s2 = Scalar::sqrt_int(2);
  CHECK((s2 * s2) == Scalar(2));
  Scalar v = (Scalar(1) + s2) * (Scalar(1) - s2);
  CHECK(v == Scalar(-1));
  CHECK((Scalar(1) / (Scalar(1) + s2)) == (s2 - Scalar(1)));
  CHECK(Scalar::sqrt_int(4) == Scalar(2));
  CHECK(Scalar::sqrt_int(2).sign() == 1);
  CHECK((Scalar(1) - s2).sign() == -1);
  CHECK((Scalar(3, 2, 2) /* 3+2*sqrt(2) */).sign() == 1);
  CHECK((Scalar(3) - Scalar(2) * s2).sign() == 1);  // 3 > 2*sqrt(2)
  CHECK((Scalar(2) * s2 - Scalar(3)).sign() == -1);
  CHECK_THROWS_AS(Scalar::sqrt_int(2) + Scalar::sqrt_int(3), scalar_context_error);
}

TEST_CASE("scalar parse round trip") {
  for (auto text : {"3/4", "-7", "1/2+3/5*sqrt(2)", "-1/3*sqrt(5)", "2-1*sqrt(3)"}) {
    auto s = Scalar::parse(text);
    REQUIRE(s.has_value());
    auto back = Scalar::parse(s->str());
    REQUIRE(back.has_value());
    CHECK(*s == *back);
  }
  CHECK_FALSE(Scalar::parse("0.5").has_value());
  CHECK_FALSE(Scalar::parse("x").has_value());
}

TEST_CASE("polynomial degree sentinel and arithmetic") {
  Poly zero;
  CHECK(zero.degree() == kDegNegInf);
  Poly p({q(1), q(2)});  // 1 + 2x
  Poly s = p * zero;
  CHECK(s.degree() == kDegNegInf);
  Poly r = p * p;
  CHECK(r.degree() == p.degree() + p.degree());
  for (int i = 0; i < 40; ++i) {
    Poly a = random_poly(5), b = random_poly(5);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK((a * b).degree() == a.degree() + b.degree());
  }
}

TEST_CASE("polynomial divmod and gcd") {
  Poly a({q(-1), q(0), q(1)});  // x^2-1
  Poly b({q(1), q(1)});         // x+1
  auto [quot, rem] = Poly::divmod(a, b);
  CHECK(rem.is_zero());
  CHECK(quot == Poly({q(-1), q(1)}));
  CHECK(gcd(a, b) == b.monic());
  for (int i = 0; i < 30; ++i) {
    Poly x = random_poly(4), y = random_poly(4), g = random_poly(2);
    if (g.is_zero()) continue;
    Poly gg = gcd(x * g, y * g);
    if (!x.is_zero() && !y.is_zero()) {
      auto r2 = Poly::divmod(gg, g.monic()).second;
      CHECK(r2.is_zero());
    }
  }
}

TEST_CASE("rational function reduction invariants") {
  RatFun f(Poly({q(0), q(2), q(2)}), Poly({q(0), q(1)}));  // (2x^2+2x)/x
  CHECK(f.is_polynomial());
  CHECK(f.as_poly() == Poly({q(2), q(2)}));
  CHECK(f.den().leading() == Scalar(1));
  RatFun g(Poly({q(1)}), Poly({q(0), q(3)}));  // 1/(3x) -> (1/3)/x
  CHECK(g.den() == Poly({q(0), q(1)}));
  CHECK(g.num() == Poly(q(1, 3)));
}

TEST_CASE("fraction-free nullspace") {
  // rank-2 matrix with known kernel
  Mat m = {{q(1), q(2), q(3)}, {q(2), q(4), q(6)}, {q(0), q(1), q(1)}};
  auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  // kernel spans (-1, -1, 1)
  const auto& v = ns[0];
  CHECK(v[0] == v[1]);
  CHECK(v[2] == -v[1]);
  CHECK(rank(m) == 2);
  Mat id = {{q(1), q(0)}, {q(0), q(1)}};
  CHECK(nullspace(id).empty());
  CHECK(determinant(id) == Scalar(1));
  Mat sq = {{q(2), q(1)}, {q(1), q(1)}};
  CHECK(determinant(sq) == Scalar(1));
}

TEST_CASE("sturm root counting") {
  // (x-1)(x-2)(x+3)
  Poly p = Poly({q(-1), q(1)}) * Poly({q(-2), q(1)}) * Poly({q(3), q(1)});
  CHECK(count_roots_closed(p, Endpoint::finite(q(0)), Endpoint::pos_inf()) == 2);
  CHECK(count_roots_closed(p, Endpoint::neg_inf(), Endpoint::pos_inf()) == 3);
  CHECK(count_roots_closed(p, Endpoint::finite(q(1)), Endpoint::finite(q(2))) == 2);
  CHECK(count_roots_closed(p, Endpoint::finite(q(3, 2)), Endpoint::finite(q(7, 4))) == 0);
  // double root counts once
  Poly d = Poly({q(-1), q(1)}) * Poly({q(-1), q(1)});
  CHECK(count_roots_closed(d, Endpoint::neg_inf(), Endpoint::pos_inf()) == 1);
  // no real roots
  Poly c({q(1), q(0), q(2)});
  CHECK(count_roots_closed(c, Endpoint::neg_inf(), Endpoint::pos_inf()) == 0);
}

TEST_CASE("classical polynomials match recurrence and known values") {
  // H_{n+1} = 2x H_n - 2n H_{n-1} is the construction; spot-check H_2
  CHECK(classical_poly(ClassicalParams::hermite(), 0) == Poly(q(1)));
  CHECK(classical_poly(ClassicalParams::hermite(), 2) == Poly({q(-2), q(0), q(4)}));
  // L_2^{(g)}(-x) = (x^2 + 2(g+2)x + (g+1)(g+2))/2; at g = 0 this is
  // (x^2+4x+2)/2, the denominator polynomial of the type-I weight at
  // family parameter 1
  Poly l2 = classical_poly(ClassicalParams::laguerre(q(0)), 2);
  Poly l2neg = l2.compose_affine(q(-1), q(0));
  CHECK(l2neg == Poly({q(1), q(2), q(1, 2)}));
  for (long gnum : {1L, 3L, -1L}) {
    Scalar g = q(gnum, 2);
    Poly lg = classical_poly(ClassicalParams::laguerre(g), 2).compose_affine(q(-1), q(0));
    Poly expect = (Poly::monomial(2) + Poly({q(0), q(2)}) * (g + q(2)) +
                   Poly((g + q(1)) * (g + q(2)))) * q(1, 2);
    CHECK(lg == expect);
  }
  // Laguerre recurrence (n+1)L_{n+1} = (2n+1+a-x)L_n - (n+a)L_{n-1}
  Scalar a = q(3, 4);
  for (int n = 1; n < 8; ++n) {
    Poly ln = classical_poly(ClassicalParams::laguerre(a), n);
    Poly lm = classical_poly(ClassicalParams::laguerre(a), n - 1);
    Poly lp = classical_poly(ClassicalParams::laguerre(a), n + 1);
    Poly rhs = (Poly({Scalar(2 * n + 1) + a, q(-1)}) * ln - lm * (Scalar(n) + a)) / Scalar(n + 1);
    CHECK(lp == rhs);
  }
  // Jacobi value at 1: binom(n+alpha, n)
  Scalar al = q(1, 2), be = q(2, 3);
  for (int n = 0; n < 6; ++n) {
    Poly pn = classical_poly(ClassicalParams::jacobi(al, be), n);
    CHECK(pn.eval(q(1)) == binomial_scalar(al + Scalar(n), n));
    CHECK(pn.degree() == n);
  }
}

TEST_CASE("quasi-rational normalization and arithmetic") {
  Poly x = Poly::x();
  // integer exponents fold into the prefactor
  QuasiRational f = QuasiRational::power(x, Rational(5, 2));
  CHECK(f.powers().size() == 1);
  CHECK(f.powers()[0].exponent == Rational(1, 2));
  CHECK(f.prefactor() == RatFun(Poly::monomial(2)));
  // x^(1/2) * x^(3/2) = x^2
  QuasiRational g = QuasiRational::power(x, Rational(1, 2)) *
                    QuasiRational::power(x, Rational(3, 2));
  CHECK(g.is_rational());
  CHECK(g.as_ratfun() == RatFun(Poly::monomial(2)));
  // log-derivative of products adds
  for (int i = 0; i < 20; ++i) {
    Poly p1 = random_poly(3), p2 = random_poly(3);
    if (p1.is_zero() || p2.is_zero()) continue;
    QuasiRational a = QuasiRational(RatFun(p1)) * QuasiRational::exp_of(x * x);
    QuasiRational b = QuasiRational(RatFun(p2)) * QuasiRational::power(x, Rational(1, 3));
    RatFun lhs = (a * b).log_derivative();
    RatFun rhs = a.log_derivative() + b.log_derivative();
    CHECK(lhs == rhs);
  }
}

TEST_CASE("quasi-rational multiplication is associative and commutative") {
  Poly x = Poly::x();
  std::vector<QuasiRational> pool;
  for (int i = 0; i < 6; ++i) {
    QuasiRational f(RatFun(random_poly(2) + Poly(q(1))));
    if (i % 2) f = f * QuasiRational::exp_of(x * Scalar(i));
    if (i % 3 == 0) f = f * QuasiRational::power(x, Rational(1, 2));
    pool.push_back(f);
  }
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = 0; j < pool.size(); ++j) {
      CHECK((pool[i] * pool[j]) == (pool[j] * pool[i]));
      for (size_t k = 0; k < pool.size(); ++k)
        CHECK(((pool[i] * pool[j]) * pool[k]) == (pool[i] * (pool[j] * pool[k])));
    }
}

TEST_CASE("log_derivative catalog examples") {
  Poly x = Poly::x();
  CHECK(QuasiRational::exp_of(x * x).log_derivative() == RatFun(Poly({q(0), q(2)})));
  // x^(-1/2): log-derivative -1/(2x)
  QuasiRational p = QuasiRational::power(x, Rational(-1, 2));
  CHECK(p.log_derivative() == RatFun(Poly(q(-1, 2)), x));
  // (x^2+1) e^{-x}: 2x/(x^2+1) - 1
  QuasiRational f = QuasiRational(RatFun(Poly({q(1), q(0), q(1)}))) *
                    QuasiRational::exp_of(Poly({q(0), q(-1)}));
  RatFun expect = RatFun(Poly({q(0), q(2)}), Poly({q(1), q(0), q(1)})) - RatFun(Poly(q(1)));
  CHECK(f.log_derivative() == expect);
  // derivative consistency: (f')/f == log_derivative
  QuasiRational fd = f.derivative();
  CHECK((fd / f).as_ratfun() == f.log_derivative());
}

TEST_CASE("wronskian basics and alternating property") {
  Poly x = Poly::x();
  QuasiRational fx{RatFun(x)};
  QuasiRational one{RatFun(Poly(q(1)))};
  CHECK(wronskian({fx}) == fx);
  CHECK(wronskian({fx, one}).as_ratfun() == RatFun(Poly(q(-1))));
  // spec example: W[e^{x^2}(-4x^2-2), 1] = e^{x^2}(8x^3+12x)
  QuasiRational psi = QuasiRational::exp_of(x * x) * QuasiRational(RatFun(Poly({q(-2), q(0), q(-4)})));
  QuasiRational w = wronskian({psi, one});
  QuasiRational expect = QuasiRational::exp_of(x * x) * QuasiRational(RatFun(Poly({q(0), q(12), q(0), q(8)})));
  CHECK(w == expect);
  // alternating: swapping entries negates
  QuasiRational g = QuasiRational(RatFun(Poly({q(1), q(3)}))) * QuasiRational::power(x, Rational(1, 2));
  QuasiRational ab = wronskian({psi, g}), ba = wronskian({g, psi});
  CHECK(ab == (ba * Scalar(-1)));
  QuasiRational t1{RatFun(Poly({q(1), q(1)}))};
  CHECK(wronskian({psi, g, t1}) == (wronskian({g, psi, t1}) * Scalar(-1)));
}

TEST_CASE("wronskian operator coefficients agree with direct wronskian") {
  Poly x = Poly::x();
  QuasiRational f1 = QuasiRational::exp_of(x) * QuasiRational(RatFun(Poly({q(1), q(1)})));
  QuasiRational f2 = QuasiRational::power(x, Rational(-1, 2)) * QuasiRational(RatFun(Poly({q(2), q(0), q(1)})));
  for (auto& fs : std::vector<std::vector<QuasiRational>>{{f1}, {f1, f2}}) {
    auto coeffs = wronskian_operator_coeffs(fs);
    Poly y({q(3), q(-2), q(0), q(1)});
    // assemble prod * sum c_k y^{(k)} and compare against the determinant
    QuasiRational prod(Scalar(1));
    for (auto& f : fs) prod *= f;
    RatFun sum;
    Poly d = y;
    for (size_t k = 0; k < coeffs.size(); ++k) {
      sum += coeffs[k] * RatFun(d);
      d = d.derivative();
    }
    auto full = fs;
    full.push_back(QuasiRational(RatFun(y)));
    CHECK(wronskian(full) == (prod * QuasiRational(sum)));
  }
}

TEST_CASE("hermite imaginary-argument polynomial pins catalog normalization") {
  auto [fn, lam] = quasi_eigenfunction(ClassicalParams::hermite(), 2, 2);
  CHECK(lam == Scalar(6));
  QuasiRational expect = QuasiRational::exp_of(Poly::x() * Poly::x()) *
                         QuasiRational(RatFun(Poly({q(-2), q(0), q(-4)})));
  CHECK(fn == expect);
  auto [f0, l0] = quasi_eigenfunction(ClassicalParams::laguerre(q(1, 2)), 1, 0);
  CHECK(f0 == QuasiRational(Scalar(1)));
  CHECK(l0 == Scalar(0));
}
