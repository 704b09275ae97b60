#include "doctest.h"

#include "xops/classical.hpp"
#include "xops/flags.hpp"

#include <random>

using namespace xops;

namespace {

Scalar q(long n, long d = 1) { return Scalar::of_fraction(n, d); }

std::mt19937_64 rng(0x5eed0003);
Scalar rnd_nonzero(long range = 9) {
  std::uniform_int_distribution<long> nd(1, range), dd(1, 4), sg(0, 1);
  long n = nd(rng);
  return Scalar::of_fraction(sg(rng) ? n : -n, dd(rng));
}

DiffOp unstable_x1_op() {
  return DiffOp::second_order(RatFun(Poly(q(1))), RatFun(Poly(q(-2)), Poly::x()), RatFun());
}

DiffOp stable_x1_op() {
  RatFun c1 = RatFun(Poly(q(-2))) + RatFun(Poly(q(-2)), Poly::x());
  RatFun c0 = RatFun(Poly(q(2)), Poly::x());
  return DiffOp::second_order(RatFun(Poly(q(1))), c1, c0);
}

// vectorize a second-order operator over a common denominator basis so
// operator spans can be compared by exact linear algebra
Vec op_vector(const DiffOp& t, int maxdeg) {
  Poly den(Scalar(1));
  Poly z = Poly::x();
  Poly zm1({q(-1), q(1)});
  den = z * zm1;
  Vec v;
  for (int k = 0; k <= 2; ++k) {
    RatFun c = t.coeff(k) * RatFun(den);
    Poly p = c.as_poly();
    for (int d = 0; d <= maxdeg; ++d) v.push_back(p.coeff(d));
  }
  return v;
}

bool same_span(const std::vector<DiffOp>& a, const std::vector<DiffOp>& b, int maxdeg = 8) {
  std::vector<Vec> va, vb;
  for (const auto& t : a) va.push_back(op_vector(t, maxdeg));
  for (const auto& t : b) vb.push_back(op_vector(t, maxdeg));
  for (const auto& v : vb)
    if (!in_span(va, v)) return false;
  for (const auto& v : va)
    if (!in_span(vb, v)) return false;
  return true;
}

}  // namespace

TEST_CASE("degree-regular bases match the displayed spans") {
  auto b = degree_regular_basis(FlagSpec::e1(q(5), q(0)), 3);
  CHECK(b[0] == Poly({q(1), q(5)}));
  CHECK(b[1] == Poly::monomial(2));
  CHECK(b[2] == Poly::monomial(3));

  auto s = degree_regular_basis(FlagSpec::standard(), 3);
  CHECK(s[2] == Poly::monomial(2));

  // one-pole flag: the displayed span {1 + a01 z + a03 z^3, z^2 + a23 z^3}
  // generates the same prefix subspaces as the degree-regular basis
  Scalar a01 = q(2), a03 = q(2), a23 = q(2);  // constraint holds via a01 = a23
  auto e2b = degree_regular_basis(FlagSpec::e2(a01, a03, a23), 2);
  Poly printed1 = Poly({q(1), a01}) + Poly::monomial(3, a03);
  Poly printed2 = Poly::monomial(2) + Poly::monomial(3, a23);
  CHECK(e2b[0].degree() == 2);
  CHECK(e2b[1].degree() == 3);
  std::vector<Vec> span_basis, span_printed;
  auto tovec = [](const Poly& p) {
    Vec v(5, Scalar(0));
    for (int k = 0; k <= p.degree(); ++k) v[k] = p.coeff(k);
    return v;
  };
  span_basis = {tovec(e2b[0]), tovec(e2b[1])};
  span_printed = {tovec(printed1), tovec(printed2)};
  CHECK(in_span(span_basis, span_printed[0]));
  CHECK(in_span(span_basis, span_printed[1]));
  CHECK(in_span(span_printed, span_basis[0]));
  CHECK(in_span(span_printed, span_basis[1]));

  // all basis elements satisfy the defining constraints
  for (auto& flag : {FlagSpec::e11(q(1), q(1)), FlagSpec::e11(q(0), q(0)),
                     FlagSpec::e11(q(-2), q(2)), FlagSpec::e2(q(1), q(0), q(5)),
                     FlagSpec::e2(a01, a03, a23)}) {
    auto basis = degree_regular_basis(flag, 7);
    for (int k = 0; k + 1 < 7; ++k) {
      CHECK(membership(flag, basis[k]));
      CHECK(basis[k].degree() < basis[k + 1].degree());
    }
  }
}

TEST_CASE("membership evaluates the defining constraints") {
  CHECK(membership(FlagSpec::e1(q(3)), Poly({q(1), q(3)})));
  CHECK_FALSE(membership(FlagSpec::e1(q(0)), Poly::x()));
  Scalar a01 = q(1), a03 = q(-2), a23 = q(7);
  CHECK(membership(FlagSpec::e2(a01, a03, a23), Poly::monomial(2) + Poly::monomial(3, a23)));
  CHECK_FALSE(membership(FlagSpec::e2(a01, a03, a23), Poly::x()));
}

TEST_CASE("invariance of the monomial flag under the unstable operator") {
  CHECK(invariance_check(unstable_x1_op(), FlagSpec::e1(q(0)), 6));
  CHECK(invariance_check(stable_x1_op(), FlagSpec::e1(q(1)), 6));
  CHECK_FALSE(invariance_check(stable_x1_op(), FlagSpec::e1(q(0)), 6));
  // y'' - 2y'/z + 2y/z^2 preserves z*P, not the monomial flag
  DiffOp imprim = DiffOp::second_order(RatFun(Poly(q(1))), RatFun(Poly(q(-2)), Poly::x()),
                                       RatFun(Poly(q(2)), Poly::monomial(2)));
  CHECK_FALSE(invariance_check(imprim, FlagSpec::e1(q(0)), 6));
  // classical operator preserves the standard flag
  auto h = classical_operator(ClassicalParams::hermite());
  CHECK(invariance_check(DiffOp::second_order(RatFun(h.p), RatFun(h.q), RatFun()),
                         FlagSpec::standard(), 8));
}

TEST_CASE("gauge conjugation moves invariance to the imprimitive flag") {
  // T = y'' preserves P; z T z^{-1} = y'' - 2y'/z + 2y/z^2 preserves z*P
  DiffOp ddz = DiffOp({RatFun(), RatFun(), RatFun(Poly(q(1)))});
  DiffOp conj = gauge_conjugate(ddz, RatFun(Poly::x()));
  DiffOp imprim = DiffOp::second_order(RatFun(Poly(q(1))), RatFun(Poly(q(-2)), Poly::x()),
                                       RatFun(Poly(q(2)), Poly::monomial(2)));
  CHECK(conj == imprim);
  // images of z * z^j stay in z*P to depth 8
  for (int j = 0; j < 8; ++j) {
    RatFun img = apply(conj, Poly::monomial(j + 1));
    CHECK(img.is_polynomial());
    if (!img.is_zero()) CHECK(img.as_poly().coeff(0).is_zero());
  }
}

TEST_CASE("e2 constraint factors") {
  auto r = e2_constraint(q(1), q(0), q(5));
  CHECK(r.satisfied);
  CHECK(r.via_2a);
  CHECK_FALSE(r.via_2b);
  auto r2 = e2_constraint(q(2), q(2), q(2));
  CHECK(r2.satisfied);
  CHECK(r2.via_2b);
  CHECK_FALSE(r2.via_2a);
  auto r3 = e2_constraint(q(1), q(1), q(2));
  CHECK_FALSE(r3.satisfied);
  CHECK(r3.value == q(-12));
}

TEST_CASE("classification by degree sequence") {
  auto c1 = classify_x2_flag(FlagSpec::e11(q(0), q(0)));
  CHECK(c1.cls == X2Class::E11_03);
  CHECK(c1.degrees.n1 == 0);
  CHECK(c1.degrees.n2 == 3);
  CHECK(c1.degrees.degree(4) == 5);
  CHECK(c1.degrees.codimension() == 2);
  auto c2 = classify_x2_flag(FlagSpec::e11(q(-2), q(2)));
  CHECK(c2.cls == X2Class::E11_12);
  auto c3 = classify_x2_flag(FlagSpec::e2(q(1), q(0), q(5)));
  CHECK(c3.cls == X2Class::E2a_13);
  auto c4 = classify_x2_flag(FlagSpec::e11(q(1), q(1, 2)));
  CHECK(c4.cls == X2Class::E11_13);
  auto c5 = classify_x2_flag(FlagSpec::e2(q(3), q(-2), q(1)));
  CHECK(c5.cls == X2Class::E2c_23);
  CHECK_THROWS(classify_x2_flag(FlagSpec::e2(q(1), q(1), q(2))));
  // degree sequences agree with the generated bases
  for (auto& flag :
       {FlagSpec::e11(q(3), q(1)), FlagSpec::e11(q(1), q(1, 2)), FlagSpec::e11(q(0), q(0)),
        FlagSpec::e11(q(-2), q(2)), FlagSpec::e2(q(1), q(0), q(5)),
        FlagSpec::e2(q(0), q(0), q(1)), FlagSpec::e2(q(1), q(0), q(0)),
        FlagSpec::e2(q(0), q(0), q(0)), FlagSpec::e2(q(2), q(2), q(2)),
        FlagSpec::e2(q(3), q(-2), q(1))}) {
    auto cls = classify_x2_flag(flag);
    auto basis = degree_regular_basis(flag, 6);
    for (int k = 1; k <= 6; ++k) CHECK(basis[k - 1].degree() == cls.degrees.degree(k));
  }
}

TEST_CASE("d2 dimensions across the moduli strata") {
  // generic two-pole flags: dimension 2, at 20 random moduli
  int generic_checked = 0;
  while (generic_checked < 20) {
    Scalar a0 = rnd_nonzero(), a1 = rnd_nonzero();
    if ((a0 * a1 + a1 - a0).is_zero()) continue;
    if (a0 == q(-2) && a1 == q(2)) continue;
    auto d2 = d2_space(FlagSpec::e11(a0, a1));
    CHECK(d2.dimension() == 2);
    ++generic_checked;
  }
  // degeneration loci
  for (int i = 0; i < 20; ++i) {
    Scalar a0 = rnd_nonzero();
    if (a0 == q(-1) || a0 == q(-2) || a0.is_zero()) continue;
    auto d2 = d2_space(FlagSpec::e11(a0, a0 / (a0 + q(1))));
    CHECK(d2.dimension() == 3);
  }
  CHECK(d2_space(FlagSpec::e11(q(0), q(0))).dimension() == 4);
  CHECK(d2_space(FlagSpec::e11(q(-2), q(2))).dimension() == 4);
  // one-pole strata
  for (int i = 0; i < 20; ++i) {
    Scalar a = rnd_nonzero();
    CHECK(d2_space(FlagSpec::e2(rnd_nonzero(), q(0), rnd_nonzero())).dimension() == 2);
    CHECK(d2_space(FlagSpec::e2(a, a, a)).dimension() == 2);
    Scalar a01 = rnd_nonzero(), a23 = rnd_nonzero();
    if (!(a01 - a23).is_zero())
      CHECK(d2_space(FlagSpec::e2(a01, -a01 * a23 * (a01 + a23) / q(6), a23)).dimension() == 2);
    CHECK(d2_space(FlagSpec::e2(q(0), q(0), rnd_nonzero())).dimension() == 3);
    CHECK(d2_space(FlagSpec::e2(rnd_nonzero(), q(0), q(0))).dimension() == 3);
  }
  CHECK(d2_space(FlagSpec::e2(q(0), q(0), q(0))).dimension() == 4);
  // violated constraint: identity only plus a diagnostic
  auto viol = d2_space(FlagSpec::e2(q(1), q(1), q(2)));
  CHECK(viol.dimension() == 1);
  CHECK(!viol.diagnostic.empty());
}

TEST_CASE("d2 operators preserve their flags and have normal-form poles") {
  std::vector<FlagSpec> flags = {
      FlagSpec::e11(q(1), q(1)),       FlagSpec::e11(q(1), q(1, 2)),
      FlagSpec::e11(q(0), q(0)),       FlagSpec::e11(q(-2), q(2)),
      FlagSpec::e2(q(1), q(0), q(5)),  FlagSpec::e2(q(0), q(0), q(1)),
      FlagSpec::e2(q(1), q(0), q(0)),  FlagSpec::e2(q(0), q(0), q(0)),
      FlagSpec::e2(q(2), q(2), q(2)),  FlagSpec::e2(q(3), q(-2), q(1))};
  for (const auto& flag : flags) {
    auto d2 = d2_space(flag);
    for (const auto& op : d2.ops) {
      CHECK(invariance_check(op, flag, 10));
      CHECK_NOTHROW(pole_profile(op));
    }
  }
}

TEST_CASE("nullspace route agrees with jet-generated invariance rows") {
  for (int i = 0; i < 6; ++i) {
    Scalar a0 = rnd_nonzero(), a1 = rnd_nonzero();
    std::vector<DiffOp> ansatz = {
        DiffOp({RatFun(), RatFun(), RatFun(Poly(q(1)))}),                 // y''
        DiffOp({RatFun(), RatFun(), RatFun(Poly::x())}),                  // z y''
        DiffOp({RatFun(), RatFun(Poly(q(1)))}),                           // y'
        DiffOp({RatFun(), RatFun(), RatFun(Poly::monomial(2))}),          // z^2 y''
        DiffOp({RatFun(), RatFun(Poly::x())}),                            // z y'
        DiffOp::first_order(RatFun(Poly(q(1)), Poly({q(-1), q(1)})), RatFun(a1)),  // (y'-a1y)/(z-1)
        DiffOp::first_order(RatFun(Poly(q(1)), Poly::x()), RatFun(a0)),   // (y'-a0y)/z
    };
    FlagSpec flag = FlagSpec::e11(a0, a1);
    Mat jets = invariance_rows(flag, ansatz, 7);
    auto ns_jets = nullspace(jets);
    auto ns_matrix = nullspace(e11_constraint_matrix(a0, a1));
    REQUIRE(ns_jets.size() == ns_matrix.size());
    for (const auto& v : ns_matrix) CHECK(in_span(ns_jets, v));
  }
}

TEST_CASE("d2 spaces match the displayed operator families") {
  // two-pole generic
  Scalar a0 = q(1), a1 = q(1);
  auto d2 = d2_space(FlagSpec::e11(a0, a1));
  std::vector<DiffOp> printed = {DiffOp::identity(), e11_23_operator(a0, a1, q(1), q(0))};
  CHECK(same_span(d2.ops, printed));
  // two-pole degenerate families
  auto d2b = d2_space(FlagSpec::e11(q(1), q(1, 2)));
  std::vector<DiffOp> printed13 = {DiffOp::identity(),
                                   e11_13_operator(q(1), q(1), q(0), q(0)),
                                   e11_13_operator(q(1), q(0), q(1), q(0))};
  CHECK(same_span(d2b.ops, printed13));
  auto d2c = d2_space(FlagSpec::e11(q(0), q(0)));
  std::vector<DiffOp> printed03 = {DiffOp::identity(),
                                   e11_03_operator(q(1), q(0), q(0), q(0)),
                                   e11_03_operator(q(0), q(1), q(0), q(0)),
                                   e11_03_operator(q(0), q(0), q(1), q(0))};
  CHECK(same_span(d2c.ops, printed03));
  auto d2d = d2_space(FlagSpec::e11(q(-2), q(2)));
  std::vector<DiffOp> printed12 = {DiffOp::identity(),
                                   e11_12_operator(q(1), q(0), q(0), q(0)),
                                   e11_12_operator(q(0), q(1), q(0), q(0)),
                                   e11_12_operator(q(0), q(0), q(1), q(0))};
  CHECK(same_span(d2d.ops, printed12));
  // one-pole families
  CHECK(same_span(d2_space(FlagSpec::e2(q(1), q(0), q(5))).ops,
                  {DiffOp::identity(), e2a13_operator(q(5), q(1), q(0))}));
  CHECK(same_span(d2_space(FlagSpec::e2(q(0), q(0), q(1))).ops,
                  {DiffOp::identity(), e2a03_operator(q(1), q(0), q(0)),
                   e2a03_operator(q(0), q(1), q(0))}));
  CHECK(same_span(d2_space(FlagSpec::e2(q(1), q(0), q(0))).ops,
                  {DiffOp::identity(), e2a12_operator(q(0), q(1), q(0)),
                   e2a12_operator(q(1), q(0), q(0))}));
  CHECK(same_span(d2_space(FlagSpec::e2(q(0), q(0), q(0))).ops,
                  {DiffOp::identity(), e2a02_operator(q(1), q(0), q(0), q(0)),
                   e2a02_operator(q(0), q(1), q(0), q(0)),
                   e2a02_operator(q(0), q(0), q(1), q(0))}));
  CHECK(same_span(d2_space(FlagSpec::e2(q(2), q(2), q(2))).ops,
                  {DiffOp::identity(), e2b23_operator(q(2), q(1), q(0))}));
  CHECK(same_span(d2_space(FlagSpec::e2(q(3), q(-2), q(1))).ops,
                  {DiffOp::identity(), e2c23_operator(q(3), q(1), q(0))}));
}

TEST_CASE("exceptionality requires poles and maximality") {
  CHECK(exceptionality_check(stable_x1_op(), FlagSpec::e1(q(1))));
  CHECK(exceptionality_check(unstable_x1_op(), FlagSpec::e1(q(0))));
  // Hermite operator on the flag spanned by H_1, H_2, ...: no poles
  auto h = classical_operator(ClassicalParams::hermite());
  DiffOp hop = DiffOp::second_order(RatFun(h.p), RatFun(h.q), RatFun());
  CHECK_FALSE(exceptionality_check(hop, FlagSpec::standard()));
  // two-pole operators on degenerate flags
  CHECK(exceptionality_check(e11_03_operator(q(1), q(1), q(-1), q(0)),
                             FlagSpec::e11(q(0), q(0))));
  // one-pole operators do not annihilate z^3 under T_{-2}
  CHECK(exceptionality_check(e2a13_operator(q(5), q(1), q(0)), FlagSpec::e2(q(1), q(0), q(5))));
}

TEST_CASE("deep invariance re-check of the operator spaces" * doctest::skip(false)) {
  // low-depth invariance plus the degree-homogeneous tail argument certify
  // all subspaces; re-verify exhaustively to depth 25 on a sample per class
  std::vector<FlagSpec> flags = {FlagSpec::e11(q(1), q(1)), FlagSpec::e11(q(0), q(0)),
                                 FlagSpec::e2(q(1), q(0), q(5)), FlagSpec::e2(q(2), q(2), q(2))};
  for (const auto& flag : flags) {
    auto d2 = d2_space(flag);
    for (const auto& op : d2.ops) CHECK(invariance_check(op, flag, 25));
  }
}
