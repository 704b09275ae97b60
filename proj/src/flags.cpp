#include "xops/flags.hpp"

#include <algorithm>

namespace xops {

FlagSpec FlagSpec::e11_at(const Scalar& a0, const Scalar& a1, const Scalar& b0,
                          const Scalar& b1) {
  if (b0 == b1) throw std::invalid_argument("two-pole flag needs distinct poles");
  // x = (b1 - b0) z + b0; slopes rescale with the chart
  Scalar s = b1 - b0;
  return FlagSpec{FlagVariant::E11, {a0 * s, a1 * s}, s, b0};
}

namespace {

Poly z_to_x(const Poly& p, const FlagSpec& flag) {
  if (flag.is_canonical()) return p;
  // z = (x - shift)/scale
  Scalar sinv = flag.scale.inverse();
  return p.compose_affine(sinv, -flag.shift * sinv);
}

Poly x_to_z(const Poly& p, const FlagSpec& flag) {
  if (flag.is_canonical()) return p;
  return p.compose_affine(flag.scale, flag.shift);
}

std::vector<Poly> canonical_basis(const FlagSpec& flag, int count) {
  std::vector<Poly> out;
  Poly z = Poly::x();
  Poly one(Scalar(1));
  auto tail_from = [&](const Poly& factor, int startdeg) {
    int j = 0;
    while (int(out.size()) < count) {
      out.push_back(factor * Poly::monomial(j));
      ++j;
    }
    (void)startdeg;
  };
  switch (flag.variant) {
    case FlagVariant::Standard: {
      for (int j = 0; j < count; ++j) out.push_back(Poly::monomial(j));
      return out;
    }
    case FlagVariant::E1: {
      const Scalar& a = flag.moduli[0];
      out.push_back(one + z * a);
      int j = 2;
      while (int(out.size()) < count) out.push_back(Poly::monomial(j++));
      return out;
    }
    case FlagVariant::E11: {
      const Scalar &a0 = flag.moduli[0], &a1 = flag.moduli[1];
      Scalar disc = a0 * a1 + a1 - a0;
      Poly zm1 = z - one;
      Poly second = zm1 * zm1 * (one + z * (a0 + Scalar(2)));
      if (a0 == Scalar(0) && a1 == Scalar(0)) {
        out.push_back(one);
        out.push_back(zm1 * zm1 * (one + z * Scalar(2)));
      } else if (a0 == Scalar(-2) && a1 == Scalar(2)) {
        out.push_back(z * Scalar(2) - one);
        out.push_back(z * z);
      } else if (disc.is_zero()) {
        out.push_back(one + z * a0);
        out.push_back(second);
      } else {
        out.push_back(z * z * disc + (z * a0 + one) * (Scalar(2) - a1));
        out.push_back(second);
      }
      tail_from(z * z * zm1 * zm1, 4);
      return out;
    }
    case FlagVariant::E2: {
      const Scalar &a01 = flag.moduli[0], &a03 = flag.moduli[1], &a23 = flag.moduli[2];
      Poly e1 = one + z * a01 + Poly::monomial(3, a03);
      Poly e2 = Poly::monomial(2) + Poly::monomial(3, a23);
      if (!a03.is_zero() && !a23.is_zero()) e1 = e1 - e2 * (a03 / a23);
      std::vector<Poly> firsts{e1, e2};
      std::sort(firsts.begin(), firsts.end(),
                [](const Poly& x, const Poly& y) { return x.degree() < y.degree(); });
      if (firsts[0].degree() == firsts[1].degree())
        throw std::invalid_argument("flag data does not give a degree-regular basis");
      out = firsts;
      int j = 4;
      while (int(out.size()) < count) out.push_back(Poly::monomial(j++));
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::vector<Poly> degree_regular_basis(const FlagSpec& flag, int count) {
  if (count < 1) throw std::invalid_argument("basis count must be positive");
  std::vector<Poly> basis = canonical_basis(flag, count);
  if (!flag.is_canonical())
    for (auto& p : basis) p = z_to_x(p, flag);
  return basis;
}

bool membership(const FlagSpec& flag, const Poly& y_in) {
  Poly y = x_to_z(y_in, flag);
  switch (flag.variant) {
    case FlagVariant::Standard: return true;
    case FlagVariant::E1:
      return y.derivative().eval(Scalar(0)) == flag.moduli[0] * y.eval(Scalar(0));
    case FlagVariant::E11: {
      Poly d = y.derivative();
      return d.eval(Scalar(0)) == flag.moduli[0] * y.eval(Scalar(0)) &&
             d.eval(Scalar(1)) == flag.moduli[1] * y.eval(Scalar(1));
    }
    case FlagVariant::E2: {
      Poly d1 = y.derivative();
      Poly d2 = d1.derivative();
      Poly d3 = d2.derivative();
      Scalar z0(0);
      return d1.eval(z0) == flag.moduli[0] * y.eval(z0) &&
             d3.eval(z0) == Scalar(3) * flag.moduli[2] * d2.eval(z0) +
                                Scalar(6) * flag.moduli[1] * y.eval(z0);
    }
  }
  throw std::logic_error("unreachable");
}

bool invariance_check(const DiffOp& t, const FlagSpec& flag, int depth) {
  if (depth < 2) throw std::invalid_argument("invariance depth must be at least 2");
  std::vector<Poly> basis = degree_regular_basis(flag, depth);
  std::vector<Vec> span;
  int dim = 0;
  for (const auto& b : basis) dim = std::max(dim, b.degree() + 1);
  // images may exceed the ambient degree by nothing: the candidate operators
  // never raise degree, but guard anyway
  auto to_vec = [&](const Poly& p, int n) {
    Vec v(n, Scalar(0));
    for (int k = 0; k <= p.degree(); ++k) v[k] = p.coeff(k);
    return v;
  };
  int ambient = dim + t.order() + 1;
  for (int k = 0; k < depth; ++k) {
    RatFun img = apply(t, basis[k]);
    if (!img.is_polynomial()) return false;
    Poly imgp = img.as_poly();
    if (imgp.degree() + 1 > ambient) return false;
    span.push_back(to_vec(basis[k], ambient));
    if (!in_span(span, to_vec(imgp, ambient))) return false;
  }
  return true;
}

std::string to_string(X2Class c) {
  switch (c) {
    case X2Class::E11_23: return "E11_23";
    case X2Class::E11_13: return "E11_13";
    case X2Class::E11_03: return "E11_03";
    case X2Class::E11_12: return "E11_12";
    case X2Class::E2a_13: return "E2a_13";
    case X2Class::E2a_03: return "E2a_03";
    case X2Class::E2a_12: return "E2a_12";
    case X2Class::E2a_02: return "E2a_02";
    case X2Class::E2b_23: return "E2b_23";
    case X2Class::E2c_23: return "E2c_23";
  }
  throw std::logic_error("unreachable");
}

E2ConstraintResult e2_constraint(const Scalar& a01, const Scalar& a03, const Scalar& a23) {
  E2ConstraintResult r;
  Scalar f1 = a03;
  Scalar f2 = a01 - a23;
  Scalar f3 = Scalar(6) * a03 + a01 * a23 * (a01 + a23);
  r.value = f1 * f2 * f3;
  r.via_2a = f1.is_zero();
  r.via_2b = f2.is_zero();
  r.via_2c = f3.is_zero();
  r.satisfied = r.via_2a || r.via_2b || r.via_2c;
  return r;
}

Classification classify_x2_flag(const FlagSpec& flag) {
  if (flag.variant == FlagVariant::E11) {
    const Scalar &a0 = flag.moduli[0], &a1 = flag.moduli[1];
    if (a0.is_zero() && a1.is_zero()) return {X2Class::E11_03, {0, 3}};
    if (a0 == Scalar(-2) && a1 == Scalar(2)) return {X2Class::E11_12, {1, 2}};
    if ((a0 * a1 + a1 - a0).is_zero()) return {X2Class::E11_13, {1, 3}};
    return {X2Class::E11_23, {2, 3}};
  }
  if (flag.variant == FlagVariant::E2) {
    const Scalar &a01 = flag.moduli[0], &a03 = flag.moduli[1], &a23 = flag.moduli[2];
    E2ConstraintResult c = e2_constraint(a01, a03, a23);
    if (!c.satisfied)
      throw std::invalid_argument("one-pole flag moduli violate the existence constraint");
    if (c.via_2a) {
      bool z01 = a01.is_zero(), z23 = a23.is_zero();
      if (!z01 && !z23) return {X2Class::E2a_13, {1, 3}};
      if (z01 && !z23) return {X2Class::E2a_03, {0, 3}};
      if (!z01 && z23) return {X2Class::E2a_12, {1, 2}};
      return {X2Class::E2a_02, {0, 2}};
    }
    if (c.via_2b) return {X2Class::E2b_23, {2, 3}};
    return {X2Class::E2c_23, {2, 3}};
  }
  throw std::invalid_argument("classification applies to two-pole and one-pole flags");
}

Mat e11_constraint_matrix(const Scalar& a0, const Scalar& a1) {
  Scalar h = Scalar(1) / Scalar(2);
  Scalar th = Scalar(3) / Scalar(2);
  // unknowns [p_-2, p_-1, q_-1, p_0, q_0, c_1, c_0]
  Mat m;
  m.push_back({Scalar(1), Scalar(0), Scalar(0), Scalar(0), Scalar(0), Scalar(0), h});
  m.push_back({-a0, Scalar(1), Scalar(1), Scalar(0), Scalar(0), Scalar(-1), -th * a0});
  m.push_back({Scalar(0), Scalar(0), -a0 * a0, Scalar(0), a0, a0 * a0 - a0 + a1,
               a0 * a0 * a0});
  m.push_back({Scalar(1), Scalar(1), Scalar(0), Scalar(1), Scalar(0), h, Scalar(0)});
  m.push_back({-a1, Scalar(1) - a1, Scalar(1), Scalar(2) - a1, Scalar(1), -th * a1,
               Scalar(1)});
  m.push_back({Scalar(0), Scalar(0), -a1 * a1, Scalar(0), -(a1 - Scalar(1)) * a1,
               a1 * a1 * a1, a0 - a1 * (a1 + Scalar(1))});
  return m;
}

OnePoleSystem e2_one_pole_system(const Scalar& a01, const Scalar& a03, const Scalar& a23) {
  OnePoleSystem s;
  s.p_m1 = Scalar(2) * (a01 - a23);
  s.q_m1 = Scalar(-7) * a01 + Scalar(5) * a23;
  // M (p0, q0, 1)^t = 0; first row carries a01^2 a23 (the squared factor is
  // required for consistency with the displayed operators)
  s.m = {{Scalar(0), a01,
          Scalar(3) * a01 * a01 * a01 - Scalar(6) * a03 - Scalar(5) * a01 * a01 * a23},
         {Scalar(2) * a03, a03, a03 * (a01 - a23) * (a01 + a23)},
         {Scalar(4) * a23, a23,
          Scalar(6) * a03 + Scalar(5) * a01 * a23 * a23 - Scalar(3) * a23 * a23 * a23}};
  return s;
}

namespace {

RatFun inv_z() { return RatFun(Poly(Scalar(1)), Poly::x()); }
RatFun inv_zm1() { return RatFun(Poly(Scalar(1)), Poly({Scalar(-1), Scalar(1)})); }

DiffOp two_pole_ansatz_op(const Vec& v, const Scalar& a0, const Scalar& a1) {
  // v = [p_-2, p_-1, q_-1, p_0, q_0, c_1, c_0]
  RatFun c2 = RatFun(Poly({v[0], v[1], v[3]}));
  RatFun c1 = RatFun(Poly({v[2], v[4]})) + inv_z() * v[6] + inv_zm1() * v[5];
  RatFun c0 = inv_z() * (-v[6] * a0) + inv_zm1() * (-v[5] * a1);
  return DiffOp::second_order(c2, c1, c0);
}

}  // namespace

OnePoleSolutions solve_one_pole(const Scalar& a01, const Scalar& a03, const Scalar& a23) {
  OnePoleSystem s = e2_one_pole_system(a01, a03, a23);
  Mat a(3, Vec(2));
  Vec b(3);
  for (int i = 0; i < 3; ++i) {
    a[i][0] = s.m[i][0];
    a[i][1] = s.m[i][1];
    b[i] = -s.m[i][2];
  }
  OnePoleSolutions out;
  auto sol = solve_affine(a, b);
  if (sol) {
    const Scalar &p0 = sol->particular[0], &q0 = sol->particular[1];
    RatFun c2 = RatFun(Poly({Scalar(1), s.p_m1, p0}));
    RatFun c1 = RatFun(Poly({s.q_m1, q0})) + inv_z() * Scalar(-4);
    RatFun c0 = inv_z() * (Scalar(4) * a01);
    out.pole_op = DiffOp::second_order(c2, c1, c0);
    for (const auto& h : sol->homogeneous)
      out.homogeneous.push_back(DiffOp::second_order(RatFun(Poly::monomial(2, h[0])),
                                                     RatFun(Poly({Scalar(0), h[1]})),
                                                     RatFun()));
  }
  return out;
}

D2Basis d2_space(const FlagSpec& flag) {
  D2Basis out;
  out.ops.push_back(DiffOp::identity());
  if (flag.variant == FlagVariant::E1) {
    const Scalar& a0 = flag.moduli[0];
    // one-pole rows of the two-pole constraint matrix, c_1 column removed
    Mat m = {{Scalar(1), Scalar(0), Scalar(0), Scalar(0), Scalar(0), Scalar(1) / Scalar(2)},
             {-a0, Scalar(1), Scalar(1), Scalar(0), Scalar(0),
              Scalar(-3) / Scalar(2) * a0},
             {Scalar(0), Scalar(0), -a0 * a0, Scalar(0), a0, a0 * a0 * a0}};
    for (const auto& v : nullspace(m)) {
      Vec w = {v[0], v[1], v[2], v[3], v[4], Scalar(0), v[5]};
      out.ops.push_back(two_pole_ansatz_op(w, a0, Scalar(0)));
    }
  } else if (flag.variant == FlagVariant::E11) {
    const Scalar &a0 = flag.moduli[0], &a1 = flag.moduli[1];
    for (const auto& v : nullspace(e11_constraint_matrix(a0, a1)))
      out.ops.push_back(two_pole_ansatz_op(v, a0, a1));
  } else if (flag.variant == FlagVariant::E2) {
    auto c = e2_constraint(flag.moduli[0], flag.moduli[1], flag.moduli[2]);
    if (!c.satisfied) {
      out.diagnostic = "existence constraint violated; no non-trivial operator";
      return out;
    }
    OnePoleSolutions sols = solve_one_pole(flag.moduli[0], flag.moduli[1], flag.moduli[2]);
    if (!sols.pole_op) {
      out.diagnostic = "pole system inconsistent";
      return out;
    }
    out.ops.push_back(*sols.pole_op);
    for (const auto& h : sols.homogeneous) out.ops.push_back(h);
  } else {
    throw std::invalid_argument("d2_space applies to one- and two-pole flags");
  }
  if (!flag.is_canonical()) {
    Scalar sinv = flag.scale.inverse();
    for (auto& op : out.ops) op = op.change_variable_affine(sinv, -flag.shift * sinv);
  }
  return out;
}

bool exceptionality_check(const DiffOp& t, const FlagSpec& flag) {
  int poles = distinct_pole_count(t);
  if (poles == 0) return false;  // preserves the standard flag too
  if (flag.variant == FlagVariant::Standard) return false;
  // codimension-1 flag: a pole already rules out the standard flag, and
  // there is no smaller positive codimension to fall back to
  if (flag.variant == FlagVariant::E1) return true;
  if (poles >= 2) return true;
  auto b = single_rational_pole(t);
  if (!b) return true;  // irreducible quadratic denominator: two complex poles
  auto blocks = laurent_decompose(t, *b, 1);
  if (blocks.empty() || blocks.front().shift != -2) return false;
  const LaurentBlock& t2 = blocks.front();
  // action on z^3: p j(j-1) + q j + r with j = 3
  Scalar val = t2.p * Scalar(6) + t2.q * Scalar(3) + t2.r;
  return !val.is_zero();
}

Mat invariance_rows(const FlagSpec& flag, const std::vector<DiffOp>& ansatz, int depth) {
  std::vector<Poly> basis = degree_regular_basis(flag, depth);
  Mat rows;
  auto deriv_at = [](const RatFun& f, const Scalar& x, int order) {
    RatFun d = f;
    for (int i = 0; i < order; ++i) d = d.derivative();
    return d.eval(x);
  };
  for (const auto& y : basis) {
    std::vector<RatFun> images;
    for (const auto& op : ansatz) images.push_back(apply(op, y));
    if (flag.variant == FlagVariant::E1 || flag.variant == FlagVariant::E11) {
      int npoles = flag.variant == FlagVariant::E1 ? 1 : 2;
      for (int i = 0; i < npoles; ++i) {
        Scalar b = flag.shift + flag.scale * Scalar(i);
        Scalar slope = flag.moduli[i] / flag.scale;
        Vec row;
        for (const auto& img : images)
          row.push_back(deriv_at(img, b, 1) - slope * img.eval(b));
        rows.push_back(std::move(row));
      }
    } else if (flag.variant == FlagVariant::E2) {
      if (!flag.is_canonical())
        throw std::invalid_argument("invariance rows for one-pole flags are canonical-only");
      Scalar z0(0);
      Vec r1, r3;
      for (const auto& img : images) {
        r1.push_back(deriv_at(img, z0, 1) - flag.moduli[0] * img.eval(z0));
        r3.push_back(deriv_at(img, z0, 3) - Scalar(3) * flag.moduli[2] * deriv_at(img, z0, 2) -
                     Scalar(6) * flag.moduli[1] * img.eval(z0));
      }
      rows.push_back(std::move(r1));
      rows.push_back(std::move(r3));
    } else {
      throw std::invalid_argument("invariance rows need a constrained flag");
    }
  }
  return rows;
}

DiffOp gauge_conjugate(const DiffOp& t, const RatFun& mu) {
  DiffOp mul({mu});
  DiffOp div({RatFun(Scalar(1)) / mu});
  return compose(mul, compose(t, div));
}

namespace {

Poly lin(const Scalar& c0, const Scalar& c1) { return Poly({c0, c1}); }

}  // namespace

DiffOp e11_23_operator(const Scalar& a0, const Scalar& a1, const Scalar& c,
                       const Scalar& lambda) {
  Scalar h = Scalar(1) / Scalar(2);
  Poly p({-a1 * a1 * h + a1, -(a0 * a1 - a0 - a1 * a1 + Scalar(3) * a1),
          -h * (a0 - a1) * (a0 - a1 + Scalar(4))});
  Poly q({(a0 - Scalar(1)) * a1 * a1 - (a0 - Scalar(3)) * a1 + a0 * (a0 + Scalar(1)),
          (a0 - a1) * (a0 * a1 - Scalar(2) * a0 + Scalar(2)) + Scalar(2) * a0 * a0});
  Scalar k1 = a0 * (a0 + Scalar(2));  // coefficient on (y'-a1 y)/(z-1)
  Scalar k0 = (a1 - Scalar(2)) * a1;  // coefficient on (y'-a0 y)/z
  RatFun c2 = RatFun(p) * c;
  RatFun c1 = RatFun(q) * c + inv_zm1() * (c * k1) + inv_z() * (c * k0);
  RatFun c0 = inv_zm1() * (-c * k1 * a1) + inv_z() * (-c * k0 * a0) + RatFun(lambda);
  return DiffOp::second_order(c2, c1, c0);
}

DiffOp e11_13_operator(const Scalar& a0, const Scalar& c0, const Scalar& c1,
                       const Scalar& lambda) {
  Scalar a1 = a0 / (a0 + Scalar(1));
  Scalar h = Scalar(1) / Scalar(2);
  Poly p({-c0 * h, c0, -(c0 + c1) * h});
  Poly q({(a0 - Scalar(1)) * c0 + c1, a1 * c1 - a0 * c0});
  RatFun cc2(p);
  RatFun cc1 = RatFun(q) + inv_z() * c0 + inv_zm1() * c1;
  RatFun cc0 = inv_z() * (-c0 * a0) + inv_zm1() * (-c1 * a1) + RatFun(lambda);
  return DiffOp::second_order(cc2, cc1, cc0);
}

DiffOp e11_03_operator(const Scalar& q0, const Scalar& c0, const Scalar& c1,
                       const Scalar& lambda) {
  Scalar h = Scalar(1) / Scalar(2);
  Poly p({-c0 * h, q0 * h + c0, -(q0 + c0 + c1) * h});
  Poly q({-q0 * h - c0 + c1, q0});
  RatFun cc1 = RatFun(q) + inv_z() * c0 + inv_zm1() * c1;
  return DiffOp::second_order(RatFun(p), cc1, RatFun(lambda));
}

DiffOp e11_12_operator(const Scalar& q0, const Scalar& c0, const Scalar& c1,
                       const Scalar& lambda) {
  Scalar h = Scalar(1) / Scalar(2);
  Poly p({-c0 * h, q0 * h - c1, (c0 + c1 - q0) * h});
  Poly q({-q0 * h - Scalar(2) * c0 + Scalar(2) * c1, q0});
  RatFun cc1 = RatFun(q) + inv_z() * c0 + inv_zm1() * c1;
  RatFun cc0 = inv_z() * (Scalar(2) * c0) + inv_zm1() * (Scalar(-2) * c1) + RatFun(lambda);
  return DiffOp::second_order(RatFun(p), cc1, cc0);
}

DiffOp e2a13_operator(const Scalar& a, const Scalar& c, const Scalar& lambda) {
  Scalar q = Scalar(1) / Scalar(4);
  Poly p({Scalar(1), Scalar(2) * (Scalar(1) - a),
          (Scalar(1) - Scalar(3) * a) * (Scalar(3) - a) * q});
  // the y' coefficient is (5a-7) + (5a-3) z; forced by the constraint system
  Poly qq({Scalar(5) * a - Scalar(7), Scalar(5) * a - Scalar(3)});
  RatFun cc1 = RatFun(qq) * c + inv_z() * (Scalar(-4) * c);
  RatFun cc0 = inv_z() * (Scalar(4) * c) + RatFun(lambda);
  return DiffOp::second_order(RatFun(p) * c, cc1, cc0);
}

DiffOp e2a03_operator(const Scalar& c, const Scalar& q0, const Scalar& lambda) {
  Scalar q = Scalar(1) / Scalar(4);
  Poly p({c, Scalar(-2) * c, (Scalar(3) * c - q0) * q});
  Poly qq({Scalar(5) * c, q0});
  RatFun cc1 = RatFun(qq) + inv_z() * (Scalar(-4) * c);
  return DiffOp::second_order(RatFun(p), cc1, RatFun(lambda));
}

DiffOp e2a12_operator(const Scalar& p0, const Scalar& c, const Scalar& lambda) {
  Poly p({c, Scalar(2) * c, p0});
  Poly qq({Scalar(-7) * c, Scalar(-3) * c});
  RatFun cc1 = RatFun(qq) + inv_z() * (Scalar(-4) * c);
  RatFun cc0 = inv_z() * (Scalar(4) * c) + RatFun(lambda);
  return DiffOp::second_order(RatFun(p), cc1, cc0);
}

DiffOp e2a02_operator(const Scalar& p0, const Scalar& q0, const Scalar& c,
                      const Scalar& lambda) {
  Poly p({c, Scalar(0), p0});
  RatFun cc1 = RatFun(Poly({Scalar(0), q0})) + inv_z() * (Scalar(-4) * c);
  return DiffOp::second_order(RatFun(p), cc1, RatFun(lambda));
}

DiffOp e2b23_operator(const Scalar& a, const Scalar& c, const Scalar& lambda) {
  Scalar k = a * a + Scalar(3);
  Poly p({c, Scalar(0), -c * k});
  Poly qq({Scalar(-2) * a * c, Scalar(2) * k * c});
  RatFun cc1 = RatFun(qq) + inv_z() * (Scalar(-4) * c);
  RatFun cc0 = inv_z() * (Scalar(4) * c * a) + RatFun(lambda);
  return DiffOp::second_order(RatFun(p), cc1, cc0);
}

DiffOp e2c23_operator(const Scalar& a, const Scalar& c, const Scalar& lambda) {
  Poly base = lin(Scalar(1), a - Scalar(1));
  Poly p = base * base * c;
  Poly qq({(Scalar(5) - Scalar(7) * a) * c, (a - Scalar(1)) * (Scalar(1) - Scalar(3) * a) * c});
  RatFun cc1 = RatFun(qq) + inv_z() * (Scalar(-4) * c);
  RatFun cc0 = inv_z() * (Scalar(4) * c * a) + RatFun(lambda);
  return DiffOp::second_order(RatFun(p), cc1, cc0);
}

}  // namespace xops
