#include "xops/families.hpp"

#include <algorithm>

namespace xops {

namespace {

Scalar qs(long n, long d = 1) { return Scalar::of_fraction(n, d); }

const Scalar& par(const ParamMap& pm, const std::string& name) {
  auto it = pm.find(name);
  if (it == pm.end()) throw inadmissible_error("missing parameter '" + name + "'");
  return it->second;
}

Poly lin(const Scalar& c0, const Scalar& c1) { return Poly({c0, c1}); }
Poly omx() { return Poly({Scalar(1), Scalar(-1)}); }
Poly opx() { return Poly({Scalar(1), Scalar(1)}); }

DiffOp as_diffop(const ClassicalOperator& c) {
  return DiffOp::second_order(RatFun(c.p), RatFun(c.q), RatFun());
}

RatFun logder(const Poly& p) { return RatFun(p.derivative(), p); }

// realize mu * W[f_1..f_k, y] as a differential operator; every coefficient
// must come out rational
DiffOp wronskian_intertwiner(const QuasiRational& mu, const std::vector<QuasiRational>& fs) {
  auto coeffs = wronskian_operator_coeffs(fs);
  QuasiRational pre = mu;
  for (const auto& f : fs) pre = pre * f;
  RatFun scale = pre.as_ratfun();
  std::vector<RatFun> c;
  c.reserve(coeffs.size());
  for (const auto& ck : coeffs) c.push_back(scale * ck);
  return DiffOp(std::move(c));
}

// determine a second-order operator from its action on three polynomials
// (Cramer over the rational-function field)
DiffOp solve_intertwiner_from_relations(const std::vector<std::pair<Poly, RatFun>>& eqs) {
  if (eqs.size() != 3) throw std::invalid_argument("need exactly three relations");
  std::vector<std::vector<RatFun>> m;
  std::vector<RatFun> rhs;
  for (const auto& [y, g] : eqs) {
    m.push_back({RatFun(y.derivative().derivative()), RatFun(y.derivative()), RatFun(y)});
    rhs.push_back(g);
  }
  // gaussian elimination over the field of rational functions
  for (int c = 0; c < 3; ++c) {
    int pr = c;
    while (pr < 3 && m[pr][c].is_zero()) ++pr;
    if (pr == 3) throw std::logic_error("relations do not determine the operator");
    std::swap(m[pr], m[c]);
    std::swap(rhs[pr], rhs[c]);
    RatFun inv = RatFun(Poly(Scalar(1))) / m[c][c];
    for (int j = c; j < 3; ++j) m[c][j] = m[c][j] * inv;
    rhs[c] = rhs[c] * inv;
    for (int i = 0; i < 3; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      RatFun f = m[i][c];
      for (int j = c; j < 3; ++j) m[i][j] = m[i][j] - f * m[c][j];
      rhs[i] = rhs[i] - f * rhs[c];
    }
  }
  return DiffOp({rhs[2], rhs[1], rhs[0]});
}

QuasiRational qe(const ClassicalParams& cp, int kind, int n) {
  return quasi_eigenfunction(cp, kind, n).fn;
}

QuasiRational power_of(const Poly& base, const Scalar& expo) {
  return QuasiRational::power(base, expo.as_rational());
}

// canonical weights: classical part times the inverse square (or fourth
// power) of the monic weight denominator
QuasiRational laguerre_weight(const Scalar& alpha) {
  return QuasiRational::exp_of(lin(Scalar(0), Scalar(-1))) * power_of(Poly::x(), alpha);
}
QuasiRational jacobi_weight(const Scalar& alpha, const Scalar& beta) {
  return power_of(omx(), alpha) * power_of(opx(), beta);
}
QuasiRational hermite_weight() {
  return QuasiRational::exp_of(Poly({Scalar(0), Scalar(0), Scalar(-1)}));
}
QuasiRational over_xi(const QuasiRational& w, const Poly& xi, int power) {
  Poly d(Scalar(1));
  for (int i = 0; i < power; ++i) d = d * xi;
  return w * QuasiRational(RatFun(Poly(Scalar(1)), d));
}

std::function<bool(int)> index_from(int lo) {
  return [lo](int n) { return n >= lo; };
}
std::function<bool(int)> index_with_special(int special, int lo) {
  return [special, lo](int n) { return n == special || n >= lo; };
}

ParamMap sample(std::initializer_list<std::pair<std::string, Scalar>> kv) {
  ParamMap m;
  for (auto& [k, v] : kv) m.emplace(k, v);
  return m;
}

// printed weight denominators
Poly xi_laguerre_I(const Scalar& a) {
  // L_2^{(a-1)}(-x) = (x^2 + 2(a+1)x + a(a+1))/2
  return Poly({a * (a + Scalar(1)) / Scalar(2), a + Scalar(1), qs(1, 2)});
}
Poly xi_laguerre_II(const Scalar& a) {
  // L_2^{(-a-1)}(x) = (x^2 + 2(a-1)x + a^2-a)/2
  return Poly({(a * a - a) / Scalar(2), a - Scalar(1), qs(1, 2)});
}
Poly xi_laguerre_e11_13(const Scalar& a) {
  return Poly({Scalar(1) - a * a, Scalar(0), Scalar(1)});
}
Poly xi_laguerre_e11_03(const Scalar& a) {
  // L_2^{(-a-1)}(-x) = (x^2 + 2(1-a)x + a^2-a)/2
  return Poly({(a * a - a) / Scalar(2), Scalar(1) - a, qs(1, 2)});
}
Poly xi_jacobi_e11_23(const Scalar& a, const Scalar& b) {
  return classical_poly(ClassicalParams::jacobi(-a - Scalar(1), b - Scalar(1)), 2);
}
Poly xi_jacobi_e11_13(const Scalar& a, const Scalar& b) {
  Scalar a2 = a * a, b2 = b * b;
  return Poly({a2 - b2, Scalar(2) * (a2 + b2 - Scalar(2)), a2 - b2});
}
Poly xi_jacobi_e11_03(const Scalar& a, const Scalar& b) {
  return classical_poly(ClassicalParams::jacobi(-a - Scalar(1), -b - Scalar(1)), 2);
}

Scalar e2a13_jacobi_alpha(const Scalar& a) { return Scalar(2) + Scalar(6) / (a - Scalar(3)); }
Scalar e2a13_jacobi_beta(const Scalar& a) { return Scalar(2) / (Scalar(3) * a - Scalar(1)); }
Scalar e2a03_jacobi_z2(const Scalar& z1) { return z1 / (Scalar(2) * z1 - Scalar(1)); }

// B_0, the alpha -> 0 limit of the two-pole {1,3} Laguerre raising operator
DiffOp laguerre_e11_13_b0() {
  Poly c2 = -(Poly::x() * Poly({Scalar(1), Scalar(0), Scalar(1)}));
  Poly c1({qs(-1), qs(2), qs(1), qs(2)});
  Poly c0 = -Poly({qs(-2), qs(2), qs(1), qs(1)});
  return DiffOp({RatFun(c0), RatFun(c1), RatFun(c2)});
}

std::vector<FamilySpec> make_registry() {
  std::vector<FamilySpec> fams;

  auto always = [](const ParamMap&) { return std::make_pair(true, std::string()); };
  auto no_xi = [](const ParamMap&) { return Poly(Scalar(1)); };

  // ---- classical families -------------------------------------------------
  {
    FamilySpec f;
    f.id = "hermite";
    f.description = "classical Hermite system";
    f.base = Family::Hermite;
    f.flag_label = "classical";
    f.interval = Interval::real_line();
    f.region = always;
    f.op = [](const ParamMap&) { return as_diffop(classical_operator(ClassicalParams::hermite())); };
    f.xi = no_xi;
    f.eigenvalue = [](const ParamMap&, int n) { return Scalar(-2 * n); };
    f.in_index_set = index_from(0);
    f.default_samples = {ParamMap{}};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "laguerre";
    f.description = "classical Laguerre system";
    f.base = Family::Laguerre;
    f.flag_label = "classical";
    f.param_names = {"alpha"};
    f.interval = Interval::positive_halfline();
    f.region = [](const ParamMap& pm) {
      bool ok = par(pm, "alpha") > Scalar(-1);
      return std::make_pair(ok, ok ? std::string() : "requires alpha > -1");
    };
    f.op = [](const ParamMap& pm) {
      return as_diffop(classical_operator(ClassicalParams::laguerre(par(pm, "alpha"))));
    };
    f.xi = no_xi;
    f.eigenvalue = [](const ParamMap&, int n) { return Scalar(-n); };
    f.in_index_set = index_from(0);
    f.default_samples = {sample({{"alpha", qs(0)}}), sample({{"alpha", qs(1, 2)}}),
                         sample({{"alpha", qs(2)}})};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "jacobi";
    f.description = "classical Jacobi system";
    f.base = Family::Jacobi;
    f.flag_label = "classical";
    f.param_names = {"alpha", "beta"};
    f.interval = Interval::finite(Scalar(-1), Scalar(1));
    f.region = [](const ParamMap& pm) {
      bool ok = par(pm, "alpha") > Scalar(-1) && par(pm, "beta") > Scalar(-1);
      return std::make_pair(ok, ok ? std::string() : "requires alpha, beta > -1");
    };
    f.op = [](const ParamMap& pm) {
      return as_diffop(classical_operator(
          ClassicalParams::jacobi(par(pm, "alpha"), par(pm, "beta"))));
    };
    f.xi = no_xi;
    f.eigenvalue = [](const ParamMap& pm, int n) {
      return classical_eigenvalue(ClassicalParams::jacobi(par(pm, "alpha"), par(pm, "beta")), n);
    };
    f.in_index_set = index_from(0);
    f.default_samples = {sample({{"alpha", qs(0)}, {"beta", qs(0)}}),
                         sample({{"alpha", qs(1, 2)}, {"beta", qs(-1, 2)}}),
                         sample({{"alpha", qs(2)}, {"beta", qs(3)}})};
    fams.push_back(std::move(f));
  }

  // ---- codimension-1 families ---------------------------------------------
  {
    FamilySpec f;
    f.id = "laguerre-x1";
    f.description = "codimension-1 Laguerre system, weight e^-x x^a / (x+a)^2";
    f.base = Family::Laguerre;
    f.codimension = 1;
    f.flag_label = "E1";
    f.steps = 1;
    f.param_names = {"alpha"};
    f.interval = Interval::positive_halfline();
    f.skipped_degrees = {0};
    f.min_index = 1;
    f.region = [](const ParamMap& pm) {
      bool ok = par(pm, "alpha") > Scalar(0);
      return std::make_pair(ok, ok ? std::string() : "requires alpha > 0");
    };
    f.xi = [](const ParamMap& pm) { return lin(par(pm, "alpha"), Scalar(1)); };
    f.xi_power = 2;
    f.chain_classical = [](const ParamMap& pm) {
      return ClassicalParams::laguerre(par(pm, "alpha") - Scalar(1));
    };
    f.chain_phis = {{3, 1}};
    f.eigenvalue = [](const ParamMap&, int n) { return Scalar(-n); };
    f.in_index_set = index_from(1);
    f.b_shift = 1;
    f.b_source = f.chain_classical;
    f.default_samples = {sample({{"alpha", qs(1)}}), sample({{"alpha", qs(1, 2)}}),
                         sample({{"alpha", qs(3)}}), sample({{"alpha", qs(1, 10)}})};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "jacobi-x1";
    f.description = "codimension-1 Jacobi system, weight (1-x)^a (1+x)^b / xi^2";
    f.base = Family::Jacobi;
    f.codimension = 1;
    f.flag_label = "E1";
    f.steps = 1;
    f.param_names = {"alpha", "beta"};
    f.interval = Interval::finite(Scalar(-1), Scalar(1));
    f.skipped_degrees = {0};
    f.min_index = 1;
    f.region = [](const ParamMap& pm) {
      const Scalar &a = par(pm, "alpha"), &b = par(pm, "beta");
      bool ok = a > Scalar(-1) && b > Scalar(-1) && (a * b) > Scalar(0) && a != b;
      return std::make_pair(ok,
                            ok ? std::string() : "requires alpha, beta > -1, alpha*beta > 0, alpha != beta");
    };
    f.xi = [](const ParamMap& pm) {
      const Scalar &a = par(pm, "alpha"), &b = par(pm, "beta");
      // P_1^{(a-1,-b-1)} = ((a-b) x + a+b)/2
      return lin((a + b) / Scalar(2), (a - b) / Scalar(2));
    };
    f.xi_power = 2;
    f.chain_classical = [](const ParamMap& pm) {
      return ClassicalParams::jacobi(par(pm, "alpha") - Scalar(1), par(pm, "beta") + Scalar(1));
    };
    f.chain_phis = {{2, 1}};
    f.eigenvalue = [](const ParamMap& pm, int n) {
      Scalar s = par(pm, "alpha") + par(pm, "beta");
      return -Scalar(n - 1) * (Scalar(n) + s);
    };
    f.in_index_set = index_from(1);
    f.b_shift = 1;
    f.b_source = f.chain_classical;
    f.default_samples = {sample({{"alpha", qs(1)}, {"beta", qs(2)}}),
                         sample({{"alpha", qs(1, 2)}, {"beta", qs(3, 2)}}),
                         sample({{"alpha", qs(-1, 2)}, {"beta", qs(-1, 4)}}),
                         sample({{"alpha", qs(2)}, {"beta", qs(1, 2)}})};
    fams.push_back(std::move(f));
  }

  // ---- codimension-2 Hermite ----------------------------------------------
  {
    FamilySpec f;
    f.id = "hermite-x2";
    f.description = "codimension-2 Hermite system on the {0,3} two-pole flag";
    f.base = Family::Hermite;
    f.codimension = 2;
    f.flag_label = "E11_03";
    f.steps = 1;
    f.interval = Interval::real_line();
    f.skipped_degrees = {1, 2};
    f.min_index = 0;
    f.region = always;
    f.xi = [](const ParamMap&) { return Poly({Scalar(1), Scalar(0), Scalar(2)}); };
    f.xi_power = 2;
    f.op = [](const ParamMap&) {
      Poly xi({Scalar(1), Scalar(0), Scalar(2)});
      RatFun c1 = RatFun(lin(Scalar(0), Scalar(-2))) - RatFun(Scalar(2)) * logder(xi);
      return DiffOp::second_order(RatFun(Poly(Scalar(1))), c1, RatFun());
    };
    f.eigenvalue = [](const ParamMap&, int n) { return Scalar(-2 * n); };
    f.in_index_set = index_with_special(0, 3);
    f.b_shift = 3;
    f.b_source = [](const ParamMap&) { return ClassicalParams::hermite(); };
    f.b_op = [](const ParamMap&) {
      // e^{-x^2} W[psi^(2)_2, .]
      return wronskian_intertwiner(
          QuasiRational::exp_of(Poly({Scalar(0), Scalar(0), Scalar(-1)})),
          {qe(ClassicalParams::hermite(), 2, 2)});
    };
    f.specials[0] = [](const ParamMap&) { return Poly(Scalar(1)); };
    f.a_op = [](const ParamMap&) {
      Poly xi({Scalar(1), Scalar(0), Scalar(2)});
      return DiffOp({RatFun(), RatFun(Poly(Scalar(1)), xi)});
    };
    f.a_factor = [](const ParamMap&, int n) { return Scalar(4 * n); };
    f.a_target = f.b_source;
    f.chain_classical = f.b_source;
    f.chain_phis = {{2, 2}};
    f.default_samples = {ParamMap{}};
    fams.push_back(std::move(f));
  }

  // ---- codimension-2 Laguerre ----------------------------------------------
  {
    FamilySpec f;
    f.id = "laguerre-x2-I";
    f.description = "type-I codimension-2 Laguerre system on the stable two-pole flag";
    f.base = Family::Laguerre;
    f.codimension = 2;
    f.flag_label = "E11_23";
    f.steps = 1;
    f.param_names = {"alpha"};
    f.interval = Interval::positive_halfline();
    f.skipped_degrees = {0, 1};
    f.min_index = 2;
    f.region = [](const ParamMap& pm) {
      bool ok = par(pm, "alpha") > Scalar(0);
      return std::make_pair(ok, ok ? std::string() : "requires alpha > 0");
    };
    f.xi = [](const ParamMap& pm) { return xi_laguerre_I(par(pm, "alpha")); };
    f.xi_power = 2;
    f.op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      Poly xi = xi_laguerre_I(a);
      RatFun ld = logder(xi);
      RatFun c1 = RatFun(lin(a + Scalar(1), Scalar(-1))) - RatFun(Scalar(2)) * RatFun(Poly::x()) * ld;
      RatFun c0 = RatFun(Scalar(-2) * a) * ld;
      return DiffOp::second_order(RatFun(Poly::x()), c1, c0);
    };
    f.eigenvalue = [](const ParamMap&, int n) { return Scalar(-n); };
    f.in_index_set = index_from(2);
    f.b_shift = 2;
    f.b_source = [](const ParamMap& pm) {
      return ClassicalParams::laguerre(par(pm, "alpha") - Scalar(1));
    };
    f.b_op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      return wronskian_intertwiner(QuasiRational::exp_of(lin(Scalar(0), Scalar(-1))),
                                   {qe(ClassicalParams::laguerre(a - Scalar(1)), 3, 2)});
    };
    f.a_op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      Poly xi = xi_laguerre_I(a);
      return wronskian_intertwiner(power_of(Poly::x(), a + Scalar(1)) *
                                       QuasiRational(RatFun(Poly(Scalar(1)), xi)),
                                   {power_of(Poly::x(), -a)});
    };
    // the displayed raising map fixes the generated normalization; under it
    // the lowering relation carries factor -(alpha+n)
    f.a_factor = [](const ParamMap& pm, int n) { return -(par(pm, "alpha") + Scalar(n)); };
    f.a_target = f.b_source;
    f.chain_classical = f.b_source;
    f.chain_phis = {{3, 2}};
    f.default_samples = {sample({{"alpha", qs(2)}}), sample({{"alpha", qs(1, 2)}}),
                         sample({{"alpha", qs(1, 10)}}), sample({{"alpha", qs(5)}})};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "laguerre-x2-II";
    f.description = "type-II codimension-2 Laguerre system on the stable two-pole flag";
    f.base = Family::Laguerre;
    f.codimension = 2;
    f.flag_label = "E11_23";
    f.steps = 1;
    f.param_names = {"alpha"};
    f.interval = Interval::positive_halfline();
    f.skipped_degrees = {0, 1};
    f.min_index = 2;
    f.region = [](const ParamMap& pm) {
      bool ok = par(pm, "alpha") > Scalar(1);
      return std::make_pair(ok, ok ? std::string() : "requires alpha > 1");
    };
    f.xi = [](const ParamMap& pm) { return xi_laguerre_II(par(pm, "alpha")); };
    f.xi_power = 2;
    f.op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      Poly xi = xi_laguerre_II(a);
      RatFun xld = RatFun(Scalar(2)) * RatFun(Poly::x()) * logder(xi);
      RatFun c1 = RatFun(lin(a + Scalar(1), Scalar(-1))) - xld;
      // the constant -4 normalizes the eigenvalues to -n (the y-coefficient
      // 2x (log xi)' tends to 4 at infinity)
      return DiffOp::second_order(RatFun(Poly::x()), c1, xld - RatFun(Scalar(4)));
    };
    f.eigenvalue = [](const ParamMap&, int n) { return Scalar(-n); };
    f.in_index_set = index_from(2);
    f.b_shift = 2;
    f.b_source = [](const ParamMap& pm) {
      return ClassicalParams::laguerre(par(pm, "alpha") + Scalar(1));
    };
    f.b_op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      return wronskian_intertwiner(power_of(Poly::x(), a + Scalar(2)),
                                   {qe(ClassicalParams::laguerre(a + Scalar(1)), 2, 2)});
    };
    f.a_op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      Poly xi = xi_laguerre_II(a);
      return wronskian_intertwiner(QuasiRational::exp_of(lin(Scalar(0), Scalar(-1))) *
                                       QuasiRational(RatFun(Poly(Scalar(1)), xi)),
                                   {QuasiRational::exp_of(lin(Scalar(0), Scalar(1)))});
    };
    f.a_factor = [](const ParamMap& pm, int n) {
      return Scalar(3) - par(pm, "alpha") - Scalar(n);
    };
    f.a_target = f.b_source;
    f.chain_classical = f.b_source;
    f.chain_phis = {{2, 2}};
    f.default_samples = {sample({{"alpha", qs(2)}}), sample({{"alpha", qs(3, 2)}}),
                         sample({{"alpha", qs(11, 10)}}), sample({{"alpha", qs(6)}})};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "laguerre-x2-e11-13";
    f.description = "codimension-2 Laguerre system on the {1,3} two-pole flag";
    f.base = Family::Laguerre;
    f.codimension = 2;
    f.flag_label = "E11_13";
    f.steps = 2;
    f.param_names = {"alpha"};
    f.interval = Interval::positive_halfline();
    f.skipped_degrees = {0, 2};
    f.min_index = 1;
    f.region = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      bool ok = a > Scalar(-1) && a < Scalar(1);
      return std::make_pair(ok, ok ? std::string() : "requires |alpha| < 1");
    };
    f.xi = [](const ParamMap& pm) { return xi_laguerre_e11_13(par(pm, "alpha")); };
    f.xi_power = 2;
    f.op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      Poly xi = xi_laguerre_e11_13(a);
      RatFun c1 = RatFun(lin(a + Scalar(1), Scalar(-1))) -
                  RatFun(Scalar(2)) * RatFun(Poly::x()) * logder(xi);
      RatFun c0 = RatFun(lin(a + Scalar(1), Scalar(-1)) * (Scalar(2) * (a - Scalar(1))), xi);
      return DiffOp::second_order(RatFun(Poly::x()), c1, c0);
    };
    f.eigenvalue = [](const ParamMap&, int n) { return Scalar(-n); };
    f.in_index_set = index_with_special(1, 3);
    f.b_shift = 3;
    f.b_source = [](const ParamMap& pm) {
      return ClassicalParams::laguerre(par(pm, "alpha"));
    };
    f.b_op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      if (a.is_zero()) return laguerre_e11_13_b0();
      ClassicalParams cp = ClassicalParams::laguerre(a);
      QuasiRational mu = QuasiRational::exp_of(lin(Scalar(0), Scalar(-2))) *
                         power_of(Poly::x(), a + Scalar(2)) *
                         QuasiRational(RatFun(a.inverse()));
      return wronskian_intertwiner(mu, {qe(cp, 3, 1), qe(cp, 4, 1)});
    };
    f.specials[1] = [](const ParamMap& pm) {
      return lin(par(pm, "alpha") + Scalar(1), Scalar(1));
    };
    f.a_op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      if (a.is_zero())
        throw limit_parameter_error("the alpha = 0 lowering operator requires a limit construction that is not provided");
      Poly xi = xi_laguerre_e11_13(a);
      QuasiRational mu = power_of(Poly::x(), a + Scalar(2)) *
                         QuasiRational(RatFun(Poly(a.inverse()), xi * xi));
      QuasiRational f1 = power_of(Poly::x(), -a) *
                         QuasiRational(RatFun(lin(Scalar(1) - a, Scalar(1))));
      QuasiRational f2{RatFun(lin(a + Scalar(1), Scalar(1)))};
      return wronskian_intertwiner(mu, {f1, f2});
    };
    f.a_factor = [](const ParamMap& pm, int n) {
      return -Scalar(n - 1) * (par(pm, "alpha") + Scalar(n - 1));
    };
    f.a_target = f.b_source;
    f.chain_classical = f.b_source;
    f.chain_phis = {{3, 1}, {4, 1}};
    f.default_samples = {sample({{"alpha", qs(1, 2)}}), sample({{"alpha", qs(-1, 2)}}),
                         sample({{"alpha", qs(9, 10)}}), sample({{"alpha", qs(-9, 10)}})};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "laguerre-x2-e11-03";
    f.description = "codimension-2 Laguerre system on the {0,3} two-pole flag";
    f.base = Family::Laguerre;
    f.codimension = 2;
    f.flag_label = "E11_03";
    f.steps = 1;
    f.param_names = {"alpha"};
    f.interval = Interval::positive_halfline();
    f.skipped_degrees = {1, 2};
    f.min_index = 0;
    f.region = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      bool ok = (a > Scalar(-1) && a < Scalar(0)) || a > Scalar(1);
      return std::make_pair(ok, ok ? std::string() : "requires alpha in (-1,0) or (1,inf)");
    };
    f.xi = [](const ParamMap& pm) { return xi_laguerre_e11_03(par(pm, "alpha")); };
    f.xi_power = 2;
    f.op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      Poly xi = xi_laguerre_e11_03(a);
      RatFun c1 = RatFun(lin(a + Scalar(1), Scalar(-1))) -
                  RatFun(Scalar(2)) * RatFun(Poly::x()) * logder(xi);
      return DiffOp::second_order(RatFun(Poly::x()), c1, RatFun());
    };
    f.eigenvalue = [](const ParamMap&, int n) { return Scalar(-n); };
    f.in_index_set = index_with_special(0, 3);
    f.b_shift = 3;
    f.b_source = [](const ParamMap& pm) {
      return ClassicalParams::laguerre(par(pm, "alpha") + Scalar(1));
    };
    f.b_op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      QuasiRational mu = QuasiRational::exp_of(lin(Scalar(0), Scalar(-1))) *
                         power_of(Poly::x(), a + Scalar(2));
      return wronskian_intertwiner(mu, {qe(ClassicalParams::laguerre(a + Scalar(1)), 4, 2)});
    };
    f.specials[0] = [](const ParamMap&) { return Poly(Scalar(1)); };
    f.a_op = [](const ParamMap& pm) {
      Poly xi = xi_laguerre_e11_03(par(pm, "alpha"));
      return DiffOp({RatFun(), RatFun(Poly(Scalar(1)), xi)});
    };
    f.a_factor = [](const ParamMap&, int n) { return Scalar(-n); };
    f.a_target = f.b_source;
    f.chain_classical = f.b_source;
    f.chain_phis = {{4, 2}};
    f.default_samples = {sample({{"alpha", qs(-1, 2)}}), sample({{"alpha", qs(-9, 10)}}),
                         sample({{"alpha", qs(2)}}), sample({{"alpha", qs(11, 10)}})};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "laguerre-x2-e2a13";
    f.description = "codimension-2 Laguerre system on the {1,3} one-pole flag (fourth-order weight pole)";
    f.base = Family::Laguerre;
    f.codimension = 2;
    f.flag_label = "E2a_13";
    f.steps = 2;
    f.interval = Interval::positive_halfline();
    f.skipped_degrees = {0, 2};
    f.min_index = 1;
    f.region = always;
    f.xi = [](const ParamMap&) { return lin(Scalar(3), Scalar(4)); };
    f.xi_power = 4;
    f.op = [](const ParamMap&) {
      Poly xi = lin(qs(3, 4), Scalar(1));
      RatFun c1 = RatFun(lin(qs(5, 4), Scalar(-1))) -
                  RatFun(Poly({Scalar(0), Scalar(4)}), xi);
      RatFun c0 = -RatFun(Poly(Scalar(1)), xi);
      return DiffOp::second_order(RatFun(Poly::x()), c1, c0);
    };
    f.eigenvalue = [](const ParamMap&, int n) { return Scalar(-n); };
    f.in_index_set = index_with_special(1, 3);
    f.b_shift = 3;
    f.b_source = [](const ParamMap&) { return ClassicalParams::laguerre(qs(1, 4)); };
    f.b_op = [](const ParamMap&) {
      ClassicalParams cp = ClassicalParams::laguerre(qs(1, 4));
      QuasiRational mu = QuasiRational::exp_of(lin(Scalar(0), Scalar(-2))) *
                         power_of(Poly::x(), qs(9, 4)) *
                         QuasiRational(RatFun(Poly(Scalar(1)), lin(qs(3, 4), Scalar(1))));
      return wronskian_intertwiner(mu, {qe(cp, 4, 1), qe(cp, 3, 2)});
    };
    f.specials[1] = [](const ParamMap&) { return lin(qs(15, 4), Scalar(1)); };
    f.a_op = [](const ParamMap&) {
      Poly xi = lin(qs(3, 4), Scalar(1));
      QuasiRational mu = power_of(Poly::x(), qs(9, 4)) *
                         QuasiRational(RatFun(Poly(Scalar(1)), xi * xi * xi));
      return wronskian_intertwiner(mu, {power_of(Poly::x(), qs(-1, 4)),
                                        QuasiRational(RatFun(lin(qs(15, 4), Scalar(1))))});
    };
    f.a_factor = [](const ParamMap&, int n) {
      return qs(25, 128) * Scalar(n - 1) * Scalar(4 * n + 1);
    };
    f.a_target = f.b_source;
    f.chain_classical = f.b_source;
    f.chain_phis = {{4, 1}, {3, 2}};
    f.default_samples = {ParamMap{}};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "laguerre-x2-e2a03";
    f.description = "codimension-2 Laguerre system on the {0,3} one-pole flag (fourth-order weight pole)";
    f.base = Family::Laguerre;
    f.codimension = 2;
    f.flag_label = "E2a_03";
    f.steps = 2;
    f.interval = Interval::positive_halfline();
    f.skipped_degrees = {1, 2};
    f.min_index = 0;
    f.region = always;
    f.xi = [](const ParamMap&) { return lin(Scalar(3), Scalar(4)); };
    f.xi_power = 4;
    f.op = [](const ParamMap&) {
      Poly xi = lin(qs(3, 4), Scalar(1));
      RatFun c1 = RatFun(lin(qs(3, 4), Scalar(-1))) -
                  RatFun(Poly({Scalar(0), Scalar(4)}), xi);
      return DiffOp::second_order(RatFun(Poly::x()), c1, RatFun());
    };
    f.eigenvalue = [](const ParamMap&, int n) { return Scalar(-n); };
    f.in_index_set = index_with_special(0, 3);
    f.b_shift = 3;
    f.b_source = [](const ParamMap&) { return ClassicalParams::laguerre(qs(-1, 4)); };
    f.b_op = [](const ParamMap&) {
      ClassicalParams cp = ClassicalParams::laguerre(qs(-1, 4));
      QuasiRational mu = QuasiRational::exp_of(lin(Scalar(0), Scalar(-2))) *
                         power_of(Poly::x(), qs(7, 4)) *
                         QuasiRational(RatFun(Poly(Scalar(1)), lin(qs(3, 4), Scalar(1))));
      return wronskian_intertwiner(mu, {qe(cp, 4, 2), qe(cp, 3, 1)});
    };
    f.specials[0] = [](const ParamMap&) { return Poly(Scalar(1)); };
    f.a_op = [](const ParamMap&) {
      Poly xi = lin(qs(3, 4), Scalar(1));
      QuasiRational mu = power_of(Poly::x(), qs(7, 4)) *
                         QuasiRational(RatFun(Poly(Scalar(1)), xi * xi * xi));
      QuasiRational f2 = power_of(Poly::x(), qs(1, 4)) *
                         QuasiRational(RatFun(lin(qs(15, 4), Scalar(1))));
      return wronskian_intertwiner(mu, {QuasiRational(Scalar(1)), f2});
    };
    f.a_factor = [](const ParamMap&, int n) {
      return qs(25, 128) * Scalar(n) * Scalar(5 - 4 * n);
    };
    f.a_target = f.b_source;
    f.chain_classical = f.b_source;
    f.chain_phis = {{4, 2}, {3, 1}};
    f.default_samples = {ParamMap{}};
    fams.push_back(std::move(f));
  }

  // ---- codimension-2 Jacobi -------------------------------------------------
  {
    FamilySpec f;
    f.id = "jacobi-x2-e11-23";
    f.description = "codimension-2 Jacobi system on the stable two-pole flag";
    f.base = Family::Jacobi;
    f.codimension = 2;
    f.flag_label = "E11_23";
    f.steps = 1;
    f.param_names = {"alpha", "beta"};
    f.interval = Interval::finite(Scalar(-1), Scalar(1));
    f.skipped_degrees = {0, 1};
    f.min_index = 2;
    f.region = [](const ParamMap& pm) {
      const Scalar &a = par(pm, "alpha"), &b = par(pm, "beta");
      // the weight denominator degenerates to degree one on beta = alpha - 1
      // and beta = alpha - 2; those lines need a limit construction
      if (b == a - Scalar(1) || b == a - Scalar(2))
        return std::make_pair(false,
                              std::string("weight denominator degenerates; limit lines excluded"));
      bool ok = (a > Scalar(1) && b > Scalar(0)) ||
                (a > Scalar(0) && a < Scalar(1) && b > Scalar(-1) && b < Scalar(0));
      return std::make_pair(ok, ok ? std::string()
                                   : "requires alpha > 1, beta > 0, or 0 < alpha < 1, -1 < beta < 0");
    };
    f.xi = [](const ParamMap& pm) {
      return xi_jacobi_e11_23(par(pm, "alpha"), par(pm, "beta"));
    };
    f.xi_power = 2;
    f.op = [](const ParamMap& pm) {
      const Scalar &a = par(pm, "alpha"), &b = par(pm, "beta");
      ClassicalOperator cl = classical_operator(ClassicalParams::jacobi(a, b));
      Poly xi = xi_jacobi_e11_23(a, b);
      RatFun ld = logder(xi);
      RatFun c1 = RatFun(cl.q) - RatFun(Scalar(2)) * RatFun(cl.p) * ld;
      RatFun c0 = RatFun(Scalar(-2) * b) * RatFun(omx()) * ld +
                  RatFun(Scalar(2) * (a - b - Scalar(1)));
      return DiffOp::second_order(RatFun(cl.p), c1, c0);
    };
    f.eigenvalue = [](const ParamMap& pm, int n) {
      Scalar s = par(pm, "alpha") + par(pm, "beta");
      return -Scalar(n - 2) * (Scalar(n - 1) + s);
    };
    f.in_index_set = index_from(2);
    f.b_shift = 2;
    f.b_source = [](const ParamMap& pm) {
      return ClassicalParams::jacobi(par(pm, "alpha") + Scalar(1), par(pm, "beta") - Scalar(1));
    };
    f.b_op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "alpha");
      ClassicalParams cp = ClassicalParams::jacobi(a + Scalar(1), par(pm, "beta") - Scalar(1));
      return wronskian_intertwiner(power_of(omx(), a + Scalar(2)), {qe(cp, 3, 2)});
    };
    f.a_op = [](const ParamMap& pm) {
      const Scalar& b = par(pm, "beta");
      Poly xi = xi_jacobi_e11_23(par(pm, "alpha"), b);
      QuasiRational mu = power_of(opx(), b + Scalar(1)) *
                         QuasiRational(RatFun(Poly(Scalar(1)), xi));
      return wronskian_intertwiner(mu, {power_of(opx(), -b)});
    };
    f.a_factor = [](const ParamMap& pm, int n) {
      return -(par(pm, "alpha") + Scalar(n - 3)) * (par(pm, "beta") + Scalar(n));
    };
    f.a_target = f.b_source;
    f.chain_classical = f.b_source;
    f.chain_phis = {{3, 2}};
    f.default_samples = {sample({{"alpha", qs(2)}, {"beta", qs(3)}}),
                         sample({{"alpha", qs(3, 2)}, {"beta", qs(3)}}),
                         sample({{"alpha", qs(1, 2)}, {"beta", qs(-1, 4)}}),
                         sample({{"alpha", qs(3, 4)}, {"beta", qs(-1, 2)}}),
                         sample({{"alpha", qs(11, 10)}, {"beta", qs(1, 5)}})};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "jacobi-x2-e11-13";
    f.description = "codimension-2 Jacobi system on the {1,3} two-pole flag";
    f.base = Family::Jacobi;
    f.codimension = 2;
    f.flag_label = "E11_13";
    f.steps = 2;
    f.param_names = {"alpha", "beta"};
    f.interval = Interval::finite(Scalar(-1), Scalar(1));
    f.skipped_degrees = {0, 2};
    f.min_index = 1;
    f.region = [](const ParamMap& pm) {
      const Scalar &a = par(pm, "alpha"), &b = par(pm, "beta");
      if (b.is_zero())
        return std::make_pair(false,
                              std::string("beta = 0 requires a limit construction that is not provided"));
      bool ok = (a > Scalar(-1) && a < Scalar(1) && b > Scalar(1)) ||
                (a > Scalar(1) && b > Scalar(-1) && b < Scalar(1));
      return std::make_pair(ok, ok ? std::string()
                                   : "requires -1 < alpha < 1, beta > 1, or alpha > 1, -1 < beta < 1");
    };
    f.xi = [](const ParamMap& pm) {
      return xi_jacobi_e11_13(par(pm, "alpha"), par(pm, "beta"));
    };
    f.xi_power = 2;
    f.op = [](const ParamMap& pm) {
      const Scalar &a = par(pm, "alpha"), &b = par(pm, "beta");
      ClassicalOperator cl = classical_operator(ClassicalParams::jacobi(a, b));
      Poly xi = xi_jacobi_e11_13(a, b);
      RatFun c1 = RatFun(cl.q) - RatFun(Scalar(2)) * RatFun(cl.p) * logder(xi);
      Poly p1 = classical_poly(ClassicalParams::jacobi(a, b), 1);
      RatFun c0 = RatFun(p1 * (Scalar(-8) * (a - Scalar(1)) * (b - Scalar(1))), xi);
      return DiffOp::second_order(RatFun(cl.p), c1, c0);
    };
    f.eigenvalue = [](const ParamMap& pm, int n) {
      Scalar s = par(pm, "alpha") + par(pm, "beta");
      return -Scalar(n) * (Scalar(n - 3) + s);
    };
    f.in_index_set = index_with_special(1, 3);
    f.b_shift = 3;
    f.b_source = [](const ParamMap& pm) {
      return ClassicalParams::jacobi(par(pm, "alpha") + Scalar(2), par(pm, "beta"));
    };
    f.b_op = [](const ParamMap& pm) {
      const Scalar &a = par(pm, "alpha"), &b = par(pm, "beta");
      ClassicalParams cp = ClassicalParams::jacobi(a + Scalar(2), b);
      QuasiRational mu = power_of(omx(), Scalar(6) + Scalar(2) * a) *
                         power_of(opx(), Scalar(2) + b) * QuasiRational(RatFun(b.inverse()));
      return wronskian_intertwiner(mu, {qe(cp, 3, 1), qe(cp, 4, 1)});
    };
    f.specials[1] = [](const ParamMap& pm) {
      return classical_poly(
          ClassicalParams::jacobi(-par(pm, "alpha") - Scalar(2), par(pm, "beta")), 1);
    };
    f.a_factor = [](const ParamMap& pm, int n) {
      const Scalar &a = par(pm, "alpha"), &b = par(pm, "beta");
      return qs(1, 16) * Scalar(n - 1) * (Scalar(n) + a - Scalar(2)) * (Scalar(n) + b - Scalar(1)) *
             (Scalar(n) + a + b - Scalar(2));
    };
    f.a_target = f.b_source;
    {
      auto fac = f.a_factor;
      auto tgt = f.a_target;
      auto spec_copy_gen = [&f](const ParamMap& pm, int n) { return Poly(); };
      (void)spec_copy_gen;
      f.a_op = [fac, tgt, id = f.id](const ParamMap& pm) {
        const FamilySpec& self = family_by_id(id);
        std::vector<std::pair<Poly, RatFun>> eqs;
        for (int n : {self.min_index, 3, 4}) {
          Poly y = generate_one(self, pm, n);
          int k = n - self.b_shift;
          RatFun g = k < 0 ? RatFun() : RatFun(classical_poly(tgt(pm), k)) * RatFun(fac(pm, n));
          eqs.emplace_back(y, g);
        }
        return solve_intertwiner_from_relations(eqs);
      };
    }
    f.chain_classical = f.b_source;
    f.chain_phis = {{3, 1}, {4, 1}};
    f.default_samples = {sample({{"alpha", qs(1, 2)}, {"beta", qs(2)}}),
                         sample({{"alpha", qs(-1, 2)}, {"beta", qs(3, 2)}}),
                         sample({{"alpha", qs(2)}, {"beta", qs(1, 2)}}),
                         sample({{"alpha", qs(3)}, {"beta", qs(-1, 2)}})};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "jacobi-x2-e11-03";
    f.description = "codimension-2 Jacobi system on the {0,3} two-pole flag";
    f.base = Family::Jacobi;
    f.codimension = 2;
    f.flag_label = "E11_03";
    f.steps = 1;
    f.param_names = {"alpha", "beta"};
    f.interval = Interval::finite(Scalar(-1), Scalar(1));
    f.skipped_degrees = {1, 2};
    f.min_index = 0;
    f.region = [](const ParamMap& pm) {
      const Scalar &a = par(pm, "alpha"), &b = par(pm, "beta");
      bool c1 = a > Scalar(1) && b > Scalar(1);
      bool c2 = a > Scalar(1) && a < Scalar(3) && b > Scalar(-1) && b < Scalar(0) &&
                (a + b) < Scalar(2);
      bool c3 = b > Scalar(1) && b < Scalar(3) && a > Scalar(-1) && a < Scalar(0) &&
                (a + b) < Scalar(2);
      bool c4 = a > Scalar(0) && a < Scalar(1) && b > Scalar(0) && b < Scalar(1);
      bool ok = c1 || c2 || c3 || c4;
      if (a + b == Scalar(1) || a + b == Scalar(2))
        return std::make_pair(false,
                              std::string("weight denominator degenerates; limit lines excluded"));
      return std::make_pair(ok, ok ? std::string() : "parameters outside the four admissible classes");
    };
    f.xi = [](const ParamMap& pm) {
      return xi_jacobi_e11_03(par(pm, "alpha"), par(pm, "beta"));
    };
    f.xi_power = 2;
    f.op = [](const ParamMap& pm) {
      const Scalar &a = par(pm, "alpha"), &b = par(pm, "beta");
      ClassicalOperator cl = classical_operator(ClassicalParams::jacobi(a, b));
      Poly xi = xi_jacobi_e11_03(a, b);
      RatFun c1 = RatFun(cl.q) - RatFun(Scalar(2)) * RatFun(cl.p) * logder(xi);
      return DiffOp::second_order(RatFun(cl.p), c1, RatFun());
    };
    // forced by the displayed operator: the eigenvalue on the generated
    // polynomials is -n(n-3+alpha+beta), uniformly in the index set
    f.eigenvalue = [](const ParamMap& pm, int n) {
      Scalar s = par(pm, "alpha") + par(pm, "beta");
      return -Scalar(n) * (Scalar(n - 3) + s);
    };
    f.in_index_set = index_with_special(0, 3);
    f.b_shift = 3;
    f.b_source = [](const ParamMap& pm) {
      return ClassicalParams::jacobi(par(pm, "alpha") + Scalar(1), par(pm, "beta") + Scalar(1));
    };
    f.b_op = [](const ParamMap& pm) {
      const Scalar &a = par(pm, "alpha"), &b = par(pm, "beta");
      ClassicalParams cp = ClassicalParams::jacobi(a + Scalar(1), b + Scalar(1));
      QuasiRational mu = power_of(omx(), a + Scalar(2)) * power_of(opx(), b + Scalar(2));
      return wronskian_intertwiner(mu, {qe(cp, 4, 2)});
    };
    f.specials[0] = [](const ParamMap&) { return Poly(Scalar(1)); };
    f.a_op = [](const ParamMap& pm) {
      Poly xi = xi_jacobi_e11_03(par(pm, "alpha"), par(pm, "beta"));
      return DiffOp({RatFun(), RatFun(Poly(Scalar(1)), xi)});
    };
    // forced by the displayed maps: the eigenfactor equals the eigenvalue
    f.a_factor = [](const ParamMap& pm, int n) {
      Scalar sum = par(pm, "alpha") + par(pm, "beta");
      return -Scalar(n) * (Scalar(n - 3) + sum);
    };
    f.a_target = f.b_source;
    f.chain_classical = f.b_source;
    f.chain_phis = {{4, 2}};
    f.default_samples = {sample({{"alpha", qs(2)}, {"beta", qs(2)}}),
                         sample({{"alpha", qs(3, 2)}, {"beta", qs(-1, 4)}}),
                         sample({{"alpha", qs(-1, 4)}, {"beta", qs(3, 2)}}),
                         sample({{"alpha", qs(1, 2)}, {"beta", qs(1, 4)}})};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "jacobi-x2-e2a13";
    f.description = "codimension-2 Jacobi system on the {1,3} one-pole flag (fourth-order weight pole)";
    f.base = Family::Jacobi;
    f.codimension = 2;
    f.flag_label = "E2a_13";
    f.steps = 2;
    f.param_names = {"a"};
    f.interval = Interval::finite(Scalar(-1), Scalar(1));
    f.skipped_degrees = {0, 2};
    f.min_index = 1;
    f.region = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "a");
      bool ok = a > Scalar(3) || (a < qs(-1, 3) && a != Scalar(-1));
      return std::make_pair(ok, ok ? std::string() : "requires a > 3 or a < -1/3 with a != -1");
    };
    f.xi = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "a");
      return lin(Scalar(2) * (a - Scalar(1)), Scalar(1) + a);
    };
    f.xi_power = 4;
    f.op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "a");
      Scalar al = e2a13_jacobi_alpha(a), be = e2a13_jacobi_beta(a);
      ClassicalOperator cl = classical_operator(ClassicalParams::jacobi(al, be));
      Poly xi = lin(Scalar(2) * (a - Scalar(1)), Scalar(1) + a);
      RatFun c1 = RatFun(cl.q) - RatFun(Scalar(4)) * RatFun(cl.p) * logder(xi);
      RatFun c0 = -RatFun(Poly(Scalar(8)), xi);
      return DiffOp::second_order(RatFun(cl.p), c1, c0);
    };
    f.eigenvalue = [](const ParamMap& pm, int n) {
      const Scalar& a = par(pm, "a");
      Scalar s = e2a13_jacobi_alpha(a) + e2a13_jacobi_beta(a);
      return -Scalar(n) * (Scalar(n - 3) + s);
    };
    f.in_index_set = index_with_special(1, 3);
    f.b_shift = 3;
    f.b_source = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "a");
      return ClassicalParams::jacobi(e2a13_jacobi_alpha(a) + Scalar(2), e2a13_jacobi_beta(a));
    };
    f.b_op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "a");
      Scalar al = e2a13_jacobi_alpha(a), be = e2a13_jacobi_beta(a);
      ClassicalParams cp = ClassicalParams::jacobi(al + Scalar(2), be);
      Poly xi = lin(Scalar(2) * (a - Scalar(1)), Scalar(1) + a);
      Scalar cden = a * (a - Scalar(1)) * (Scalar(1) + Scalar(3) * a);
      QuasiRational mu = power_of(omx(), Scalar(2) * al + Scalar(6)) *
                         power_of(opx(), be + Scalar(2)) *
                         QuasiRational(RatFun(Poly(cden.inverse()), xi));
      return wronskian_intertwiner(mu, {qe(cp, 4, 1), qe(cp, 3, 2)});
    };
    f.specials[1] = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "a");
      return lin(-Scalar(2) * (Scalar(1) + a) + (a - Scalar(1)) * (Scalar(3) * a - Scalar(1)),
                 Scalar(2) * (Scalar(1) + a));
    };
    f.a_op = [](const ParamMap& pm) {
      const Scalar& a = par(pm, "a");
      Scalar al = e2a13_jacobi_alpha(a), be = e2a13_jacobi_beta(a);
      Poly xi = lin(Scalar(2) * (a - Scalar(1)), Scalar(1) + a);
      Scalar c3 = Scalar(3) * a - Scalar(1);
      Scalar cnum = -c3 * c3 * c3 * c3 * c3 * (a - Scalar(3)) * (a - Scalar(3)) * (a - Scalar(3));
      Scalar cden = Scalar(36) * (Scalar(1) + Scalar(3) * a);
      QuasiRational mu = power_of(opx(), be + Scalar(2)) *
                         QuasiRational(RatFun(Poly(cnum / cden), xi * xi * xi));
      Poly p1 = lin(-Scalar(2) * (Scalar(1) + a) + (a - Scalar(1)) * c3,
                    Scalar(2) * (Scalar(1) + a));
      return wronskian_intertwiner(mu, {power_of(opx(), -be), QuasiRational(RatFun(p1))});
    };
    f.a_factor = [](const ParamMap& pm, int n) {
      const Scalar& a = par(pm, "a");
      Scalar al = e2a13_jacobi_alpha(a), be = e2a13_jacobi_beta(a);
      return Scalar(n - 1) * (Scalar(n - 3) + al) * (Scalar(n) + be) *
             (Scalar(n - 2) + al + be);
    };
    f.a_target = f.b_source;
    f.chain_classical = f.b_source;
    f.chain_phis = {{4, 1}, {3, 2}};
    f.default_samples = {sample({{"a", qs(4)}}), sample({{"a", qs(6)}}),
                         sample({{"a", qs(-1, 2)}}), sample({{"a", qs(-2)}})};
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.id = "jacobi-x2-e2a03";
    f.description = "codimension-2 Jacobi system on the {0,3} one-pole flag (fourth-order weight pole)";
    f.base = Family::Jacobi;
    f.codimension = 2;
    f.flag_label = "E2a_03";
    f.steps = 2;
    f.param_names = {"z1"};
    f.interval = Interval::finite(Scalar(-1), Scalar(1));
    f.skipped_degrees = {1, 2};
    f.min_index = 0;
    f.region = [](const ParamMap& pm) {
      const Scalar& z1 = par(pm, "z1");
      bool ok = z1 > qs(1, 2) && z1 != Scalar(1);
      return std::make_pair(ok, ok ? std::string() : "requires z1 > 1/2 with z1 != 1");
    };
    f.xi = [](const ParamMap& pm) {
      const Scalar& z1 = par(pm, "z1");
      return lin(z1, z1 - Scalar(1));
    };
    f.xi_power = 4;
    f.op = [](const ParamMap& pm) {
      const Scalar& z1 = par(pm, "z1");
      Scalar al = qs(3, 2) * z1 - Scalar(1);
      Scalar be = qs(3, 2) * e2a03_jacobi_z2(z1) - Scalar(1);
      ClassicalOperator cl = classical_operator(ClassicalParams::jacobi(al, be));
      Poly xi = lin(z1, z1 - Scalar(1));
      RatFun c1 = RatFun(cl.q) - RatFun(Scalar(4)) * RatFun(cl.p) * logder(xi);
      return DiffOp::second_order(RatFun(cl.p), c1, RatFun());
    };
    f.eigenvalue = [](const ParamMap& pm, int n) {
      const Scalar& z1 = par(pm, "z1");
      Scalar s = qs(3, 2) * z1 + qs(3, 2) * e2a03_jacobi_z2(z1) - Scalar(2);
      return -Scalar(n) * (Scalar(n - 3) + s);
    };
    f.in_index_set = index_with_special(0, 3);
    f.b_shift = 3;
    f.b_source = [](const ParamMap& pm) {
      const Scalar& z1 = par(pm, "z1");
      Scalar al = qs(3, 2) * z1 - Scalar(1);
      Scalar be = qs(3, 2) * e2a03_jacobi_z2(z1) - Scalar(1);
      return ClassicalParams::jacobi(al + Scalar(2), be);
    };
    f.b_op = [](const ParamMap& pm) {
      const Scalar& z1 = par(pm, "z1");
      Scalar al = qs(3, 2) * z1 - Scalar(1);
      Scalar be = qs(3, 2) * e2a03_jacobi_z2(z1) - Scalar(1);
      ClassicalParams cp = ClassicalParams::jacobi(al + Scalar(2), be);
      Poly p1 = classical_poly(ClassicalParams::jacobi(-al - Scalar(2), be), 1);
      QuasiRational mu = power_of(omx(), Scalar(2) * al + Scalar(6)) *
                         power_of(opx(), be + Scalar(2)) *
                         QuasiRational(RatFun(Poly(Scalar(1)), p1));
      return wronskian_intertwiner(mu, {qe(cp, 4, 2), qe(cp, 3, 1)});
    };
    f.specials[0] = [](const ParamMap&) { return Poly(Scalar(1)); };
    f.a_factor = [](const ParamMap& pm, int n) {
      const Scalar& z1 = par(pm, "z1");
      Scalar al = qs(3, 2) * z1 - Scalar(1);
      Scalar be = qs(3, 2) * e2a03_jacobi_z2(z1) - Scalar(1);
      return Scalar(n) * (Scalar(n - 2) + al) * (Scalar(n - 1) + be) *
             (Scalar(n - 3) + al + be);
    };
    f.a_target = f.b_source;
    {
      auto fac = f.a_factor;
      auto tgt = f.a_target;
      f.a_op = [fac, tgt, id = f.id](const ParamMap& pm) {
        const FamilySpec& self = family_by_id(id);
        std::vector<std::pair<Poly, RatFun>> eqs;
        for (int n : {self.min_index, 3, 4}) {
          Poly y = generate_one(self, pm, n);
          int k = n - self.b_shift;
          RatFun g = k < 0 ? RatFun() : RatFun(classical_poly(tgt(pm), k)) * RatFun(fac(pm, n));
          eqs.emplace_back(y, g);
        }
        return solve_intertwiner_from_relations(eqs);
      };
    }
    f.chain_classical = f.b_source;
    f.chain_phis = {{4, 2}, {3, 1}};
    f.default_samples = {sample({{"z1", qs(3, 4)}}), sample({{"z1", qs(3, 2)}}),
                         sample({{"z1", qs(3)}}), sample({{"z1", qs(5, 8)}})};
    fams.push_back(std::move(f));
  }

  return fams;
}

const std::vector<FamilySpec>* registry_ptr = nullptr;

}  // namespace

const std::vector<FamilySpec>& registry() {
  static std::vector<FamilySpec> fams = make_registry();
  registry_ptr = &fams;
  return fams;
}

const FamilySpec& family_by_id(const std::string& id) {
  for (const auto& f : registry())
    if (f.id == id) return f;
  throw std::invalid_argument("unknown family id: " + id);
}

QuasiRational family_weight(const FamilySpec& spec, const ParamMap& params) {
  QuasiRational base(Scalar(1));
  switch (spec.base) {
    case Family::Hermite: base = hermite_weight(); break;
    case Family::Laguerre: {
      Scalar a = spec.id == "laguerre-x2-e2a13"   ? qs(1, 4)
                 : spec.id == "laguerre-x2-e2a03" ? qs(-1, 4)
                                                  : par(params, "alpha");
      base = laguerre_weight(a);
      break;
    }
    case Family::Jacobi: {
      Scalar a, b;
      if (spec.id == "jacobi-x2-e2a13") {
        a = e2a13_jacobi_alpha(par(params, "a"));
        b = e2a13_jacobi_beta(par(params, "a"));
      } else if (spec.id == "jacobi-x2-e2a03") {
        a = qs(3, 2) * par(params, "z1") - Scalar(1);
        b = qs(3, 2) * e2a03_jacobi_z2(par(params, "z1")) - Scalar(1);
      } else {
        a = par(params, "alpha");
        b = par(params, "beta");
      }
      base = jacobi_weight(a, b);
      break;
    }
  }
  if (spec.xi_power == 0) return base;
  return over_xi(base, spec.xi(params), spec.xi_power);
}

std::pair<bool, std::string> admissible(const FamilySpec& spec, const ParamMap& params) {
  for (const auto& name : spec.param_names)
    if (!params.count(name)) return {false, "missing parameter '" + name + "'"};
  auto [ok, why] = spec.region(params);
  if (!ok) return {false, why};
  Poly xi = spec.xi(params);
  if (xi.degree() > 0) {
    int roots = count_roots_closed(xi, spec.interval.lo, spec.interval.hi);
    if (roots > 0)
      return {false, "weight denominator has a zero in the closed interval of orthogonality"};
  }
  if (!moments_finite(family_weight(spec, params), spec.interval))
    return {false, "weight moments diverge"};
  return {true, ""};
}

DiffOp family_operator(const FamilySpec& spec, const ParamMap& params);

namespace {

// codimension-1 systems are generated through their one-step chain; the
// raising map is the chain's A and the lowering map the chain's B
struct X1Data {
  DiffOp op, raise, lower;
  Scalar lambda0;
};

X1Data x1_data(const FamilySpec& spec, const ParamMap& params) {
  Chain c = chain_from_classical(spec.chain_classical(params), spec.chain_phis, spec.interval, 8);
  X1Data d{c.exceptional_end, c.steps[0].fact.a, c.steps[0].fact.b, c.steps[0].fact.lambda0};
  if (spec.base == Family::Laguerre) d.op = d.op.plus_constant(Scalar(-1));
  return d;
}

}  // namespace

DiffOp family_operator(const FamilySpec& spec, const ParamMap& params) {
  if (spec.op) return spec.op(params);
  return x1_data(spec, params).op;  // codimension-1 systems
}

Poly generate_one(const FamilySpec& spec, const ParamMap& params, int n) {
  if (!spec.in_index_set(n)) throw std::invalid_argument("index outside the family's degree set");
  if (spec.is_classical()) {
    ClassicalParams cp = spec.base == Family::Hermite ? ClassicalParams::hermite()
                         : spec.base == Family::Laguerre
                             ? ClassicalParams::laguerre(par(params, "alpha"))
                             : ClassicalParams::jacobi(par(params, "alpha"), par(params, "beta"));
    return classical_poly(cp, n);
  }
  auto sp = spec.specials.find(n);
  if (sp != spec.specials.end()) return sp->second(params);
  DiffOp b = spec.b_op ? spec.b_op(params) : x1_data(spec, params).raise;
  Poly input = classical_poly(spec.b_source(params), n - spec.b_shift);
  RatFun img = apply(b, input);
  if (!img.is_polynomial())
    throw std::logic_error("raising operator produced a non-polynomial image");
  return img.as_poly();
}

GeneratedSystem generate(const FamilySpec& spec, const ParamMap& params, int n_max) {
  auto [ok, why] = admissible(spec, params);
  if (!ok) throw inadmissible_error(spec.id + ": " + why);
  GeneratedSystem sys;
  sys.family_id = spec.id;
  sys.params = params;
  sys.op = family_operator(spec, params);
  sys.weight = family_weight(spec, params);
  sys.interval = spec.interval;
  for (int n = 0; n <= n_max; ++n) {
    if (!spec.in_index_set(n)) continue;
    Poly y = generate_one(spec, params, n);
    Scalar lam = spec.eigenvalue(params, n);
    if (y.degree() != n) throw std::logic_error(spec.id + ": generated degree mismatch");
    RatFun resid = apply(sys.op, y) - RatFun(y) * RatFun(lam);
    if (!resid.is_zero())
      throw std::logic_error(spec.id + ": eigenvalue relation failed at n = " + std::to_string(n));
    sys.polys.emplace_back(n, std::move(y));
    sys.eigenvalues.push_back(lam);
  }
  for (size_t i = 0; i < sys.eigenvalues.size(); ++i)
    for (size_t j = i + 1; j < sys.eigenvalues.size(); ++j)
      if (sys.eigenvalues[i] == sys.eigenvalues[j])
        throw std::logic_error(spec.id + ": repeated eigenvalue");
  return sys;
}

bool intertwine_check(const FamilySpec& spec, const ParamMap& params, int n) {
  if (spec.is_classical()) return true;
  if (!spec.in_index_set(n)) return false;
  DiffOp a = spec.a_op ? spec.a_op(params) : x1_data(spec, params).lower;
  Scalar factor = spec.a_factor ? spec.a_factor(params, n) : Scalar(0);
  if (!spec.a_factor) {
    // codimension-1 chain: B A = T_cl - lambda0 gives the eigenfactor
    X1Data d = x1_data(spec, params);
    ClassicalParams cp = spec.chain_classical(params);
    factor = classical_eigenvalue(cp, n - spec.b_shift) - d.lambda0;
  }
  Poly y = generate_one(spec, params, n);
  RatFun lhs = apply(a, y);
  int k = n - spec.b_shift;
  if (k < 0) return lhs.is_zero() && factor.is_zero();
  ClassicalParams target =
      spec.a_target ? spec.a_target(params) : spec.chain_classical(params);
  RatFun rhs = RatFun(classical_poly(target, k)) * RatFun(factor);
  return lhs == rhs;
}

Chain build_chain(const FamilySpec& spec, const ParamMap& params) {
  if (spec.is_classical()) {
    Chain c;
    c.classical_params = spec.base == Family::Hermite ? ClassicalParams::hermite()
                         : spec.base == Family::Laguerre
                             ? ClassicalParams::laguerre(par(params, "alpha"))
                             : ClassicalParams::jacobi(par(params, "alpha"), par(params, "beta"));
    c.classical_end = as_diffop(classical_operator(c.classical_params));
    c.exceptional_end = c.classical_end;
    return c;
  }
  Chain c = chain_from_classical(spec.chain_classical(params), spec.chain_phis, spec.interval, 10);
  if (int(c.steps.size()) != spec.steps)
    throw std::logic_error(spec.id + ": chain length mismatch");
  // terminal operator is classical in the displayed normal form
  const DiffOp& t0 = c.classical_end;
  if (!t0.coeff(2).is_polynomial() || t0.coeff(2).as_poly().degree() > 2 ||
      !t0.coeff(1).is_polynomial() || t0.coeff(1).as_poly().degree() > 1 ||
      !t0.coeff(0).is_constant())
    throw std::logic_error("chain does not terminate at a classical operator");
  // the chain partner agrees with the registry operator up to a constant
  DiffOp diff = c.exceptional_end - family_operator(spec, params);
  if (!(diff.is_zero() || (diff.order() == 0 && diff.coeff(0).is_constant())))
    throw std::logic_error(spec.id + ": chain partner differs from the registry operator");
  return c;
}

OrthogonalityReport orthogonality_report(const GeneratedSystem& system,
                                         const QuadratureConfig& cfg) {
  return orthogonality_core(system.polys, system.weight, system.interval, cfg);
}

// ---- non-existence certificates --------------------------------------------

namespace {

CertificateResult cert(const std::string& cell, const std::string& reason, bool ok,
                       const std::string& detail = "") {
  return CertificateResult{cell, reason, ok, detail};
}

}  // namespace

std::vector<CertificateResult> nonexistence_certificates() {
  std::vector<CertificateResult> out;
  std::vector<Scalar> samples = {qs(1), qs(1, 2), qs(-3, 2), qs(3), qs(-2, 3),
                                 qs(7, 5), qs(-4), qs(5, 7)};

  {  // Hermite on the stable two-pole flag: leading coefficient never constant
    bool ok = true;
    for (const Scalar& a0 : samples)
      for (const Scalar& a1 : samples) {
        if ((a0 * a1 + a1 - a0).is_zero()) continue;
        Poly p = e11_23_operator(a0, a1, Scalar(1), Scalar(0)).coeff(2).as_poly();
        int expected = (a1 == a0 || a1 == a0 + Scalar(4)) ? 1 : 2;
        if (a0.is_zero() || a0 == Scalar(-2) || a1.is_zero() || a1 == Scalar(2)) continue;
        if (p.degree() != expected) ok = false;
      }
    for (const Scalar& a0 : samples) {
      for (const Scalar& a1 : {a0, a0 + Scalar(4)}) {
        if ((a0 * a1 + a1 - a0).is_zero() || a0.is_zero() || a0 == Scalar(-2)) continue;
        Poly p = e11_23_operator(a0, a1, Scalar(1), Scalar(0)).coeff(2).as_poly();
        if (p.degree() != 1) ok = false;
      }
    }
    out.push_back(cert("hermite / E11_23", "leading coefficient cannot be normalized to a constant",
                       ok));
  }
  {  // Hermite on the {1,3} two-pole flag: constant leading coefficient forces
     // the zero operator
    Mat m = {{qs(-1, 2), qs(-1, 2)}, {Scalar(1), Scalar(0)}};
    bool ok = nullspace(m).empty();
    out.push_back(
        cert("hermite / E11_13", "leading coefficient cannot be normalized to a constant", ok));
  }
  {  // Hermite on the {1,2} two-pole flag: the Hermite-shaped member has its
     // weight poles on the line; complex rescaling trades them for divergent
     // moments
    bool ok = true;
    for (const Scalar& t : {qs(1), qs(1, 2), qs(-2)}) {
      DiffOp op = e11_12_operator(Scalar(2) * t, t, t, Scalar(0));
      if (!op.coeff(2).is_constant()) { ok = false; continue; }
      SLForm sl = sl_form(op, Interval::real_line());
      Poly den = sl.W.prefactor().den();
      if (count_roots_closed(den, Endpoint::neg_inf(), Endpoint::pos_inf()) < 1) ok = false;
    }
    for (const Scalar& s : {qs(1), qs(1, 2), qs(3)}) {
      // rescaled weight e^{+2 s x^2} / (4 s x^2 + 1)^2
      Poly den({Scalar(1), Scalar(0), Scalar(4) * s});
      QuasiRational w = QuasiRational::exp_of(Poly({Scalar(0), Scalar(0), Scalar(2) * s})) *
                        QuasiRational(RatFun(Poly(Scalar(1)), den * den));
      if (moments_finite(w, Interval::real_line())) ok = false;
    }
    out.push_back(cert("hermite / E11_12",
                       "real form has a singular weight; imaginary form loses finite moments", ok));
  }
  {  // Hermite on one-pole flags: leading coefficient obstruction, or a real
     // weight pole for the monomial-type flag
    bool ok = true;
    for (const Scalar& a : samples) {
      if (!a.is_zero()) {
        if (e2a13_operator(a, Scalar(1), Scalar(0)).coeff(2).as_poly().degree() < 1) ok = false;
        if (e2b23_operator(a, Scalar(1), Scalar(0)).coeff(2).as_poly().degree() != 2) ok = false;
        if (a != Scalar(1) &&
            e2c23_operator(a, Scalar(1), Scalar(0)).coeff(2).as_poly().degree() != 2)
          ok = false;
      }
      if (e2a03_operator(Scalar(1), a, Scalar(0)).coeff(2).as_poly().degree() < 1) ok = false;
      if (e2a12_operator(a, Scalar(1), Scalar(0)).coeff(2).as_poly().degree() < 1) ok = false;
    }
    // constant-leading member of the {0,2} family: weight pole at the origin
    SLForm sl = sl_form(e2a02_operator(Scalar(0), Scalar(1), Scalar(1), Scalar(0)),
                        Interval::real_line());
    if (count_roots_closed(sl.W.prefactor().den(), Endpoint::neg_inf(), Endpoint::pos_inf()) < 1)
      ok = false;
    out.push_back(cert("hermite / one-pole flags",
                       "no constant leading coefficient, or a real weight pole", ok));
  }
  {  // Laguerre on the {1,2} two-pole flag
    bool ok = true;
    for (const Scalar& a : {qs(1, 2), qs(2), qs(-3, 2), qs(1)}) {
      // weight poles at a^2 + a and a^2 - a; at least one is nonnegative
      Poly den = lin(-(a * a + a), Scalar(1)) * lin(-(a * a - a), Scalar(1));
      if (count_roots_closed(den, Endpoint::finite(Scalar(0)), Endpoint::pos_inf()) < 1)
        ok = false;
    }
    for (const Scalar& s : {qs(1), qs(1, 4)}) {
      // imaginary modulus: weight e^{-x} x^{-s-1} / ((x+s)^2 + s)^2
      Poly den = Poly({s * s + s, Scalar(2) * s, Scalar(1)});
      QuasiRational w = laguerre_weight(-s - Scalar(1)) *
                        QuasiRational(RatFun(Poly(Scalar(1)), den * den));
      if (moments_finite(w, Interval::positive_halfline())) ok = false;
    }
    out.push_back(cert("laguerre / E11_12",
                       "real form has a positive weight pole; imaginary form loses finite moments",
                       ok));
  }
  {  // Laguerre on the {1,2} one-pole flag: the weight pole sits at x = 3/4
    Poly den = lin(qs(-3), qs(4));
    bool ok = count_roots_closed(den, Endpoint::finite(Scalar(0)), Endpoint::pos_inf()) >= 1;
    out.push_back(cert("laguerre / E2a_12", "weight singular inside the half-line", ok));
  }
  {  // Laguerre on the remaining one-pole flags: leading coefficient is never
     // linear
    bool ok = true;
    for (const Scalar& a : samples) {
      int d1 = e2a02_operator(a, Scalar(1), Scalar(1), Scalar(0)).coeff(2).as_poly().degree();
      if (d1 == 1) ok = false;
      if (!a.is_zero()) {
        if (e2b23_operator(a, Scalar(1), Scalar(0)).coeff(2).as_poly().degree() == 1) ok = false;
        if (e2c23_operator(a, Scalar(1), Scalar(0)).coeff(2).as_poly().degree() == 1) ok = false;
      }
    }
    if (e2a02_operator(Scalar(0), Scalar(1), Scalar(1), Scalar(0)).coeff(2).as_poly().degree() == 1)
      ok = false;
    out.push_back(cert("laguerre / E2a_02, E2b_23, E2c_23",
                       "leading coefficient cannot be normalized to x", ok));
  }
  {  // Jacobi on the {1,2} two-pole flag: sample the real flag moduli, derive
     // the exponents and the weight-pole positions from the affine map; each
     // sample is singular inside the interval or loses finite moments
    bool ok = true;
    std::vector<std::pair<Scalar, Scalar>> zs = {
        {qs(1, 4), qs(3, 4)}, {qs(2), qs(3)},     {qs(-1), qs(1, 2)},
        {qs(3, 2), qs(-1, 2)}, {qs(1, 5), qs(4, 5)}, {qs(5), qs(1, 4)},
        {qs(-2), qs(-3)},      {qs(1, 3), qs(-1, 4)}};
    for (const auto& [z1, z2] : zs) {
      if (z1 == z2 || (z1 + z2).is_zero()) continue;
      Scalar al = -Scalar(2) * (z1 - Scalar(1)) * z1 * (Scalar(2) * z2 - Scalar(1)) / (z1 - z2);
      Scalar be = Scalar(2) * (Scalar(2) * z1 - Scalar(1)) * z2 * (z2 - Scalar(1)) / (z1 - z2);
      // weight poles are the preimages of the flag poles under the chart
      Scalar x0 = (z2 - z1) / (z1 + z2);
      Scalar x1 = (Scalar(2) - z1 + z2) / (z1 + z2);
      bool divergent = !(al > Scalar(-1)) || !(be > Scalar(-1));
      Poly den = lin(-x0, Scalar(1)) * lin(-x1, Scalar(1));
      bool singular = count_roots_closed(den, Endpoint::finite(Scalar(-1)),
                                         Endpoint::finite(Scalar(1))) >= 1;
      if (!singular && !divergent) ok = false;
    }
    out.push_back(cert("jacobi / E11_12",
                       "weight singular inside the interval or moments diverge", ok));
  }
  {  // Jacobi on the {1,2} one-pole flag
    bool ok = true;
    for (const Scalar& z1 : {qs(1, 4), qs(-1, 4), qs(-1), qs(-3), qs(2)}) {
      if (z1 == qs(-1, 2)) continue;
      Scalar z2 = -z1 / (Scalar(2) * z1 + Scalar(1));
      Scalar al = qs(3, 2) * z1 - Scalar(1), be = qs(3, 2) * z2 - Scalar(1);
      Poly den = lin(z1, z1 + Scalar(1));
      QuasiRational w = jacobi_weight(al, be) *
                        QuasiRational(RatFun(Poly(Scalar(1)), den * den * den * den));
      bool singular = den.degree() > 0 &&
                      count_roots_closed(den, Endpoint::finite(Scalar(-1)),
                                         Endpoint::finite(Scalar(1))) >= 1;
      bool divergent = !moments_finite(w, Interval::finite(Scalar(-1), Scalar(1)));
      if (!singular && !divergent) ok = false;
    }
    out.push_back(cert("jacobi / E2a_12",
                       "weight is singular or the finite-moment condition fails", ok));
  }
  {  // Jacobi on the remaining one-pole flags: symmetric leading roots trap
     // the operator pole at the midpoint, or a double root blocks the form
    bool ok = true;
    for (const Scalar& a : samples) {
      Poly p2b = e2b23_operator(a, Scalar(1), Scalar(0)).coeff(2).as_poly();
      if (!p2b.coeff(1).is_zero() || p2b.coeff(0).is_zero()) ok = false;
      Poly p2c = e2c23_operator(a, Scalar(1), Scalar(0)).coeff(2).as_poly();
      if (!p2c.is_zero()) {
        Scalar disc = p2c.coeff(1) * p2c.coeff(1) - Scalar(4) * p2c.coeff(2) * p2c.coeff(0);
        if (!disc.is_zero()) ok = false;
      }
      Poly p2a = e2a02_operator(a, Scalar(1), Scalar(1), Scalar(0)).coeff(2).as_poly();
      if (!p2a.coeff(1).is_zero() || p2a.coeff(0).is_zero()) ok = false;
    }
    out.push_back(cert("jacobi / E2a_02, E2b_23, E2c_23",
                       "operator pole is trapped between the leading roots, or the leading "
                       "coefficient is a perfect square",
                       ok));
  }
  return out;
}

}  // namespace xops
