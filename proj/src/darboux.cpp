#include "xops/darboux.hpp"

#include <algorithm>

namespace xops {

PartnerResult partner(const DiffOp& t, const QuasiRational& phi, std::optional<RatFun> gauge,
                      const std::vector<Poly>* source_basis) {
  if (t.order() != 2) throw std::invalid_argument("partner needs a second-order operator");
  if (phi.is_zero()) throw std::invalid_argument("zero factorization eigenfunction");
  RatFun ratio = apply_ratio(t, phi);
  if (!ratio.is_constant())
    throw std::invalid_argument("phi is not an eigenfunction: T[phi]/phi = " + ratio.str());
  Scalar lambda0 = ratio.as_constant();
  RatFun w = phi.log_derivative();

  RatFun b;
  if (gauge) {
    if (gauge->is_zero()) throw std::invalid_argument("zero factorization gauge");
    b = *gauge;
  } else {
    b = RatFun(w.den());
    std::vector<Poly> basis;
    if (source_basis) basis = *source_basis;
    else
      for (int j = 0; j < 6; ++j) basis.push_back(Poly::monomial(j));
    // primitivity: divide out the common factor of the images, then make the
    // lowest-degree nonzero image monic
    DiffOp a0 = DiffOp::first_order(b, w);
    Poly g;
    for (const auto& y : basis) {
      RatFun img = apply(a0, y);
      if (img.is_zero()) continue;
      if (!img.is_polynomial()) { g = Poly(Scalar(1)); break; }
      g = g.is_zero() ? img.as_poly().monic() : gcd(g, img.as_poly());
      if (g.degree() == 0) break;
    }
    if (g.degree() > 0) b = b / RatFun(g);
    DiffOp a1 = DiffOp::first_order(b, w);
    const Poly* lowest = nullptr;
    Poly lowest_img;
    for (const auto& y : basis) {
      RatFun img = apply(a1, y);
      if (img.is_zero() || !img.is_polynomial()) continue;
      Poly ip = img.as_poly();
      if (!lowest || ip.degree() < lowest_img.degree()) {
        lowest = &y;
        lowest_img = ip;
      }
    }
    if (lowest) b = b / RatFun(lowest_img.leading());
  }

  const RatFun& p = t.coeff(2);
  const RatFun& q = t.coeff(1);
  RatFun bhat = p / b;
  RatFun what = -w - q / p + b.derivative() / b;
  Factorization f{t, DiffOp::first_order(b, w), DiffOp::first_order(bhat, what), lambda0, phi, b};
  if (!check_factorization(t, f.a, f.b, lambda0))
    throw std::logic_error("factorization identity failed");
  DiffOp part = compose(f.a, f.b).plus_constant(lambda0);
  return PartnerResult{std::move(f), std::move(part)};
}

std::pair<QuasiRational, QuasiRational> dual_data(const Factorization& f,
                                                  const QuasiRational& w) {
  RatFun bhat = f.t.coeff(2) / f.gauge;
  QuasiRational what = w * QuasiRational(bhat / f.gauge);
  QuasiRational phihat = (w * f.phi * QuasiRational(bhat)).inverse();
  return {what, phihat};
}

Real adjoint_relation_residual(const Factorization& fact, const Poly& f, const Poly& g,
                               const QuasiRational& w, const QuasiRational& what,
                               const Interval& iv, const QuadratureConfig& cfg) {
  QuasiRational lhs1 = QuasiRational(apply(fact.a, f) * RatFun(g)) * what;
  QuasiRational lhs2 = QuasiRational(apply(fact.b, g) * RatFun(f)) * w;
  // boundary term (P/gauge) f g with P = p W
  QuasiRational boundary =
      w * QuasiRational(fact.t.coeff(2) / fact.gauge) * QuasiRational(RatFun(f * g));
  if (endpoint_limit(boundary, iv.lo) != EndpointLimit::Zero ||
      endpoint_limit(boundary, iv.hi) != EndpointLimit::Zero)
    throw std::domain_error("boundary term does not vanish");
  IntegrationResult r1 = integrate(lhs1, iv, cfg);
  IntegrationResult r2 = integrate(lhs2, iv, cfg);
  if (r1.divergent || r2.divergent) throw std::domain_error("divergent adjoint integral");
  return abs(r1.value + r2.value);
}

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::Isospectral: return "isospectral";
    case StepKind::StateDeleting: return "state-deleting";
    case StepKind::StateAdding: return "state-adding";
  }
  throw std::logic_error("unreachable");
}

namespace {

bool maps_into_prefix(const DiffOp& op, const std::vector<Poly>& src,
                      const std::vector<Poly>& dst, int shift, int depth) {
  // op[src_i] in span(dst_1..dst_{i+shift}) for i = 1..depth
  int dim = 0;
  for (const auto& p : dst) dim = std::max(dim, p.degree() + 2);
  for (const auto& p : src) dim = std::max(dim, p.degree() + 2);
  dim += op.order() + 2;
  auto tovec = [&](const Poly& p) {
    Vec v(dim, Scalar(0));
    for (int k = 0; k <= p.degree(); ++k) v[k] = p.coeff(k);
    return v;
  };
  for (int i = 1; i <= depth; ++i) {
    int upto = i + shift;
    if (upto < 0) return false;
    if (i > int(src.size()) || upto > int(dst.size())) break;
    RatFun img = apply(op, src[i - 1]);
    if (img.is_zero()) continue;
    if (!img.is_polynomial()) return false;
    std::vector<Vec> span;
    for (int j = 0; j < upto; ++j) span.push_back(tovec(dst[j]));
    if (!in_span(span, tovec(img.as_poly()))) return false;
  }
  return true;
}

bool kills_first(const DiffOp& op, const std::vector<Poly>& basis) {
  return !basis.empty() && apply(op, basis[0]).is_zero();
}

}  // namespace

StepKind detect_step_kind(const DiffOp& a, const DiffOp& b, const std::vector<Poly>& src,
                          const std::vector<Poly>& dst, int depth) {
  if (kills_first(a, src) && maps_into_prefix(a, src, dst, -1, depth) &&
      maps_into_prefix(b, dst, src, +1, depth))
    return StepKind::StateDeleting;
  if (kills_first(b, dst) && maps_into_prefix(b, dst, src, -1, depth) &&
      maps_into_prefix(a, src, dst, +1, depth))
    return StepKind::StateAdding;
  if (maps_into_prefix(a, src, dst, 0, depth) && maps_into_prefix(b, dst, src, 0, depth))
    return StepKind::Isospectral;
  throw std::logic_error("step matches no index-shift pattern");
}

int step_count(X2Class cls) {
  switch (cls) {
    case X2Class::E11_23:
    case X2Class::E11_03: return 1;
    default: return 2;
  }
}

int step_count(const FlagSpec& flag) {
  if (flag.variant == FlagVariant::E1) return 1;
  return step_count(classify_x2_flag(flag).cls);
}

CatalogIntertwiner catalog_intertwiners(IntertwinerCase c, const std::vector<Scalar>& params) {
  Poly z = Poly::x();
  Poly one(Scalar(1));
  RatFun invz(one, z);
  RatFun invzm1(one, Poly({Scalar(-1), Scalar(1)}));
  auto lin = [](const Scalar& c0, const Scalar& c1) { return Poly({c0, c1}); };
  switch (c) {
    case IntertwinerCase::X1: {
      const Scalar& a = params.at(0);
      CatalogIntertwiner out;
      out.a = DiffOp::first_order(invz, RatFun(a));
      out.b = DiffOp({-RatFun(lin(Scalar(1), a)), RatFun(z)});
      out.source = FlagSpec::e1(a);
      out.target = FlagSpec::standard();
      out.a_degree_shift = -1;
      out.b_degree_shift = 1;
      if (a.is_zero()) out.kernel = Poly(Scalar(1));
      return out;
    }
    case IntertwinerCase::E11_23: {
      const Scalar &a0 = params.at(0), &a1 = params.at(1);
      if ((a0 * a1 + a1 - a0).is_zero())
        throw std::invalid_argument("degenerate two-pole moduli");
      CatalogIntertwiner out;
      out.a = DiffOp::first_order(invz, RatFun(a0)) * a1 -
              DiffOp::first_order(invzm1, RatFun(a1)) * a0;
      Poly bq = z * lin(Scalar(-1), Scalar(1)) * lin(Scalar(2) - a1, a1 - a0 - Scalar(4));
      Poly br = Poly::monomial(2, a0 * a1 + a1 - a0) + lin(Scalar(2) - a1, (Scalar(2) - a1) * a0);
      out.b = DiffOp({RatFun(br), RatFun(bq)});
      out.source = FlagSpec::e11(a0, a1);
      out.target = FlagSpec::standard();
      out.a_degree_shift = -2;
      out.b_degree_shift = 2;
      return out;
    }
    case IntertwinerCase::E11_13: {
      const Scalar& a0 = params.at(0);
      if (a0.is_zero() || a0 == Scalar(-1) || a0 == Scalar(-2))
        throw std::invalid_argument("modulus outside the one-three stratum");
      Scalar a1 = a0 / (a0 + Scalar(1));
      CatalogIntertwiner out;
      // a1 W[y, 1 + a0 z] / (z(1-z))
      Poly den = z * lin(Scalar(1), Scalar(-1));
      out.a = DiffOp({RatFun(Poly(a1 * a0), den), RatFun(-(Poly({Scalar(1), a0}) * a1), den)});
      out.source = FlagSpec::e11(a0, a1);
      // the image satisfies A[y]'(-1/a0) = a1 (2 + a0) A[y](-1/a0)
      out.target = FlagSpec::e1(a1 * (Scalar(2) + a0), -a0.inverse());
      out.kernel = Poly({Scalar(1), a0});
      out.a_degree_shift = -1;
      return out;
    }
    case IntertwinerCase::E11_03: {
      CatalogIntertwiner out;
      Poly den = z * lin(Scalar(-1), Scalar(1));
      out.a = DiffOp({RatFun(), RatFun(one, den)});
      out.source = FlagSpec::e11(Scalar(0), Scalar(0));
      out.target = FlagSpec::standard();
      out.kernel = Poly(Scalar(1));
      out.a_degree_shift = -3;
      return out;
    }
    case IntertwinerCase::E11_12: {
      CatalogIntertwiner out;
      Scalar a1(2);
      Poly den = z * lin(Scalar(1), Scalar(-1));
      // a1 W[y, 2z-1]/(z(1-z))
      out.a = DiffOp({RatFun(Poly(a1 * Scalar(2)), den),
                      RatFun(-(lin(Scalar(-1), Scalar(2)) * a1), den)});
      out.source = FlagSpec::e11(Scalar(-2), Scalar(2));
      out.target = FlagSpec::e1(Scalar(0), Scalar(1) / Scalar(2));
      out.kernel = lin(Scalar(-1), Scalar(2));
      out.a_degree_shift = -1;
      return out;
    }
    case IntertwinerCase::E2a: {
      const Scalar &a01 = params.at(0), &a23 = params.at(1);
      if (a01.is_zero()) throw std::invalid_argument("use the a01 = 0 branch");
      CatalogIntertwiner out;
      out.a = DiffOp({RatFun(Poly(-a01), z), invz + RatFun(a01)});
      out.source = FlagSpec::e2(a01, Scalar(0), a23);
      out.target = FlagSpec::e11_at((a01 + Scalar(3) * a23) / Scalar(2), a01, Scalar(0),
                                    -a01.inverse());
      out.kernel = Poly({Scalar(1), a01});
      out.a_degree_shift = 0;
      return out;
    }
    case IntertwinerCase::E2aZero: {
      const Scalar& a23 = params.at(0);
      CatalogIntertwiner out;
      out.a = DiffOp({RatFun(), invz});
      out.source = FlagSpec::e2(Scalar(0), Scalar(0), a23);
      out.target = FlagSpec::e1(Scalar(3) * a23 / Scalar(2));
      out.kernel = Poly(Scalar(1));
      out.a_degree_shift = -2;
      return out;
    }
    case IntertwinerCase::E2b: {
      const Scalar& a = params.at(0);
      Scalar k = scalar_sqrt(a * a + Scalar(3));
      CatalogIntertwiner out;
      out.a = DiffOp({RatFun(Poly(-a), z), invz + RatFun(k)});
      out.b = DiffOp({-RatFun(lin(Scalar(3), a - Scalar(2) * k)),
                      RatFun(z * lin(Scalar(1), -k))});
      out.source = FlagSpec::e2(a, a, a);
      out.target = FlagSpec::e1(a + k);
      out.a_degree_shift = -1;
      out.b_degree_shift = 1;
      return out;
    }
    case IntertwinerCase::E2c: {
      const Scalar& a = params.at(0);
      if (a.is_zero()) throw std::invalid_argument("modulus must be nonzero");
      CatalogIntertwiner out;
      Scalar half = Scalar(1) / Scalar(2);
      out.a = DiffOp({RatFun(Poly(-a), z), invz + RatFun((a - Scalar(1)) * half)});
      out.b = DiffOp({-RatFun(lin(Scalar(3), Scalar(2) * a - Scalar(1))),
                      RatFun(z * lin(Scalar(1), a - Scalar(1)))});
      out.source = FlagSpec::e2(a, -a * (a + Scalar(1)) / Scalar(6), Scalar(1));
      out.target = FlagSpec::e1(Scalar(1));
      // the displayed partner raises from the slope-(a+1)/2 flag (its jet
      // conditions force that source), not from the image flag of a
      out.b_source = FlagSpec::e1((a + Scalar(1)) * half);
      out.b_target = out.source;
      out.a_degree_shift = -1;
      out.b_degree_shift = 1;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

Chain chain_from_classical(const ClassicalParams& cp,
                           const std::vector<std::pair<int, int>>& phis, const Interval& iv,
                           int depth) {
  Chain chain;
  chain.classical_params = cp;
  ClassicalOperator cop = classical_operator(cp);
  DiffOp t0 = DiffOp::second_order(RatFun(cop.p), RatFun(cop.q), RatFun());
  chain.classical_end = t0;

  std::vector<Poly> basis;
  for (int j = 0; j < depth; ++j) basis.push_back(Poly::monomial(j));
  QuasiRational weight = sl_form(t0, iv).W;

  std::vector<QuasiRational> seeds;
  for (auto [kind, n] : phis) seeds.push_back(quasi_eigenfunction(cp, kind, n).fn);

  DiffOp tcur = t0;
  for (size_t i = 0; i < seeds.size(); ++i) {
    PartnerResult pr = partner(tcur, seeds[i], std::nullopt, &basis);
    auto [what, phihat] = dual_data(pr.fact, weight);

    std::vector<Poly> target;
    if (phihat.is_rational() && phihat.as_ratfun().is_polynomial())
      target.push_back(phihat.as_ratfun().as_poly().monic());
    for (const auto& y : basis) {
      RatFun img = apply(pr.fact.a, y);
      if (img.is_zero()) continue;
      if (!img.is_polynomial())
        throw std::logic_error("intertwined image left the polynomial flag");
      target.push_back(img.as_poly());
    }
    std::sort(target.begin(), target.end(),
              [](const Poly& x, const Poly& y) { return x.degree() < y.degree(); });

    DarbouxStep step;
    step.fact = pr.fact;
    step.partner = pr.partner;
    step.source_basis = basis;
    step.target_basis = target;
    step.source_weight = weight;
    step.target_weight = what;
    step.phi_dual = phihat;
    step.kind = detect_step_kind(pr.fact.a, pr.fact.b, basis, target,
                                 std::max(4, depth - 2 - int(i)));
    chain.steps.push_back(step);

    for (size_t j = i + 1; j < seeds.size(); ++j) seeds[j] = apply(pr.fact.a, seeds[j]);
    tcur = pr.partner;
    basis = target;
    weight = what;
  }
  chain.exceptional_end = tcur;
  return chain;
}

}  // namespace xops
