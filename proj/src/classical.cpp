#include "xops/classical.hpp"

namespace xops {

Scalar binomial_scalar(const Scalar& t, int k) {
  if (k < 0) return Scalar(0);
  Scalar acc(1);
  for (int j = 0; j < k; ++j) acc *= (t - Scalar(j)) / Scalar(k - j);
  return acc;
}

namespace {

Poly hermite_poly(int n) {
  Poly hm1, h(Scalar(1));
  for (int k = 0; k < n; ++k) {
    Poly next = Poly::x() * h * Scalar(2) - hm1 * Scalar(2 * k);
    hm1 = h;
    h = next;
  }
  return h;
}

Poly laguerre_poly(const Scalar& alpha, int n) {
  // sum_k binom(n+alpha, n-k) (-x)^k / k!
  Poly out;
  Scalar kfact(1);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) kfact *= Scalar(k);
    Scalar c = binomial_scalar(alpha + Scalar(n), n - k) / kfact;
    if (k % 2) c = -c;
    out += Poly::monomial(k, c);
  }
  return out;
}

Poly jacobi_poly(const Scalar& alpha, const Scalar& beta, int n) {
  // sum_s binom(n+alpha, n-s) binom(n+beta, s) ((x-1)/2)^s ((x+1)/2)^(n-s)
  Scalar half = Scalar(1) / Scalar(2);
  Poly xm1({-half, half}), xp1({half, half});
  std::vector<Poly> pm{Poly(Scalar(1))}, pp{Poly(Scalar(1))};
  for (int i = 1; i <= n; ++i) {
    pm.push_back(pm.back() * xm1);
    pp.push_back(pp.back() * xp1);
  }
  Poly out;
  for (int s = 0; s <= n; ++s) {
    Scalar c = binomial_scalar(alpha + Scalar(n), n - s) * binomial_scalar(beta + Scalar(n), s);
    out += pm[s] * pp[n - s] * c;
  }
  return out;
}

}  // namespace

Poly classical_poly(const ClassicalParams& params, int n) {
  if (n < 0) throw std::invalid_argument("negative polynomial index");
  switch (params.family) {
    case Family::Hermite: return hermite_poly(n);
    case Family::Laguerre: return laguerre_poly(params.alpha, n);
    case Family::Jacobi: return jacobi_poly(params.alpha, params.beta, n);
  }
  throw std::logic_error("unreachable");
}

ClassicalOperator classical_operator(const ClassicalParams& params) {
  switch (params.family) {
    case Family::Hermite:
      return {Poly(Scalar(1)), Poly({Scalar(0), Scalar(-2)})};
    case Family::Laguerre:
      return {Poly::x(), Poly({params.alpha + Scalar(1), Scalar(-1)})};
    case Family::Jacobi:
      return {Poly({Scalar(1), Scalar(0), Scalar(-1)}),
              Poly({params.beta - params.alpha, -(Scalar(2) + params.alpha + params.beta)})};
  }
  throw std::logic_error("unreachable");
}

Scalar classical_eigenvalue(const ClassicalParams& params, int n) {
  Scalar sn(n);
  switch (params.family) {
    case Family::Hermite: return Scalar(-2) * sn;
    case Family::Laguerre: return -sn;
    case Family::Jacobi: return -sn * (sn + params.alpha + params.beta + Scalar(1));
  }
  throw std::logic_error("unreachable");
}

namespace {

// real polynomial part of the Hermite functions with imaginary argument,
// normalized so kind-2 n=2 gives -4x^2-2
Poly hermite_imag_poly(int n) {
  // h_0 = 1, h_1 = 2x, h_{k+1} = 2x h_k + 2k h_{k-1}; result (-1)^{floor(n/2)} h_n
  Poly hm1, h(Scalar(1));
  for (int k = 0; k < n; ++k) {
    Poly next = Poly::x() * h * Scalar(2) + hm1 * Scalar(2 * k);
    hm1 = h;
    h = next;
  }
  return ((n / 2) % 2) ? -h : h;
}

}  // namespace

QuasiEigenfunction quasi_eigenfunction(const ClassicalParams& params, int kind, int n) {
  if (n < 0) throw std::invalid_argument("negative index");
  const Scalar one(1);
  Poly x = Poly::x();
  switch (params.family) {
    case Family::Hermite: {
      if (kind == 1) return {QuasiRational(classical_poly(params, n)), Scalar(-2 * n)};
      if (kind == 2) {
        QuasiRational f = QuasiRational::exp_of(x * x) * QuasiRational(hermite_imag_poly(n));
        return {f, Scalar(2 * (n + 1))};
      }
      throw std::invalid_argument("Hermite eigenfunction kind must be 1 or 2");
    }
    case Family::Laguerre: {
      const Scalar& a = params.alpha;
      Scalar sn(n);
      switch (kind) {
        case 1:
          return {QuasiRational(laguerre_poly(a, n)), -sn};
        case 2: {
          QuasiRational g = QuasiRational(laguerre_poly(-a, n)) *
                            QuasiRational::power(x, -a.as_rational());
          return {g, a - sn};
        }
        case 3: {
          Poly ln = laguerre_poly(a, n).compose_affine(Scalar(-1), Scalar(0));
          return {QuasiRational::exp_of(x) * QuasiRational(ln), a + sn + one};
        }
        case 4: {
          Poly ln = laguerre_poly(-a, n).compose_affine(Scalar(-1), Scalar(0));
          QuasiRational g = QuasiRational::exp_of(x) * QuasiRational(ln) *
                            QuasiRational::power(x, -a.as_rational());
          return {g, sn + one};
        }
      }
      throw std::invalid_argument("Laguerre eigenfunction kind must be 1..4");
    }
    case Family::Jacobi: {
      const Scalar &a = params.alpha, &b = params.beta;
      Scalar sn(n);
      Poly omx({Scalar(1), Scalar(-1)});  // 1-x
      Poly opx({Scalar(1), Scalar(1)});   // 1+x
      switch (kind) {
        case 1:
          return {QuasiRational(jacobi_poly(a, b, n)), -sn * (sn + a + b + one)};
        case 2: {
          QuasiRational g = QuasiRational(jacobi_poly(a, -b, n)) *
                            QuasiRational::power(opx, -b.as_rational());
          return {g, (b - sn) * (sn + a + one)};
        }
        case 3: {
          QuasiRational g = QuasiRational(jacobi_poly(-a, b, n)) *
                            QuasiRational::power(omx, -a.as_rational());
          return {g, (a - sn) * (sn + b + one)};
        }
        case 4: {
          QuasiRational g = QuasiRational(jacobi_poly(-a, -b, n)) *
                            QuasiRational::power(omx, -a.as_rational()) *
                            QuasiRational::power(opx, -b.as_rational());
          return {g, (sn + one) * (a + b - sn)};
        }
      }
      throw std::invalid_argument("Jacobi eigenfunction kind must be 1..4");
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace xops
