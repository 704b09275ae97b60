// High-precision numerical verification: evaluation of exact data in MPFR
// arithmetic, double-exponential quadrature on finite/semi-infinite/infinite
// intervals, endpoint-behavior analysis, orthogonality reports.
#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <functional>

#include "xops/diffop.hpp"

namespace xops {

using Real =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

// scoped working-precision change (decimal digits)
struct PrecisionGuard {
  explicit PrecisionGuard(unsigned digits10);
  ~PrecisionGuard();
  unsigned previous;
};

Real scalar_to_real(const Scalar& s);
Real poly_eval_real(const Poly& p, const Real& x);
Real ratfun_eval_real(const RatFun& f, const Real& x);
// throws std::domain_error when a fractional power has a negative base
Real quasirational_eval_real(const QuasiRational& f, const Real& x);

struct QuadratureConfig {
  unsigned decimal_digits = 50;
  unsigned max_levels = 15;
  unsigned guard_digits = 25;
};

struct IntegrationResult {
  Real value;
  Real error_estimate;
  bool converged = false;
  bool divergent = false;
};

IntegrationResult integrate(const QuasiRational& f, const Interval& iv,
                            const QuadratureConfig& cfg = {});
IntegrationResult integrate_fn(const std::function<Real(const Real&)>& f,
                               const Interval& iv, const QuadratureConfig& cfg,
                               const std::vector<Scalar>& extra_split_points = {});

// symbolic limit classification of |f| at an interval end
enum class EndpointLimit { Zero, Finite, Divergent };
EndpointLimit endpoint_limit(const QuasiRational& f, const Endpoint& e);

// p(x) W(x) -> 0 at both ends
bool boundary_vanishing(const SLForm& sl);
// all moments of the weight are finite on the interval
bool moments_finite(const QuasiRational& weight, const Interval& iv);

// |integral of (T[f] g - T[g] f) W| over the interval
Real green_symmetry_residual(const DiffOp& t, const Poly& f, const Poly& g,
                             const SLForm& sl, const QuadratureConfig& cfg = {});

struct OrthogonalityReport {
  std::vector<int> indices;
  std::vector<std::vector<Real>> gram;  // normalized: diag 1
  Real max_offdiag;
  std::vector<Real> norms;  // squared norms
  Real moment0;
  bool all_converged = true;
};
OrthogonalityReport orthogonality_core(const std::vector<std::pair<int, Poly>>& polys,
                                       const QuasiRational& weight, const Interval& iv,
                                       const QuadratureConfig& cfg = {});

}  // namespace xops
