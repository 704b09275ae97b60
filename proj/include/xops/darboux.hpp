// Algebraic Darboux transformations: rational factorizations T = B A + l0
// seeded by a quasi-rational eigenfunction, partner operators, dual weight
// data, the explicit first-order intertwiners of the flag catalog, and
// multi-step chains down to a classical operator.
#pragma once

#include "xops/classical.hpp"
#include "xops/flags.hpp"
#include "xops/quadrature.hpp"

namespace xops {

struct limit_parameter_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Factorization {
  DiffOp t;       // T = B A + lambda0
  DiffOp a, b;    // first order: A = gauge (y' - w y), B = (p/gauge)(y' - what y)
  Scalar lambda0; // verified eigenvalue of phi
  QuasiRational phi;
  RatFun gauge;
};

struct PartnerResult {
  Factorization fact;
  DiffOp partner;  // A B + lambda0
};

// Factor t through the eigenfunction phi. The gauge defaults to the monic
// denominator of phi'/phi, refined so images of the source basis have no
// common factor and the lowest-degree image is monic.
PartnerResult partner(const DiffOp& t, const QuasiRational& phi,
                      std::optional<RatFun> gauge = std::nullopt,
                      const std::vector<Poly>* source_basis = nullptr);

// dual weight and dual factorization eigenfunction:
// What/bhat = W/gauge and bhat*phihat = 1/(W phi)
std::pair<QuasiRational, QuasiRational> dual_data(const Factorization& f,
                                                  const QuasiRational& w);

// |int A[f] g What + int B[g] f W| when the boundary term vanishes
Real adjoint_relation_residual(const Factorization& fact, const Poly& f, const Poly& g,
                               const QuasiRational& w, const QuasiRational& what,
                               const Interval& iv, const QuadratureConfig& cfg = {});

enum class StepKind { Isospectral, StateDeleting, StateAdding };
std::string to_string(StepKind k);

struct DarbouxStep {
  StepKind kind;
  Factorization fact;
  DiffOp partner;
  std::vector<Poly> source_basis, target_basis;
  QuasiRational source_weight, target_weight;
  QuasiRational phi_dual;
};

struct Chain {
  std::vector<DarbouxStep> steps;
  DiffOp classical_end, exceptional_end;
  ClassicalParams classical_params;
};

StepKind detect_step_kind(const DiffOp& a, const DiffOp& b,
                          const std::vector<Poly>& source_basis,
                          const std::vector<Poly>& target_basis, int depth);

enum class IntertwinerCase {
  X1,        // (y'-ay)/z with partner z y' - (az+1) y
  E11_23,    // two-pole generic pair
  E11_13,    // wronskian against the degree-1 flag element
  E11_03,    // y'/(z(z-1))
  E11_12,    // wronskian against 2z-1
  E2a,       // (y'-a01 y)/z + a01 y'
  E2aZero,   // y'/z (a01 = 0 branch)
  E2b,       // (y'-ay)/z + K y', K^2 = a^2+3
  E2c,       // (y'-ay)/z + (a-1)/2 y'
};

struct CatalogIntertwiner {
  DiffOp a;
  std::optional<DiffOp> b;
  FlagSpec source, target;  // a maps source into target
  // b maps b_source into b_target; defaults to (target, source) when unset
  std::optional<FlagSpec> b_source, b_target;
  std::optional<Poly> kernel;  // flag element annihilated by a, when one exists
  int a_degree_shift = 0;
  std::optional<int> b_degree_shift;
};
CatalogIntertwiner catalog_intertwiners(IntertwinerCase c, const std::vector<Scalar>& params);

int step_count(X2Class cls);
int step_count(const FlagSpec& flag);

// chain from a classical operator through the given catalog eigenfunctions
// (kind, n), transforming later seeds through earlier steps
Chain chain_from_classical(const ClassicalParams& cp,
                           const std::vector<std::pair<int, int>>& phis,
                           const Interval& iv, int depth = 10);

}  // namespace xops
