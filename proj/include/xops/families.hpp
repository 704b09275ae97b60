// Registry of Sturm-Liouville orthogonal polynomial systems: the three
// classical families, the codimension-1 Laguerre and Jacobi systems, and the
// twelve codimension-2 systems, each with weight, operator, generator,
// intertwiners, eigenvalues, parameter domain and index set; plus the
// machine-checked non-existence certificates for the excluded cells.
#pragma once

#include <functional>
#include <map>

#include "xops/darboux.hpp"

namespace xops {

using ParamMap = std::map<std::string, Scalar>;

struct inadmissible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FamilySpec {
  std::string id;
  std::string description;
  Family base = Family::Hermite;
  int codimension = 0;
  std::string flag_label;  // "classical", "E1", or an X2 class label
  int steps = 0;           // Darboux steps from a classical operator
  std::vector<std::string> param_names;
  Interval interval;
  std::vector<int> skipped_degrees;

  std::function<std::pair<bool, std::string>(const ParamMap&)> region;
  std::function<DiffOp(const ParamMap&)> op;
  std::function<Poly(const ParamMap&)> xi;  // weight denominator factor (constant 1 if none)
  int xi_power = 0;
  std::function<Scalar(const ParamMap&, int)> eigenvalue;
  std::function<bool(int)> in_index_set;
  int min_index = 0;

  // generation: y_n = b_op[classical(b_source, n - b_shift)] except at the
  // listed special indices
  std::function<DiffOp(const ParamMap&)> b_op;  // absent for classical families
  std::function<ClassicalParams(const ParamMap&)> b_source;
  int b_shift = 0;
  std::map<int, std::function<Poly(const ParamMap&)>> specials;

  // lowering intertwiner with its displayed eigenfactor:
  // a_op[y_n] = a_factor(n) * classical(a_target, n - b_shift)
  std::function<DiffOp(const ParamMap&)> a_op;
  std::function<Scalar(const ParamMap&, int)> a_factor;
  std::function<ClassicalParams(const ParamMap&)> a_target;

  // chain data: terminal classical operator and factorization seeds
  std::function<ClassicalParams(const ParamMap&)> chain_classical;
  std::vector<std::pair<int, int>> chain_phis;

  std::vector<ParamMap> default_samples;

  bool is_classical() const { return codimension == 0; }
};

struct GeneratedSystem {
  std::string family_id;
  ParamMap params;
  std::vector<std::pair<int, Poly>> polys;
  std::vector<Scalar> eigenvalues;
  DiffOp op;
  QuasiRational weight;
  Interval interval;
};

const std::vector<FamilySpec>& registry();
const FamilySpec& family_by_id(const std::string& id);

std::pair<bool, std::string> admissible(const FamilySpec& spec, const ParamMap& params);
QuasiRational family_weight(const FamilySpec& spec, const ParamMap& params);
DiffOp family_operator(const FamilySpec& spec, const ParamMap& params);
GeneratedSystem generate(const FamilySpec& spec, const ParamMap& params, int n_max);
Poly generate_one(const FamilySpec& spec, const ParamMap& params, int n);
bool intertwine_check(const FamilySpec& spec, const ParamMap& params, int n);

Chain build_chain(const FamilySpec& spec, const ParamMap& params);

struct CertificateResult {
  std::string cell;
  std::string reason;
  bool verified = false;
  std::string detail;
};
std::vector<CertificateResult> nonexistence_certificates();

OrthogonalityReport orthogonality_report(const GeneratedSystem& system,
                                         const QuadratureConfig& cfg = {});

}  // namespace xops
