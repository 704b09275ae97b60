// JSON records (schema xops-v1): exact scalars as "p/q" strings (or
// "a+b*sqrt(d)" in extension contexts), polynomials as coefficient arrays in
// ascending degree. parse(serialize(x)) == x exactly.
#pragma once

#include "json.hpp"

#include "xops/families.hpp"

namespace xops {

inline constexpr const char* kSchemaVersion = "xops-v1";

nlohmann::json to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RatFun& f);
RatFun ratfun_from_json(const nlohmann::json& j);

nlohmann::json to_json(const QuasiRational& f);
QuasiRational quasirational_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DiffOp& op);
DiffOp diffop_from_json(const nlohmann::json& j);

nlohmann::json family_record(const FamilySpec& spec);
nlohmann::json system_record(const GeneratedSystem& sys);
nlohmann::json report_record(const OrthogonalityReport& rep, unsigned digits);

}  // namespace xops
