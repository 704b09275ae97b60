#include "xops/serialize.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <sstream>

namespace xops {

using nlohmann::json;

json to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const json& j) {
  return parse_scalar_or_throw(j.get<std::string>());
}

json to_json(const Poly& p) {
  json arr = json::array();
  for (int k = 0; k <= p.degree(); ++k) arr.push_back(to_json(p.coeff(k)));
  return arr;
}

Poly poly_from_json(const json& j) {
  std::vector<Scalar> c;
  for (const auto& e : j) c.push_back(scalar_from_json(e));
  return Poly(std::move(c));
}

json to_json(const RatFun& f) {
  return json{{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

RatFun ratfun_from_json(const json& j) {
  return RatFun(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

json to_json(const QuasiRational& f) {
  json powers = json::array();
  for (const auto& p : f.powers()) {
    std::ostringstream ex;
    ex << p.exponent;
    powers.push_back(json{{"base", to_json(p.base)}, {"exponent", ex.str()}});
  }
  return json{{"prefactor", to_json(f.prefactor())},
              {"exp", to_json(f.exp_arg())},
              {"powers", powers}};
}

QuasiRational quasirational_from_json(const json& j) {
  std::vector<PowerFactor> powers;
  for (const auto& p : j.at("powers")) {
    Rational e(p.at("exponent").get<std::string>());
    e.canonicalize();
    powers.push_back({poly_from_json(p.at("base")), e});
  }
  return QuasiRational(ratfun_from_json(j.at("prefactor")), poly_from_json(j.at("exp")),
                       std::move(powers));
}

json to_json(const DiffOp& op) {
  json arr = json::array();
  for (int k = 0; k <= op.order(); ++k) arr.push_back(to_json(op.coeff(k)));
  return json{{"coeffs", arr}};
}

DiffOp diffop_from_json(const json& j) {
  std::vector<RatFun> c;
  for (const auto& e : j.at("coeffs")) c.push_back(ratfun_from_json(e));
  return DiffOp(std::move(c));
}

namespace {

json interval_record(const Interval& iv) {
  auto end = [](const Endpoint& e) -> json {
    if (e.is_finite()) return e.value->str();
    return e.infinity_sign > 0 ? "+inf" : "-inf";
  };
  return json{{"lo", end(iv.lo)}, {"hi", end(iv.hi)}};
}

}  // namespace

json family_record(const FamilySpec& spec) {
  json j{{"schema", kSchemaVersion},
         {"id", spec.id},
         {"description", spec.description},
         {"base", spec.base == Family::Hermite    ? "hermite"
                  : spec.base == Family::Laguerre ? "laguerre"
                                                  : "jacobi"},
         {"codimension", spec.codimension},
         {"flag", spec.flag_label},
         {"steps", spec.steps},
         {"parameters", spec.param_names},
         {"interval", interval_record(spec.interval)},
         {"skipped_degrees", spec.skipped_degrees},
         {"min_index", spec.min_index}};
  json samples = json::array();
  for (const auto& pm : spec.default_samples) {
    json s = json::object();
    for (const auto& [k, v] : pm) s[k] = v.str();
    samples.push_back(s);
  }
  j["default_samples"] = samples;
  return j;
}

json system_record(const GeneratedSystem& sys) {
  json polys = json::array();
  for (size_t i = 0; i < sys.polys.size(); ++i) {
    polys.push_back(json{{"n", sys.polys[i].first},
                         {"coeffs", to_json(sys.polys[i].second)},
                         {"eigenvalue", to_json(sys.eigenvalues[i])}});
  }
  json params = json::object();
  for (const auto& [k, v] : sys.params) params[k] = v.str();
  return json{{"schema", kSchemaVersion}, {"family", sys.family_id},
              {"params", params},         {"polynomials", polys},
              {"operator", to_json(sys.op)}, {"weight", to_json(sys.weight)},
              {"interval", interval_record(sys.interval)}};
}

json report_record(const OrthogonalityReport& rep, unsigned digits) {
  auto str = [digits](const Real& r) {
    std::ostringstream os;
    os.precision(digits);
    os << r;
    return os.str();
  };
  json gram = json::array();
  for (const auto& row : rep.gram) {
    json r = json::array();
    for (const auto& v : row) r.push_back(str(v));
    gram.push_back(r);
  }
  json norms = json::array();
  for (const auto& v : rep.norms) norms.push_back(str(v));
  return json{{"schema", kSchemaVersion},
              {"indices", rep.indices},
              {"gram_normalized", gram},
              {"max_offdiagonal", str(rep.max_offdiag)},
              {"norms", norms},
              {"moment0", str(rep.moment0)},
              {"converged", rep.all_converged}};
}

}  // namespace xops
