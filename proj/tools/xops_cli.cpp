// Command-line interface: list the family registry, generate polynomial
// systems, run the verification suite, sample weights, and print Darboux
// chains. Exact parameters are given as rational strings like 3/4; floats
// are rejected to avoid silent precision loss.
#include "CLI11.hpp"

#include "xops/flags.hpp"
#include "xops/serialize.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace xops;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scalar parse_exact(const std::string& text) {
  auto s = Scalar::parse(text);
  if (!s)
    throw UsageError("'" + text + "' is not an exact rational (write p/q; floats are rejected)");
  return *s;
}

unsigned default_digits() {
  if (const char* env = std::getenv("XOPS_DIGITS")) {
    int v = std::atoi(env);
    if (v >= 15 && v <= 2000) return unsigned(v);
  }
  return 50;
}

ParamMap collect_params(const FamilySpec& spec,
                        const std::map<std::string, std::string>& given) {
  ParamMap pm;
  for (const auto& name : spec.param_names) {
    auto it = given.find(name);
    if (it == given.end() || it->second.empty())
      throw UsageError("family '" + spec.id + "' needs --" + name);
    pm.emplace(name, parse_exact(it->second));
  }
  return pm;
}

// sample-set config: lines "family-id.param = v1 v2 v3" (aligned per family)
std::map<std::string, std::vector<ParamMap>> load_samples_file(const std::string& path) {
  std::map<std::string, std::map<std::string, std::vector<Scalar>>> raw;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open samples file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq), vals = line.substr(eq + 1);
    key.erase(remove_if(key.begin(), key.end(), ::isspace), key.end());
    auto dot = key.rfind('.');
    if (dot == std::string::npos) throw UsageError("bad samples key '" + key + "'");
    std::istringstream vs(vals);
    std::string tok;
    while (vs >> tok) raw[key.substr(0, dot)][key.substr(dot + 1)].push_back(parse_exact(tok));
  }
  std::map<std::string, std::vector<ParamMap>> out;
  for (auto& [fam, cols] : raw) {
    size_t count = 0;
    for (auto& [name, vals] : cols) count = std::max(count, vals.size());
    for (auto& [name, vals] : cols)
      if (vals.size() != count)
        throw UsageError("samples for '" + fam + "' have ragged parameter lists");
    std::vector<ParamMap> sets(count);
    for (auto& [name, vals] : cols)
      for (size_t i = 0; i < count; ++i) sets[i].emplace(name, vals[i]);
    out[fam] = sets;
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string real_str(const Real& r, unsigned digits) {
  std::ostringstream os;
  os.precision(digits);
  os << r;
  return os.str();
}

int cmd_families(const std::string& format) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& f : registry()) arr.push_back(family_record(f));
    std::cout << arr.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "id                      base      flag     codim steps parameters\n";
  for (const auto& f : registry()) {
    std::ostringstream os;
    os.width(24);
    os << std::left << f.id;
    os.width(10);
    os << (f.base == Family::Hermite ? "hermite" : f.base == Family::Laguerre ? "laguerre" : "jacobi");
    os.width(9);
    os << f.flag_label;
    os.width(6);
    os << f.codimension;
    os.width(6);
    os << f.steps;
    for (const auto& p : f.param_names) os << p << " ";
    std::cout << os.str() << "\n";
  }
  return kExitOk;
}

int cmd_gen(const FamilySpec& spec, const ParamMap& pm, int n_max, const std::string& format) {
  GeneratedSystem sys = generate(spec, pm, n_max);
  if (format == "csv") {
    std::cout << "n,eigenvalue,coefficients_ascending\r\n";
    for (size_t i = 0; i < sys.polys.size(); ++i) {
      std::ostringstream cs;
      for (int k = 0; k <= sys.polys[i].second.degree(); ++k) {
        if (k) cs << " ";
        cs << sys.polys[i].second.coeff(k).str();
      }
      std::cout << sys.polys[i].first << "," << csv_quote(sys.eigenvalues[i].str()) << ","
                << csv_quote(cs.str()) << "\r\n";
    }
  } else {
    std::cout << system_record(sys).dump(2) << "\n";
  }
  return kExitOk;
}

int expected_d2_dimension(const std::string& label) {
  if (label == "E1") return 4;
  if (label == "E11_23" || label == "E2a_13" || label == "E2b_23" || label == "E2c_23") return 2;
  if (label == "E11_13" || label == "E2a_03" || label == "E2a_12") return 3;
  return 4;  // E11_03, E11_12, E2a_02
}

FlagSpec sample_flag(const std::string& label, const Scalar& t) {
  if (label == "E1") return FlagSpec::e1(t);
  if (label == "E11_23") return FlagSpec::e11(t, t + Scalar(1));
  if (label == "E11_13") return FlagSpec::e11(t, t / (t + Scalar(1)));
  if (label == "E11_03") return FlagSpec::e11(Scalar(0), Scalar(0));
  if (label == "E11_12") return FlagSpec::e11(Scalar(-2), Scalar(2));
  if (label == "E2a_13") return FlagSpec::e2(t, Scalar(0), t + Scalar(1));
  if (label == "E2a_03") return FlagSpec::e2(Scalar(0), Scalar(0), t);
  if (label == "E2a_12") return FlagSpec::e2(t, Scalar(0), Scalar(0));
  if (label == "E2a_02") return FlagSpec::e2(Scalar(0), Scalar(0), Scalar(0));
  if (label == "E2b_23") return FlagSpec::e2(t, t, t);
  return FlagSpec::e2(t, -t * t * (t + Scalar(1)) / Scalar(6), Scalar(1));  // E2c_23
}

bool verify_family(const FamilySpec& spec, const ParamMap& pm, int n_max, unsigned digits,
                   std::ostream& log) {
  auto [adm, why] = admissible(spec, pm);
  if (!adm) throw inadmissible_error(spec.id + ": " + why);
  bool ok = true;
  auto report = [&](const std::string& what, bool pass, const std::string& detail = "") {
    log << "  [" << (pass ? "pass" : "FAIL") << "] " << what
        << (detail.empty() ? "" : ": " + detail) << "\n";
    if (!pass) ok = false;
  };

  GeneratedSystem sys;
  try {
    sys = generate(spec, pm, n_max);
    report("exact eigen-relations (n <= " + std::to_string(n_max) + ")", true);
  } catch (const std::exception& e) {
    report("exact eigen-relations", false, e.what());
    return false;
  }

  if (!spec.is_classical()) {
    bool gaps_ok = true;
    std::vector<int> seen;
    for (auto& [n, y] : sys.polys) seen.push_back(n);
    for (int n = 0; n <= n_max; ++n) {
      bool skipped = std::find(spec.skipped_degrees.begin(), spec.skipped_degrees.end(), n) !=
                     spec.skipped_degrees.end();
      bool present = std::find(seen.begin(), seen.end(), n) != seen.end();
      if (skipped == present) gaps_ok = false;
    }
    report("degree gaps match the family descriptor", gaps_ok);

    bool inter_ok = true;
    std::string note;
    try {
      for (auto& [n, y] : sys.polys)
        if (!intertwine_check(spec, pm, n)) inter_ok = false;
    } catch (const limit_parameter_error& e) {
      note = std::string("skipped: ") + e.what();
    }
    report("lowering intertwiner eigenfactors", inter_ok, note);

    try {
      Chain c = build_chain(spec, pm);
      bool chain_ok = int(c.steps.size()) == spec.steps;
      for (const auto& st : c.steps) {
        if (!check_factorization(st.fact.t, st.fact.a, st.fact.b, st.fact.lambda0))
          chain_ok = false;
        if (!check_intertwining(st.fact.a, st.fact.t, st.partner)) chain_ok = false;
      }
      report("factorization chain (" + std::to_string(spec.steps) + " step)", chain_ok);
    } catch (const std::exception& e) {
      report("factorization chain", false, e.what());
    }

    std::vector<Scalar> moduli = {Scalar(1), Scalar(Rational(1, 2)), Scalar(3)};
    if (spec.flag_label != "classical") {
      bool dims_ok = true;
      for (const Scalar& t : moduli) {
        try {
          if (d2_space(sample_flag(spec.flag_label, t)).dimension() !=
              expected_d2_dimension(spec.flag_label))
            dims_ok = false;
        } catch (const std::exception&) {
          dims_ok = false;
        }
      }
      report("operator-space dimension for flag class " + spec.flag_label, dims_ok);
    }
  }

  SLForm sl = sl_form(sys.op, sys.interval);
  report("boundary vanishing of p*W", boundary_vanishing(sl));
  auto ratio = QuasiRational::ratio_if_constant(sl.W, sys.weight);
  report("weight matches the operator's Sturm-Liouville form",
         ratio.has_value() && ratio->sign() > 0);

  QuadratureConfig cfg;
  cfg.decimal_digits = digits;
  OrthogonalityReport rep = orthogonality_report(sys, cfg);
  Real tol = pow(Real(10), -Real(int(digits) - 15));
  bool orth = rep.all_converged && rep.max_offdiag < tol;
  for (const auto& nrm : rep.norms)
    if (!(nrm > 0)) orth = false;
  std::ostringstream det;
  det << "max off-diagonal " << real_str(rep.max_offdiag, 3);
  report("numeric orthogonality at " + std::to_string(digits) + " digits", orth, det.str());
  return ok;
}

int cmd_verify(const std::string& family, bool all, bool nonexistence,
               const std::map<std::string, std::string>& given, int n_max, unsigned digits,
               const std::string& samples_file) {
  if (nonexistence) {
    bool ok = true;
    for (const auto& c : nonexistence_certificates()) {
      std::cout << "[" << (c.verified ? "pass" : "FAIL") << "] " << c.cell << ": " << c.reason
                << "\n";
      if (!c.verified) ok = false;
    }
    return ok ? kExitOk : kExitCheckFailed;
  }
  std::map<std::string, std::vector<ParamMap>> overrides;
  if (!samples_file.empty()) overrides = load_samples_file(samples_file);

  std::vector<const FamilySpec*> specs;
  if (all) {
    for (const auto& f : registry()) specs.push_back(&f);
  } else {
    specs.push_back(&family_by_id(family));
  }
  bool ok = true;
  for (const FamilySpec* spec : specs) {
    std::vector<ParamMap> sets;
    if (!all && !spec->param_names.empty() && given.count(spec->param_names.front()) &&
        !given.at(spec->param_names.front()).empty()) {
      sets.push_back(collect_params(*spec, given));
    } else if (overrides.count(spec->id)) {
      sets = overrides[spec->id];
    } else {
      sets = spec->default_samples;
    }
    for (const auto& pm : sets) {
      std::cout << spec->id;
      for (const auto& [k, v] : pm) std::cout << " " << k << "=" << v.str();
      std::cout << "\n";
      if (!verify_family(*spec, pm, n_max, digits, std::cout)) ok = false;
    }
  }
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_weight(const FamilySpec& spec, const ParamMap& pm, const std::vector<Scalar>& grid,
               unsigned digits, bool with_polys, int n_max) {
  auto [adm, why] = admissible(spec, pm);
  if (!adm) throw inadmissible_error(spec.id + ": " + why);
  QuasiRational w = family_weight(spec, pm);
  GeneratedSystem sys;
  if (with_polys) sys = generate(spec, pm, n_max);
  PrecisionGuard guard(digits + 15);
  std::cout << "x,W";
  if (with_polys)
    for (auto& [n, y] : sys.polys) std::cout << ",y" << n;
  std::cout << "\r\n";
  for (const Scalar& x : grid) {
    std::cout << x.str();
    try {
      Real wx = quasirational_eval_real(w, scalar_to_real(x));
      std::cout << "," << real_str(wx, digits);
    } catch (const std::exception&) {
      std::cout << ",divergent";
    }
    if (with_polys)
      for (auto& [n, y] : sys.polys)
        std::cout << "," << real_str(poly_eval_real(y, scalar_to_real(x)), digits);
    std::cout << "\r\n";
  }
  return kExitOk;
}

int cmd_chain(const FamilySpec& spec, const ParamMap& pm) {
  auto [adm, why] = admissible(spec, pm);
  if (!adm) throw inadmissible_error(spec.id + ": " + why);
  Chain c = build_chain(spec, pm);
  std::cout << spec.id << ": " << c.steps.size() << " step(s)\n";
  std::cout << "classical end: " << c.classical_end.str("x") << "\n";
  for (size_t i = 0; i < c.steps.size(); ++i) {
    const DarbouxStep& st = c.steps[i];
    std::cout << "step " << (i + 1) << " [" << to_string(st.kind) << "]\n";
    std::cout << "  eigenvalue lambda0 = " << st.fact.lambda0.str() << "\n";
    std::cout << "  phi   = " << st.fact.phi.str() << "\n";
    std::cout << "  gauge = " << st.fact.gauge.str() << "\n";
    std::cout << "  partner: " << st.partner.str("x") << "\n";
  }
  return kExitOk;
}

std::vector<Scalar> build_grid(const std::string& points, const std::string& grid_spec) {
  std::vector<Scalar> out;
  if (!points.empty()) {
    std::istringstream is(points);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(parse_exact(tok));
    return out;
  }
  if (grid_spec.empty()) return out;
  auto c1 = grid_spec.find(':'), c2 = grid_spec.rfind(':');
  if (c1 == std::string::npos || c2 == c1)
    throw UsageError("grid must be lo:hi:count with exact rational bounds");
  Scalar lo = parse_exact(grid_spec.substr(0, c1));
  Scalar hi = parse_exact(grid_spec.substr(c1 + 1, c2 - c1 - 1));
  long count = std::stol(grid_spec.substr(c2 + 1));
  if (count < 0) throw UsageError("grid count must be nonnegative");
  for (long i = 0; i < count; ++i) {
    Scalar t = count == 1 ? lo : lo + (hi - lo) * Scalar(Rational(i, count - 1));
    out.push_back(t);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exceptional orthogonal polynomial systems: construct, classify, verify"};
  app.require_subcommand(1);

  std::string family, fam_format = "table", gen_format = "json", points, grid_spec, samples_file;
  std::map<std::string, std::string> given;
  int n_max = 10;
  unsigned digits = default_digits();
  bool all = false, nonexistence = false;

  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", given["alpha"], "exact rational parameter");
    cmd->add_option("--beta", given["beta"], "exact rational parameter");
    cmd->add_option("--a", given["a"], "exact rational parameter");
    cmd->add_option("--z1", given["z1"], "exact rational parameter");
  };

  CLI::App* fam = app.add_subcommand("families", "list the registry");
  fam->add_option("--format", fam_format, "json|table");

  CLI::App* gen = app.add_subcommand("gen", "generate a polynomial system");
  gen->add_option("--family", family, "family id")->required();
  gen->add_option("--n-max", n_max, "largest degree");
  gen->add_option("--format", gen_format, "json|csv");
  add_params(gen);

  CLI::App* ver = app.add_subcommand("verify", "run the verification suite");
  ver->add_option("--family", family, "family id");
  ver->add_flag("--all", all, "verify every family at its default samples");
  ver->add_flag("--nonexistence", nonexistence, "check the excluded-cell certificates");
  ver->add_option("--n-max", n_max, "largest degree");
  ver->add_option("--digits", digits, "quadrature precision (or XOPS_DIGITS)");
  ver->add_option("--samples-file", samples_file, "key=value sample sets");
  add_params(ver);

  CLI::App* wt = app.add_subcommand("weight", "sample the weight on a grid (CSV)");
  wt->add_option("--family", family, "family id")->required();
  wt->add_option("--points", points, "comma-separated exact rationals");
  wt->add_option("--grid", grid_spec, "lo:hi:count");
  wt->add_option("--digits", digits, "output precision");
  add_params(wt);

  CLI::App* pd = app.add_subcommand("plotdata", "sample weight and polynomials (CSV)");
  pd->add_option("--family", family, "family id")->required();
  pd->add_option("--points", points, "comma-separated exact rationals");
  pd->add_option("--grid", grid_spec, "lo:hi:count");
  pd->add_option("--n-max", n_max, "largest polynomial degree");
  pd->add_option("--digits", digits, "output precision");
  add_params(pd);

  CLI::App* ch = app.add_subcommand("chain", "print the factorization chain");
  ch->add_option("--family", family, "family id")->required();
  add_params(ch);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fam->parsed()) return cmd_families(fam_format);
    if (ver->parsed()) {
      if (!all && !nonexistence && family.empty())
        throw UsageError("verify needs --family, --all, or --nonexistence");
      return cmd_verify(family, all, nonexistence, given, n_max, digits, samples_file);
    }
    const FamilySpec& spec = family_by_id(family);
    if (gen->parsed()) return cmd_gen(spec, collect_params(spec, given), n_max, gen_format);
    if (wt->parsed())
      return cmd_weight(spec, collect_params(spec, given), build_grid(points, grid_spec),
                        digits, false, n_max);
    if (pd->parsed())
      return cmd_weight(spec, collect_params(spec, given), build_grid(points, grid_spec),
                        digits, true, n_max);
    if (ch->parsed()) return cmd_chain(spec, collect_params(spec, given));
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const inadmissible_error& e) {
    std::cerr << "rejected parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
