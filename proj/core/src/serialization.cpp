#include "pickpoly/serialization.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "pickpoly/errors.hpp"

namespace pickpoly {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double parse_decimal(const std::string& s) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw InputError("not a number: '" + s + "'");
  return x;
}

const json& require(const json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing key '") + key + "'");
  return *it;
}

std::vector<double> reals_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(real_from_json(x));
  return out;
}

int int_from_json(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

// NaN and infinities become null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json numbers(std::span<const double> xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

json violations_to_json(const std::vector<Violation>& vs) {
  json a = json::array();
  for (const auto& v : vs) {
    json o{{"rule", v.rule}, {"witness", number(v.witness)}};
    if (!v.detail.empty()) o["detail"] = v.detail;
    a.push_back(std::move(o));
  }
  return a;
}

}  // namespace

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) throw InputError("expected a number or a numeric string");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s);
  const double num = parse_decimal(s.substr(0, slash));
  const double den = parse_decimal(s.substr(slash + 1));
  if (den == 0.0) throw InputError("zero denominator in '" + s + "'");
  return num / den;
}

BernsteinPoly poly_from_json(const json& j) {
  const std::string basis = j.contains("basis") ? require(j, "basis").get<std::string>() : "bernstein";
  std::vector<double> c = reals_from_json(require(j, "coeffs"), "coeffs");
  if (c.empty()) throw InputError("coeffs must not be empty");
  if (basis == "bernstein") {
    BernsteinPoly p(std::move(c));
    if (j.contains("degree")) {
      const int d = int_from_json(j["degree"], "degree");
      if (d != p.degree()) {
        throw InputError("degree " + std::to_string(d) + " does not match " +
                         std::to_string(p.degree() + 1) + " Bernstein coefficients");
      }
    }
    return p;
  }
  if (basis == "power") {
    PowerPoly p(std::move(c));
    const int d = j.contains("degree") ? int_from_json(j["degree"], "degree") : p.natural_degree();
    return power_to_bernstein(p, d);
  }
  throw InputError("basis must be 'bernstein' or 'power'");
}

json bernstein_to_json(const BernsteinPoly& p) {
  return {{"basis", "bernstein"}, {"degree", p.degree()}, {"coeffs", numbers(p.coeffs())}};
}

json power_to_json(const PowerPoly& p) {
  const auto c = p.coeffs();
  return {{"basis", "power"}, {"degree", static_cast<int>(c.size()) - 1}, {"coeffs", numbers(c)}};
}

json poly_both_bases(const BernsteinPoly& p) {
  return {{"bernstein", bernstein_to_json(p)}, {"power", power_to_json(bernstein_to_power(p))}};
}

FullModelParam theta_from_json(const json& j) {
  const int m = int_from_json(require(j, "m"), "m");
  if (m < 0) throw InputError("m must be nonnegative");
  std::vector<double> theta = reals_from_json(require(j, "theta"), "theta");
  if (theta.size() != static_cast<std::size_t>(m) + 1) {
    throw InputError("theta must have m+1 = " + std::to_string(m + 1) + " entries");
  }
  return FullModelParam(m, std::move(theta));
}

SubmodelParam submodel_from_json(const json& j) {
  std::vector<double> c = reals_from_json(require(j, "c"), "c");
  if (j.contains("m") && int_from_json(j["m"], "m") + 1 != static_cast<int>(c.size())) {
    throw InputError("c must have m+1 entries");
  }
  return SubmodelParam(std::move(c));
}

json to_json(const ValidationReport& r) {
  json o{{"valid", r.valid}};
  if (!r.valid) o["violations"] = violations_to_json(r.violations);
  return o;
}

json to_json(const MembershipReport& r) {
  json o{{"member", r.member}};
  if (!r.member) o["violations"] = violations_to_json(r.violations);
  return o;
}

json to_json(const LorentzResult& r) {
  if (r.kind == LorentzResult::Kind::finite) return {{"degree", r.degree}};
  json o{{"degree", r.to_string()}};
  if (r.kind == LorentzResult::Kind::exceeds_cap) o["cap"] = r.degree;
  return o;
}

json to_json(const DependenceReport& r) { return {{"tau1", r.tau1}, {"tau2", r.tau2}}; }

json to_json(const ApproxErrorReport& r) {
  json o{{"error", r.error}, {"bound", r.bound}};
  if (r.v_bound) o["v_bound"] = *r.v_bound;
  return o;
}

json to_json(const FitResult& r) {
  json o{{"model", r.model},
         {"loglik", number(r.loglik)},
         {"starts_used", r.starts_used},
         {"converged", r.converged},
         {"valid", r.is_valid()}};
  std::visit(Overloaded{
                 [&](const PickandsPoly& a) { o["estimate"] = poly_both_bases(a.poly()); },
                 [&](const PiecewiseLinearPickands& a) {
                   o["estimate"] = {{"grid", a.segments() + 1}, {"values", numbers(a.values())}};
                 },
             },
             r.estimate);
  std::visit(Overloaded{
                 [&](std::monostate) { o["param"] = nullptr; },
                 [&](const FullModelParam& p) { o["param"] = {{"m", p.m}, {"theta", numbers(p.theta)}}; },
                 [&](const SubmodelParam& p) { o["param"] = {{"m", p.m}, {"c", numbers(p.c)}}; },
             },
             r.param);
  return o;
}

ReferenceModel model_from_json(const json& j) {
  const std::string name = require(j, "model").get<std::string>();
  ReferenceModel model;
  if (name == "asymmetric_logistic") {
    model = AsymmetricLogistic{real_from_json(require(j, "alpha")), real_from_json(require(j, "psi1")),
                               real_from_json(require(j, "psi2"))};
  } else if (name == "symmetric_mixed") {
    model = SymmetricMixed{real_from_json(require(j, "psi"))};
  } else if (name == "polynomial") {
    model = PolynomialModel{PickandsPoly::from_bernstein(poly_from_json(require(j, "poly")))};
  } else {
    throw InputError("unknown model '" + name + "'");
  }
  check_model(model);
  return model;
}

json model_to_json(const ReferenceModel& model) {
  return std::visit(Overloaded{
                        [](const AsymmetricLogistic& m) -> json {
                          return {{"model", "asymmetric_logistic"},
                                  {"alpha", m.alpha},
                                  {"psi1", m.psi1},
                                  {"psi2", m.psi2}};
                        },
                        [](const SymmetricMixed& m) -> json {
                          return {{"model", "symmetric_mixed"}, {"psi", m.psi}};
                        },
                        [](const PolynomialModel& m) -> json {
                          return {{"model", "polynomial"}, {"poly", bernstein_to_json(m.a.poly())}};
                        },
                    },
                    model);
}

GenericPickands pickands_from_model_json(const json& j) {
  const std::string name = require(j, "model").get<std::string>();
  if (name == "comonotone") return GenericPickands::comonotone();
  if (name == "independence") return GenericPickands::independence();
  return model_pickands(model_from_json(j));
}

StudyConfig study_config_from_json(const json& j) {
  StudyConfig c;
  c.model = model_from_json(require(j, "model"));
  auto get_int = [&](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    const json& v = j[key];
    if (!v.is_number_integer()) throw InputError(std::string(key) + " must be an integer");
    dst = v.get<std::remove_reference_t<decltype(dst)>>();
  };
  if (j.contains("n") && !(j["n"].is_number_unsigned() || (j["n"].is_number_integer() && j["n"].get<long long>() >= 0))) {
    throw InputError("n must be a nonnegative integer");
  }
  get_int("n", c.n);
  get_int("replicates", c.replicates);
  get_int("m", c.m);
  get_int("grid", c.grid);
  get_int("cfg_grid", c.cfg_grid);
  get_int("starts", c.starts);
  get_int("threads", c.threads);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw InputError("seed must be an integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("ranks")) {
    if (!j["ranks"].is_boolean()) throw InputError("ranks must be a boolean");
    c.ranks = j["ranks"].get<bool>();
  }
  if (j.contains("estimators")) {
    const json& e = j["estimators"];
    if (!e.is_array()) throw InputError("estimators must be an array");
    c.estimators.clear();
    for (const auto& x : e) {
      if (!x.is_string()) throw InputError("estimators must be strings");
      c.estimators.push_back(x.get<std::string>());
    }
  }
  check_study_config(c);
  return c;
}

json to_json(const StudyConfig& c) {
  return {{"model", model_to_json(c.model)}, {"n", c.n},           {"replicates", c.replicates},
          {"m", c.m},                         {"estimators", c.estimators}, {"seed", c.seed},
          {"grid", c.grid},                   {"cfg_grid", c.cfg_grid},     {"ranks", c.ranks},
          {"starts", c.starts}};
}

json to_json(const StudyReport& r) {
  json est = json::array();
  for (const auto& s : r.estimators) {
    json failures = json::array();
    for (const auto& f : s.failures) failures.push_back({{"replicate", f.replicate}, {"message", f.message}});
    est.push_back({{"estimator", s.estimator},
                   {"grid_mean_mse", s.grid_mean_mse()},
                   {"mean", numbers(s.mean)},
                   {"mse", numbers(s.mse)},
                   {"variance", numbers(s.variance)},
                   {"bias2", numbers(s.bias2)},
                   {"logliks", numbers(s.logliks)},
                   {"failures", failures},
                   {"invalid", s.invalid}});
  }
  return {{"replicates", r.replicates}, {"t", numbers(r.t)}, {"truth", numbers(r.truth)}, {"estimators", est}};
}

void write_study_csv(const StudyReport& r, std::ostream& out) {
  std::ostringstream buf;
  buf.precision(17);
  buf << "estimator,t,truth,mean,mse,variance,bias2\n";
  for (const auto& s : r.estimators) {
    for (std::size_t k = 0; k < r.t.size(); ++k) {
      buf << s.estimator << ',' << r.t[k] << ',' << r.truth[k] << ',' << s.mean[k] << ',' << s.mse[k]
          << ',' << s.variance[k] << ',' << s.bias2[k] << '\n';
    }
  }
  out << buf.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace pickpoly
