#include "pickpoly_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "pickpoly/errors.hpp"
#include "pickpoly/inference.hpp"
#include "pickpoly/measures.hpp"
#include "pickpoly/serialization.hpp"
#include "pickpoly/simulation.hpp"
#include "pickpoly/submodel.hpp"

namespace pickpoly::cli {

namespace {

struct Flags {
  std::string in;
  std::string out;
  std::string to = "both";
  std::string model;
  std::string csv;
  std::string log;
  std::optional<int> m;
  std::uint64_t seed = 1;
  int starts = 20;
  int grid = kDefaultCfgGrid;
  int cap = kDefaultLorentzCap;
  std::size_t n = 0;
  double t = 0.5;
  bool ranks = false;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json cmd_validate(const json& in) {
  if (in.contains("theta")) {
    const Feasibility f = feasibility(theta_from_json(in));
    return {{"feasible", f.feasible}, {"q0", f.q0}, {"q1", f.q1}};
  }
  if (in.contains("c") && !in.contains("coeffs")) {
    const SubmodelParam p = submodel_from_json(in);
    return to_json(in_submodel_h(p.c));
  }
  return to_json(validate_pickands(poly_from_json(in)));
}

json cmd_convert(const json& in, const std::string& to) {
  if (to == "pickands") {
    // The input is h: a polynomial, a theta vector or submodel coefficients.
    BernsteinPoly h = in.contains("theta")           ? theta_to_h(theta_from_json(in))
                      : in.contains("c") && !in.contains("coeffs") ? BernsteinPoly(submodel_from_json(in).c)
                                                                   : poly_from_json(in);
    const BernsteinPoly a = a_from_h(h);
    json o = poly_both_bases(a);
    o["valid"] = validate_pickands(a).valid;
    return o;
  }
  const BernsteinPoly p = poly_from_json(in);
  if (to == "h") return poly_both_bases(h_from_a(p));
  if (to == "bernstein") return bernstein_to_json(p);
  if (to == "power") return power_to_json(bernstein_to_power(p));
  return poly_both_bases(p);
}

json cmd_measures(const json& in) {
  if (in.contains("model")) {
    const std::string name = in["model"].is_string() ? in["model"].get<std::string>() : "";
    if (name == "polynomial") {
      return to_json(tau_measures(PickandsPoly::from_bernstein(poly_from_json(in.at("poly")))));
    }
    return to_json(tau_measures(pickands_from_model_json(in)));
  }
  return to_json(tau_measures(PickandsPoly::from_bernstein(poly_from_json(in))));
}

json cmd_bound(const json& in, int m, double t) {
  const GenericPickands a = in.contains("model")
                                ? pickands_from_model_json(in)
                                : GenericPickands::from_poly(PickandsPoly::from_bernstein(poly_from_json(in)));
  return to_json(approx_error_bound(a, m, t));
}

json cmd_fit(const Flags& f) {
  std::istringstream csv(read_file(f.in));
  SampleSet data = SampleSet::from_csv(csv);
  if (f.model == "cfg") return to_json(fit_cfg(data, f.grid));
  if (f.ranks) data = data.with_ranks();
  OptimConfig oc;
  oc.starts = f.starts;
  oc.seed = f.seed;
  return to_json(f.model == "full" ? fit_full(data, *f.m, oc) : fit_sub(data, *f.m, oc));
}

void cmd_study(const Flags& f, CLI::App& sub, std::ostream& out) {
  StudyConfig config = study_config_from_json(parse_json(read_file(f.in)));
  if (sub.count("--seed") > 0) config.seed = f.seed;
  if (f.ranks) config.ranks = true;
  if (sub.count("--starts") > 0) config.starts = f.starts;
  const StudyReport report = run_study(config);
  json j = to_json(report);
  j["config"] = to_json(config);
  write_text(dump(j), f.out, out);
  if (!f.csv.empty()) {
    std::ostringstream s;
    write_study_csv(report, s);
    write_text(s.str(), f.csv, out);
  }
  if (!f.log.empty()) {
    const json log{{"runtime_seconds", report.runtime_seconds},
                   {"threads", resolve_threads(config.threads)}};
    write_text(dump(log), f.log, out);
  }
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial Pickands dependence functions for bivariate extreme-value copulas",
               "pickpoly"};
  app.require_subcommand(1);
  Flags f;

  auto add_in = [&f](CLI::App* s, const std::string& what) {
    s->add_option("--in", f.in, what)->required()->check(CLI::ExistingFile);
  };
  auto add_out = [&f](CLI::App* s) { s->add_option("--out", f.out, "Output path (default stdout)"); };

  CLI::App* validate = app.add_subcommand("validate", "Check the Pickands conditions (or Theta_m / C_m^+ membership)");
  add_in(validate, "Polynomial, theta or submodel JSON");
  add_out(validate);

  CLI::App* convert = app.add_subcommand("convert", "Convert between bases, or between h and A");
  add_in(convert, "Polynomial JSON (or theta / submodel JSON with --to pickands)");
  add_out(convert);
  convert->add_option("--to", f.to, "both, bernstein, power, pickands (h to A) or h (A to h)")
      ->check(CLI::IsMember({"both", "bernstein", "power", "pickands", "h"}));

  CLI::App* lorentz = app.add_subcommand("lorentz", "Lorentz degree of a polynomial positive on (0,1)");
  add_in(lorentz, "Polynomial JSON");
  add_out(lorentz);
  lorentz->add_option("--cap", f.cap, "Largest degree tried")->check(CLI::PositiveNumber);

  CLI::App* measures = app.add_subcommand("measures", "Dependence measures tau1 and tau2");
  add_in(measures, "Polynomial or model JSON");
  add_out(measures);

  CLI::App* simulate = app.add_subcommand("simulate", "Draw a sample from a reference model");
  add_in(simulate, "Model JSON");
  add_out(simulate);
  simulate->add_option("--n", f.n, "Sample size")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", f.seed, "Seed");

  CLI::App* fit = app.add_subcommand("fit", "Estimate A from a u,v CSV sample");
  add_in(fit, "CSV with header u,v");
  add_out(fit);
  fit->add_option("--model", f.model, "Estimator")->required()->check(CLI::IsMember({"full", "sub", "cfg"}));
  fit->add_option("--m", f.m, "Degree of h (full and sub)")->check(CLI::NonNegativeNumber);
  fit->add_option("--starts", f.starts, "Random starts")->check(CLI::PositiveNumber);
  fit->add_option("--seed", f.seed, "Seed");
  fit->add_option("--grid", f.grid, "CFG grid abscissae")->check(CLI::Range(2, 1000000));
  fit->add_flag("--ranks", f.ranks, "Fit to rank pseudo-observations");

  CLI::App* study = app.add_subcommand("study", "Monte Carlo MSE study");
  add_in(study, "StudyConfig JSON");
  add_out(study);
  study->add_option("--csv", f.csv, "Per-abscissa CSV output");
  study->add_option("--log", f.log, "Sidecar JSON with the runtime");
  study->add_option("--seed", f.seed, "Override the configured seed");
  study->add_option("--starts", f.starts, "Override the configured starts")->check(CLI::PositiveNumber);
  study->add_flag("--ranks", f.ranks, "Fit the likelihood estimators to ranks");

  CLI::App* bound = app.add_subcommand("bound", "Bernstein approximation error and its bound");
  add_in(bound, "Polynomial or model JSON");
  add_out(bound);
  bound->add_option("--m", f.m, "Approximation degree")->required()->check(CLI::PositiveNumber);
  bound->add_option("--t", f.t, "Abscissa")->required()->check(CLI::Range(0.0, 1.0));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("pickpoly");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (fit->parsed() && f.model != "cfg" && !f.m) throw CLI::RequiredError("--m is required for --model " + f.model);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) {
      write_text(dump(cmd_validate(parse_json(read_file(f.in)))), f.out, out);
    } else if (convert->parsed()) {
      write_text(dump(cmd_convert(parse_json(read_file(f.in)), f.to)), f.out, out);
    } else if (lorentz->parsed()) {
      const json in = parse_json(read_file(f.in));
      const BernsteinPoly h = in.contains("c") && !in.contains("coeffs")
                                  ? BernsteinPoly(submodel_from_json(in).c)
                                  : poly_from_json(in);
      write_text(dump(to_json(lorentz_degree(h, f.cap))), f.out, out);
    } else if (measures->parsed()) {
      write_text(dump(cmd_measures(parse_json(read_file(f.in)))), f.out, out);
    } else if (simulate->parsed()) {
      const ReferenceModel model = model_from_json(parse_json(read_file(f.in)));
      std::ostringstream s;
      sample_copula(model, f.n, f.seed).to_csv(s);
      write_text(s.str(), f.out, out);
    } else if (fit->parsed()) {
      write_text(dump(cmd_fit(f)), f.out, out);
    } else if (study->parsed()) {
      cmd_study(f, *study, out);
    } else if (bound->parsed()) {
      write_text(dump(cmd_bound(parse_json(read_file(f.in)), *f.m, f.t)), f.out, out);
    }
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what());
    return 1;
  } catch (const json::exception& e) {
    report_error(err, "input_error", e.what());
    return 1;
  }
  return 0;
}

}  // namespace pickpoly::cli
