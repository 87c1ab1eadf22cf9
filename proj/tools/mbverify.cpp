// mbverify: evaluate, verify and sweep the Mellin-Barnes integral families.
//
// Exit status: 0 success / all pass, 1 a verification failed, 2 usage,
// parse or validation error. Payload goes to standard output (or --out),
// diagnostics to standard error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mbverify/determinant.hpp"
#include "mbverify/json_io.hpp"
#include "mbverify/mb_model.hpp"
#include "mbverify/quadrature.hpp"
#include "mbverify/series.hpp"
#include "mbverify/verification.hpp"

using namespace mbverify;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string params;
  std::string family;
  std::vector<int> n_values;
  std::string route;
  std::uint64_t seed = 42;
  std::uint64_t index = 0;
  std::optional<double> tol;
  std::optional<double> truncation;
  std::optional<int> nodes_per_unit;
  int n_max = kDefaultNMax;
  std::string epsilons;
  std::string axis;
  double from = 0.0;
  double to = 0.0;
  int steps = 8;
  int m = 0;
  int k = 0;
  int instances = 2;
  bool pretty = false;
  std::string out;
  std::string csv;
};

std::string read_params_text(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw UsageError("cannot open parameter file '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MBParameterSet load_params(const Options& o) {
  if (!o.params.empty()) return params_from_json(read_params_text(o.params));
  if (!o.family.empty() && !o.n_values.empty()) {
    return random_params(parse_family(o.family), o.n_values.front(), o.seed, o.index);
  }
  throw UsageError("--params FILE (or inline JSON) is required; alternatively give --family and --n to sample one");
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("invalid number '" + item + "' in --epsilons");
    }
  }
  return out;
}

RouteConfig route_config(const Options& o) {
  RouteConfig rc;
  rc.truncation = o.truncation;
  rc.nodes_per_unit = o.nodes_per_unit;
  rc.n_max = o.n_max;
  rc.budget = o.tol;
  if (!o.epsilons.empty()) rc.epsilons = parse_csv_doubles(o.epsilons);
  return rc;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return json::number(v);
}

void require_valid(const MBParameterSet& p, const ContourSpec& c) {
  const ValidationReport v = validate(p, c.shift);
  if (!v.ok) {
    std::string msg = "invalid instance:";
    for (const auto& m : v.messages) msg += " " + m + ";";
    throw ParameterError(msg);
  }
}

int cmd_eval(const Options& o) {
  const MBParameterSet p = load_params(o);
  const std::string route = o.route.empty() ? "quadrature" : o.route;
  const RouteConfig rc = route_config(o);
  json::Object out;
  out.add("family", family_name(p.family));
  out.add("route", route);
  const Complex rhs = closed_form_rhs(p);

  if (route == "rhs") {
    out.raw("lhs", "null").add("rhs", rhs).add("error_estimate", 0.0).add("evaluations", std::uint64_t{0});
  } else if (route == "quadrature" || route == "determinant") {
    const Route r = parse_route(route);
    if (!route_applies(p.family, r)) throw UsageError("route determinant applies only to RPlus and RMinus");
    const ContourSpec c = rc.contour_for(p.family, p.N, r);
    require_valid(p, c);
    Complex lhs;
    double err = 0.0;
    std::uint64_t evals = 0;
    if (r == Route::quadrature) {
      const QuadResult q = integrate_factorized(factorized_integrand(p), c);
      lhs = q.value, err = q.error_estimate, evals = q.evaluations;
    } else {
      const DeterminantResult d = r_via_determinant(p, r_sign(p.family), c);
      lhs = d.value, err = d.error_estimate, evals = d.matrix.evaluations;
    }
    out.add("lhs", lhs).add("rhs", rhs).add("error_estimate", err).add("evaluations", evals);
  } else if (route == "series") {
    const SeriesResult s = residue_series(p, o.n_max);
    out.add("lhs", s.value).add("rhs", rhs).add("error_estimate", s.tail_estimate).add("evaluations", s.terms_used);
  } else {
    throw UsageError("--route must be one of quadrature, series, determinant, rhs");
  }
  Output sink(o.out);
  sink.stream() << out.str(o.pretty) << "\n";
  return 0;
}

int cmd_verify(const Options& o) {
  const MBParameterSet p = load_params(o);
  const Route route = parse_route(o.route.empty() ? "quadrature" : o.route);
  const VerificationReport r = verify_instance(p, route, route_config(o));
  Output sink(o.out);
  sink.stream() << report_to_json(r, o.pretty) << "\n";
  if (r.pass) return 0;
  const bool invalid = std::isnan(r.lhs.real()) && !r.messages.empty();
  for (const auto& m : r.messages) std::cerr << "mbverify: " << m << "\n";
  return invalid ? 2 : 1;
}

int cmd_residue(const Options& o) {
  const MBParameterSet p = load_params(o);
  if (!is_r_family(p.family)) throw UsageError("residue needs an RPlus or RMinus parameter set");
  RouteConfig rc = route_config(o);
  const ResidueRoute rr = o.route == "quadrature" ? ResidueRoute::quadrature : ResidueRoute::determinant;
  if (!o.route.empty() && o.route != "quadrature" && o.route != "determinant") {
    throw UsageError("residue --route must be quadrature or determinant");
  }
  const ContourSpec c = rc.contour_for(p.family, p.N, rr == ResidueRoute::determinant ? Route::determinant : Route::quadrature);
  const ResidueFit fit = extract_residue(p, rc.epsilons, rr, c);
  const ResiduePredictions pred = residue_predictions(p);
  const double rel_reduced = std::abs(fit.residue - pred.via_reduced) / std::abs(pred.via_reduced);
  const double rel_closed = std::abs(fit.residue - pred.via_closed_form) / std::abs(pred.via_closed_form);
  const double tol = o.tol ? *o.tol : 5e-3;

  json::Object out;
  out.add("family", family_name(p.family));
  out.add("N", p.N);
  out.add("residue", fit.residue);
  out.add("residue_error", fit.residue_error);
  out.add("prediction_reduced", pred.via_reduced);
  out.add("prediction_closed_form", pred.via_closed_form);
  out.add("rel_err_reduced", rel_reduced);
  out.add("rel_err_closed_form", rel_closed);
  out.add("condition_number", fit.condition_number);
  std::string eps = "[";
  for (std::size_t i = 0; i < fit.epsilons.size(); ++i) eps += (i ? ", " : "") + json::number(fit.epsilons[i]);
  out.raw("epsilons", eps + "]");
  out.add("values", fit.values);
  out.add("tolerance", tol);
  const bool pass = rel_reduced <= tol && rel_closed <= tol;
  out.add("pass", pass);
  Output sink(o.out);
  sink.stream() << out.str(o.pretty) << "\n";
  return pass ? 0 : 1;
}

int cmd_suite(const Options& o) {
  SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.instances_per_family = o.instances;
  if (!o.n_values.empty()) cfg.N_values = o.n_values;
  if (!o.family.empty()) cfg.families = {parse_family(o.family)};
  if (!o.route.empty()) cfg.routes = {parse_route(o.route)};
  cfg.route_config = route_config(o);
  if (!o.epsilons.empty()) cfg.route_config.epsilons = parse_csv_doubles(o.epsilons);
  const auto reports = run_suite(cfg);
  {
    Output sink(o.out);
    for (const auto& r : reports) sink.stream() << report_to_json(r, o.pretty) << "\n";
  }
  if (!o.csv.empty()) {
    std::ofstream csv(o.csv);
    if (!csv) throw UsageError("cannot open CSV file '" + o.csv + "'");
    csv << reports_to_csv(reports);
  }
  return all_pass(reports) ? 0 : 1;
}

int cmd_sweep(const Options& o) {
  if (o.axis != "nu" && o.axis != "truncation" && o.axis != "n_max" && o.axis != "u") {
    throw UsageError("--axis must be one of nu, truncation, n_max, u");
  }
  if (o.steps < 1) throw UsageError("--steps must be at least 1");
  const MBParameterSet base = load_params(o);
  const RouteConfig rc = route_config(o);
  Output sink(o.out);
  std::ostream& os = sink.stream();
  os << o.axis << ",value_re,value_im,error,reference_re,reference_im\n";

  for (int s = 0; s < o.steps; ++s) {
    const double x = o.steps == 1 ? o.from : o.from + (o.to - o.from) * s / (o.steps - 1);
    Complex value, reference;
    double error = 0.0;
    if (o.axis == "nu") {
      const MBParameterSet p = at_nu(base, x);
      reference = closed_form_rhs(p);
      if (o.route == "rhs") {
        value = reference;
      } else {
        const ContourSpec c = rc.contour_for(p.family, p.N, Route::quadrature);
        require_valid(p, c);
        const QuadResult q = integrate_factorized(factorized_integrand(p), c);
        value = q.value, error = q.error_estimate;
      }
    } else if (o.axis == "truncation") {
      ContourSpec c = rc.contour_for(base.family, base.N, Route::quadrature);
      c.truncation = x;
      require_valid(base, c);
      const QuadResult q = integrate_factorized(factorized_integrand(base), c);
      value = q.value, error = q.error_estimate;
      reference = closed_form_rhs(base);
    } else if (o.axis == "n_max") {
      const SeriesResult r = residue_series(base, static_cast<int>(std::lround(x)));
      value = r.value, error = r.tail_estimate;
      reference = closed_form_rhs(base);
    } else {
      // Ratio of the entry integrand to its leading asymptotic term along
      // the slowly decaying direction.
      const int sign = r_sign(base.family);
      const int m = o.m > 0 ? o.m : base.N;
      const int k = o.k > 0 ? o.k : base.N;
      const Complex z{0.0, -sign * x};
      value = q_entry_integrand(base, sign, m, k, z) / asymptotic_leading(base, sign, m, k, x);
      error = std::abs(value - 1.0);
      reference = {1.0, 0.0};
    }
    os << csv_number(x) << "," << csv_number(value.real()) << "," << csv_number(value.imag()) << ","
       << csv_number(error) << "," << csv_number(reference.real()) << "," << csv_number(reference.imag()) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of u(N) Mellin-Barnes integral identities"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--params", o.params, "Parameter set: JSON file path or inline JSON");
    sub->add_option("--family", o.family, "Family (GustafsonFirst, GustafsonSecond, RPlus, RMinus, TReduced, ThreeStars)");
    sub->add_option("--n", o.n_values, "Integration dimension N (suite: comma separated list)")->delimiter(',');
    sub->add_option("--seed", o.seed, "Sampling seed");
    sub->add_option("--index", o.index, "Sample index when drawing random parameters");
    sub->add_option("--tol", o.tol, "Tolerance budget");
    sub->add_option("--truncation", o.truncation, "Contour truncation height T");
    sub->add_option("--nodes-per-unit", o.nodes_per_unit, "Gauss-Legendre nodes per unit length");
    sub->add_option("--n-max", o.n_max, "Series truncation per coordinate");
    sub->add_option("--epsilons", o.epsilons, "Comma separated epsilon list for the residue fit");
    sub->add_flag("--pretty", o.pretty, "Indented JSON");
    sub->add_option("--out", o.out, "Write the payload to FILE");
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate one instance by a route and its closed form");
  common(eval);
  eval->add_option("--route", o.route, "quadrature | series | determinant | rhs");
  CLI::App* verify = app.add_subcommand("verify", "Verify one instance; prints a report line");
  common(verify);
  verify->add_option("--route", o.route, "quadrature | series | determinant | residue-extraction");
  CLI::App* residue = app.add_subcommand("residue", "Extract the residue of R+- at nu = 0");
  common(residue);
  residue->add_option("--route", o.route, "How R+- is evaluated: determinant (default) | quadrature");
  CLI::App* suite = app.add_subcommand("suite", "Run the randomized verification suite");
  common(suite);
  suite->add_option("--route", o.route, "Restrict to one route");
  suite->add_option("--instances", o.instances, "Instances per family, N and route");
  suite->add_option("--csv", o.csv, "Also write the CSV summary to FILE");
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one axis and print CSV rows");
  common(sweep);
  sweep->add_option("--route", o.route, "nu axis: quadrature (default) or rhs");
  sweep->add_option("--axis", o.axis, "nu | truncation | n_max | u")->required();
  sweep->add_option("--from", o.from, "First axis value")->required();
  sweep->add_option("--to", o.to, "Last axis value")->required();
  sweep->add_option("--steps", o.steps, "Number of rows");
  sweep->add_option("--m", o.m, "Row index for the u axis (default N)");
  sweep->add_option("--k", o.k, "Column index for the u axis (default N)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*verify) return cmd_verify(o);
    if (*residue) return cmd_residue(o);
    if (*suite) return cmd_suite(o);
    if (*sweep) return cmd_sweep(o);
  } catch (const UsageError& e) {
    std::cerr << "mbverify: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "mbverify: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
