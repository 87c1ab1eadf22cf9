#include "mbverify/verification.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "mbverify/json_io.hpp"
#include "mbverify/parallel.hpp"
#include "mbverify/series.hpp"
#include "mbverify/special_functions.hpp"

namespace mbverify {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxAttempts = 1000;
constexpr double kSafetyMargin = 0.05;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Engine keyed by the full counter, so every instance is reproducible alone.
std::mt19937_64 instance_engine(MBFamily family, int N, std::uint64_t seed, std::uint64_t index, int attempt) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(family));
  h = splitmix64(h ^ static_cast<std::uint64_t>(N));
  h = splitmix64(h ^ index);
  h = splitmix64(h ^ static_cast<std::uint64_t>(attempt));
  return std::mt19937_64(h);
}

double uniform(std::mt19937_64& g, double lo, double hi) {
  const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Complex sample_parameter(std::mt19937_64& g) {
  const double re = uniform(g, 0.3, 1.2);
  const double im = uniform(g, -0.3, 0.3);
  return {re, im};
}

double distance_to_integer(Complex w) { return std::abs(w - std::round(w.real())); }

bool safe(const MBParameterSet& p) {
  for (std::size_t k = 0; k < p.betas.size(); ++k) {
    for (std::size_t j = k + 1; j < p.betas.size(); ++j) {
      if (distance_to_integer(p.betas[k] - p.betas[j]) < kSafetyMargin) return false;
    }
  }
  for (Complex arg : rhs_gamma_arguments(p)) {
    if (near_nonpositive_integer(arg, kSafetyMargin)) return false;
  }
  return true;
}

bool matches(const ToleranceOverride& o, MBFamily family, int N, Route route) {
  return (!o.family || *o.family == family) && (!o.route || *o.route == route) && (!o.N || *o.N == N);
}

void finish(VerificationReport& r) {
  r.abs_err = std::abs(r.lhs - r.rhs);
  const double scale = std::abs(r.rhs);
  r.rel_err = scale > 0.0 ? r.abs_err / scale : kNaN;
  const double measured = scale > kNearZeroRhs ? r.rel_err : r.abs_err;
  r.pass = measured <= r.budget;
}

void fail(VerificationReport& r, const std::string& message) {
  r.messages.push_back(message);
  r.lhs = {kNaN, kNaN};
  r.abs_err = kNaN;
  r.rel_err = kNaN;
  r.pass = false;
}

}  // namespace

std::string_view route_name(Route route) {
  switch (route) {
    case Route::quadrature: return "quadrature";
    case Route::series: return "series";
    case Route::determinant: return "determinant";
    case Route::residue_extraction: return "residue-extraction";
  }
  return "unknown";
}

Route parse_route(std::string_view name) {
  for (Route r : {Route::quadrature, Route::series, Route::determinant, Route::residue_extraction}) {
    if (route_name(r) == name) return r;
  }
  throw ParameterError("unknown route '" + std::string(name) +
                       "' (expected quadrature, series, determinant or residue-extraction)");
}

bool route_applies(MBFamily family, Route route) {
  return route == Route::quadrature || is_r_family(family);
}

ContourSpec default_contour(MBFamily family, int N, Route route) {
  ContourSpec c;
  const bool power_tail = is_r_family(family) || family == MBFamily::ThreeStars;
  c.truncation = power_tail ? 16.0 : 12.0;
  const bool one_dimensional = N == 1 || route == Route::determinant || route == Route::residue_extraction;
  c.nodes_per_unit = one_dimensional ? 32 : 24;
  return c;
}

double default_budget(MBFamily family, int N, Route route) {
  if (route == Route::residue_extraction) return 5e-3;
  double budget = N <= 1 ? 1e-8 : (N == 2 ? 1e-6 : 1e-4);
  if (is_r_family(family)) {
    if (N == 1) budget = 1e-6;
    if (N == 2) budget = 1e-5;
  }
  if (family == MBFamily::ThreeStars) budget = std::max(budget, 1e-6);
  return budget;
}

ContourSpec RouteConfig::contour_for(MBFamily family, int N, Route route) const {
  ContourSpec c = contour ? *contour : default_contour(family, N, route);
  if (truncation) c.truncation = *truncation;
  if (nodes_per_unit) c.nodes_per_unit = *nodes_per_unit;
  return c;
}

VerificationReport verify_instance(const MBParameterSet& p, Route route, const RouteConfig& config) {
  VerificationReport r;
  r.family = p.family;
  r.params = p;
  r.route = route;
  r.n_max = config.n_max;
  r.epsilons = config.epsilons;
  r.budget = config.budget ? *config.budget : default_budget(p.family, p.N, route);
  r.rhs = {kNaN, kNaN};

  try {
    check_arity(p);
    r.contour = config.contour_for(p.family, p.N, route);
    r.contour.check();
    if (!route_applies(p.family, route)) {
      fail(r, "route " + std::string(route_name(route)) + " applies only to RPlus and RMinus");
      return r;
    }

    if (route == Route::residue_extraction) {
      const ResiduePredictions pred = residue_predictions(p);
      r.rhs = pred.via_reduced;
      const MBParameterSet nearest = at_nu(p, config.epsilons.empty() ? 0.0 : config.epsilons.back());
      const ValidationReport v = validate(nearest, r.contour.shift);
      if (!v.contour_feasible) {
        for (const auto& m : v.messages) fail(r, m);
        return r;
      }
      const ResidueFit fit = extract_residue(p, config.epsilons, config.residue_route, r.contour);
      r.lhs = fit.residue;
      r.error_estimate = fit.residue_error;
      std::ostringstream os;
      os.precision(17);
      os << "closed-form residue prediction " << pred.via_closed_form.real() << (pred.via_closed_form.imag() < 0 ? "" : "+")
         << pred.via_closed_form.imag() << "i; fit condition number " << fit.condition_number;
      r.messages.push_back(os.str());
      finish(r);
      return r;
    }

    r.rhs = closed_form_rhs(p);
    if (route == Route::series) {
      const SeriesResult s = residue_series(p, config.n_max);
      r.lhs = s.value;
      r.error_estimate = s.tail_estimate;
      r.evaluations = s.terms_used;
      finish(r);
      return r;
    }

    const ValidationReport v = validate(p, r.contour.shift);
    if (!v.ok) {
      for (const auto& m : v.messages) fail(r, m);
      return r;
    }
    if (route == Route::determinant) {
      const DeterminantResult d = r_via_determinant(p, r_sign(p.family), r.contour);
      r.lhs = d.value;
      r.error_estimate = d.error_estimate;
      r.evaluations = d.matrix.evaluations;
    } else {
      const QuadResult q = integrate_factorized(factorized_integrand(p), r.contour);
      r.lhs = q.value;
      r.error_estimate = q.error_estimate;
      r.evaluations = q.evaluations;
    }
    finish(r);
  } catch (const Error& e) {
    fail(r, e.what());
  }
  return r;
}

std::vector<Complex> rhs_gamma_arguments(const MBParameterSet& p) {
  const DerivedQuantities d = derived_quantities(p);
  std::vector<Complex> args;
  if (p.family == MBFamily::ThreeStars) {
    args.push_back(p.betas[0] - d.A);
    for (std::size_t k = 0; k < p.alphas.size(); ++k) {
      for (std::size_t j = k + 1; j < p.alphas.size(); ++j) args.push_back(p.alphas[k] + p.alphas[j]);
    }
    return args;
  }
  for (Complex al : p.alphas) {
    for (Complex be : p.betas) args.push_back(al + be);
  }
  if (d.nu) {
    args.push_back(*d.nu);
    // Residue series denominators and the closed form at nu = 0.
    for (Complex be : p.betas) args.push_back(*p.a + be);
    for (Complex al : p.alphas) args.push_back(d.A + d.B - al);
  }
  return args;
}

MBParameterSet random_params(MBFamily family, int N, std::uint64_t seed, std::uint64_t index) {
  if (N < 1) throw ParameterError("N must be a positive integer");
  const Arity ar = arity(family, N);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 g = instance_engine(family, N, seed, index, attempt);
    MBParameterSet p;
    p.family = family;
    p.N = N;
    for (std::size_t i = 0; i < ar.alphas; ++i) p.alphas.push_back(sample_parameter(g));
    if (family == MBFamily::ThreeStars) {
      Complex A{0.0, 0.0};
      for (Complex al : p.alphas) A += al;
      p.betas.push_back(A + uniform(g, 0.3, 1.0));
    } else {
      for (std::size_t i = 0; i < ar.betas; ++i) p.betas.push_back(sample_parameter(g));
    }
    if (ar.has_a) {
      const DerivedQuantities d = derived_quantities(MBParameterSet{family, N, p.alphas, p.betas, Complex{}});
      p.a = d.A + d.B + uniform(g, 0.3, 1.0);
    }
    if (safe(p)) return p;
  }
  throw ParameterError("random_params: no safe sample after 1000 attempts");
}

std::vector<VerificationReport> run_suite(const SuiteConfig& config) {
  struct Job {
    MBFamily family;
    int N;
    Route route;
    std::uint64_t index;
  };
  std::vector<Job> jobs;
  for (MBFamily family : config.families) {
    for (int N : config.N_values) {
      for (Route route : config.routes) {
        if (!route_applies(family, route)) continue;
        for (int i = 0; i < config.instances_per_family; ++i) {
          jobs.push_back({family, N, route, static_cast<std::uint64_t>(i)});
        }
      }
    }
  }

  std::vector<VerificationReport> reports(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t j) {
    const Job& job = jobs[j];
    RouteConfig rc = config.route_config;
    for (const ToleranceOverride& o : config.tolerance_overrides) {
      if (matches(o, job.family, job.N, job.route)) rc.budget = o.budget;
    }
    try {
      const MBParameterSet p = random_params(job.family, job.N, config.seed, job.index);
      reports[j] = verify_instance(p, job.route, rc);
    } catch (const Error& e) {
      VerificationReport r;
      r.family = job.family;
      r.params.family = job.family;
      r.params.N = job.N;
      r.route = job.route;
      r.rhs = {kNaN, kNaN};
      fail(r, e.what());
      reports[j] = r;
    }
  });
  return reports;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

std::string report_to_json(const VerificationReport& r, bool pretty) {
  json::Object config;
  config.add("shift", r.contour.shift)
      .add("truncation", r.contour.truncation)
      .add("nodes_per_unit", r.contour.nodes_per_unit)
      .add("n_max", r.n_max);
  std::string eps = "[";
  for (std::size_t i = 0; i < r.epsilons.size(); ++i) eps += (i ? ", " : "") + json::number(r.epsilons[i]);
  config.raw("epsilons", eps + "]");

  json::Object o;
  o.add("family", family_name(r.family));
  o.raw("params", r.params.alphas.empty() ? "null" : params_to_json(r.params));
  o.add("route", route_name(r.route));
  o.add("lhs", r.lhs);
  o.add("rhs", r.rhs);
  o.add("abs_err", r.abs_err);
  o.add("rel_err", r.rel_err);
  o.add("budget", r.budget);
  o.add("pass", r.pass);
  o.add("error_estimate", r.error_estimate);
  o.add("evaluations", r.evaluations);
  o.add("config", config);
  o.add("messages", r.messages);
  return o.str(pretty);
}

std::string reports_to_json_lines(const std::vector<VerificationReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += report_to_json(r) + "\n";
  return out;
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::string out = "family,N,route,rel_err,pass\n";
  for (const auto& r : reports) {
    const std::string err = std::isnan(r.rel_err) ? "nan" : json::number(r.rel_err);
    out += std::string(family_name(r.family)) + "," + std::to_string(r.params.N) + "," +
           std::string(route_name(r.route)) + "," + err + "," + (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace mbverify
