#pragma once

// Verification harness: evaluates the left-hand side of an identity by one
// route, compares it with the closed form, and serializes the outcome.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbverify/core.hpp"
#include "mbverify/determinant.hpp"
#include "mbverify/mb_model.hpp"
#include "mbverify/quadrature.hpp"

namespace mbverify {

enum class Route { quadrature, series, determinant, residue_extraction };

std::string_view route_name(Route route);  // "quadrature", "series", "determinant", "residue-extraction"
Route parse_route(std::string_view name);  // throws ParameterError

// Whether a route applies to a family: quadrature to all of them, the
// other three to RPlus/RMinus only.
bool route_applies(MBFamily family, Route route);

// Contour used when the caller does not supply one. Exponentially decaying
// families stop at T = 12; families with a power-law direction use T = 16
// and a Gauss-Jacobi tail. One-dimensional integrals (N = 1 and every
// determinant entry) use 32 nodes per unit length, tensor integrals 24.
ContourSpec default_contour(MBFamily family, int N, Route route);

// Relative tolerance per (family, N, route): 1e-8 / 1e-6 / 1e-4 for
// N = 1 / 2 / 3, loosened to 1e-6 (N = 1) and 1e-5 (N = 2) for the R+-
// routes and to 1e-6 for ThreeStars; 5e-3 for residue extraction.
double default_budget(MBFamily family, int N, Route route);

struct RouteConfig {
  std::optional<ContourSpec> contour;  // default_contour when absent
  std::optional<double> truncation;    // overrides only T of the contour
  std::optional<int> nodes_per_unit;   // overrides only the density
  int n_max = 60;
  std::vector<double> epsilons = kDefaultEpsilons;
  std::optional<double> budget;        // default_budget when absent
  ResidueRoute residue_route = ResidueRoute::determinant;

  ContourSpec contour_for(MBFamily family, int N, Route route) const;
};

struct VerificationReport {
  MBFamily family = MBFamily::GustafsonFirst;
  MBParameterSet params;
  Route route = Route::quadrature;
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_err = 0.0;
  double rel_err = 0.0;
  double budget = 0.0;
  bool pass = false;
  // Reported error of the LHS route (quadrature error estimate, series tail
  // estimate, or propagated fit error).
  double error_estimate = 0.0;
  std::uint64_t evaluations = 0;
  ContourSpec contour;
  int n_max = 0;
  std::vector<double> epsilons;
  std::vector<std::string> messages;
};

// Absolute error decides when |rhs| <= 1e-8, relative error otherwise.
inline constexpr double kNearZeroRhs = 1e-8;

/// Dispatches the route. Validation failures and numerical errors end up
/// in the report (pass = false, messages filled), never as exceptions.
VerificationReport verify_instance(const MBParameterSet& p, Route route, const RouteConfig& config = {});

/// Deterministic sample in the safe region: Re alpha, Re beta uniform in
/// [0.3, 1.2], Im in [-0.3, 0.3]; a = A + B + nu with nu in [0.3, 1.0]
/// for RPlus/RMinus; beta = A + delta with delta in [0.3, 1.0] for
/// ThreeStars. Resamples (up to 1000 times) when two betas differ by
/// less than 0.05 from an integer or a closed-form gamma argument lies
/// within 0.05 of a non-positive integer.
MBParameterSet random_params(MBFamily family, int N, std::uint64_t seed, std::uint64_t index);

// Gamma arguments of the closed form (numerator factors only).
std::vector<Complex> rhs_gamma_arguments(const MBParameterSet& p);

struct ToleranceOverride {
  std::optional<MBFamily> family;
  std::optional<Route> route;
  std::optional<int> N;
  double budget = 0.0;
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  int instances_per_family = 2;
  std::vector<int> N_values = {1, 2};
  std::vector<MBFamily> families = {kAllFamilies.begin(), kAllFamilies.end()};
  std::vector<Route> routes = {Route::quadrature, Route::determinant, Route::residue_extraction};
  std::vector<ToleranceOverride> tolerance_overrides;  // last match wins
  RouteConfig route_config;
};

/// Every applicable (family, N, route, instance) in that nesting order.
/// Instances run in parallel; the list order is the enumeration order.
std::vector<VerificationReport> run_suite(const SuiteConfig& config);

bool all_pass(const std::vector<VerificationReport>& reports);

// One JSON object per report, 17 significant digits.
std::string report_to_json(const VerificationReport& r, bool pretty = false);
std::string reports_to_json_lines(const std::vector<VerificationReport>& reports);
// Header "family,N,route,rel_err,pass" plus one row per report.
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

}  // namespace mbverify
