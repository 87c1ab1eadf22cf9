#include <cmath>
#include <set>

#include "doctest.h"
#include "mbverify/series.hpp"
#include "mbverify/special_functions.hpp"
#include "mbverify/verification.hpp"
#include "support.hpp"

using namespace mbverify;
using testing_support::rel_err;

TEST_CASE("route names") {
  for (Route r : {Route::quadrature, Route::series, Route::determinant, Route::residue_extraction}) {
    CHECK(parse_route(route_name(r)) == r);
  }
  CHECK(route_name(Route::residue_extraction) == "residue-extraction");
  CHECK_THROWS_AS(parse_route("montecarlo"), ParameterError);
  CHECK(route_applies(MBFamily::ThreeStars, Route::quadrature));
  CHECK_FALSE(route_applies(MBFamily::GustafsonFirst, Route::series));
  CHECK(route_applies(MBFamily::RMinus, Route::determinant));
}

TEST_CASE("budgets") {
  CHECK(default_budget(MBFamily::GustafsonFirst, 1, Route::quadrature) == 1e-8);
  CHECK(default_budget(MBFamily::GustafsonFirst, 2, Route::quadrature) == 1e-6);
  CHECK(default_budget(MBFamily::GustafsonSecond, 3, Route::quadrature) == 1e-4);
  CHECK(default_budget(MBFamily::RPlus, 1, Route::quadrature) == 1e-6);
  CHECK(default_budget(MBFamily::RMinus, 2, Route::determinant) == 1e-5);
  CHECK(default_budget(MBFamily::ThreeStars, 1, Route::quadrature) == 1e-6);
  CHECK(default_budget(MBFamily::RPlus, 3, Route::residue_extraction) == 5e-3);
}

TEST_CASE("first Barnes lemma passes") {
  const MBParameterSet p{MBFamily::GustafsonFirst, 1, {0.5, 0.5}, {0.5, 0.5}, std::nullopt};
  const VerificationReport r = verify_instance(p, Route::quadrature);
  CHECK(r.pass);
  CHECK(r.rel_err < 1e-10);
  CHECK(r.evaluations > 0);
  CHECK(r.messages.empty());
}

TEST_CASE("divergent R+- instance fails with the convergence message") {
  MBParameterSet p{MBFamily::RPlus, 1, {0.4, 0.6}, {0.5}, std::nullopt};
  p.a = Complex{1.3, 0.0};
  for (Route route : {Route::quadrature, Route::series, Route::determinant}) {
    const VerificationReport r = verify_instance(p, route);
    CHECK_FALSE(r.pass);
    REQUIRE_FALSE(r.messages.empty());
    CHECK(r.messages.front().find("converge only if Re(\xce\xbd)>0") != std::string::npos);
    CHECK(std::isnan(r.lhs.real()));
  }
}

TEST_CASE("routes not applicable to a family fail cleanly") {
  const VerificationReport r = verify_instance(random_params(MBFamily::GustafsonFirst, 1, 1, 0), Route::series);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.messages.empty());
}

TEST_CASE("random_params is deterministic and lands in the safe region") {
  for (MBFamily f : kAllFamilies) {
    for (int N : {1, 2, 3}) {
      for (std::uint64_t i = 0; i < 1000 / (3 * 6) + 1; ++i) {
        const MBParameterSet p = random_params(f, N, 42, i);
        const MBParameterSet q = random_params(f, N, 42, i);
        CHECK(p.alphas == q.alphas);
        CHECK(p.betas == q.betas);
        CHECK(p.a == q.a);
        CHECK_NOTHROW(check_arity(p));
        CHECK(validate(p).ok);
        for (Complex arg : rhs_gamma_arguments(p)) CHECK_FALSE(near_nonpositive_integer(arg, 0.05));
        for (std::size_t k = 0; k < p.betas.size(); ++k) {
          for (std::size_t j = k + 1; j < p.betas.size(); ++j) {
            CHECK(testing_support::integer_distance(p.betas[k] - p.betas[j]) >= 0.05);
          }
        }
        const DerivedQuantities d = derived_quantities(p);
        if (d.nu) {
          CHECK(d.nu->real() >= 0.3);
          CHECK(d.nu->real() <= 1.0);
          CHECK(std::abs(d.nu->imag()) < 1e-14);
        }
        if (f == MBFamily::ThreeStars) {
          const double delta = (p.betas[0] - d.A).real();
          CHECK(delta >= 0.3);
          CHECK(delta <= 1.0);
        } else {
          for (Complex x : p.alphas) {
            CHECK(x.real() >= 0.3);
            CHECK(x.real() <= 1.2);
            CHECK(std::abs(x.imag()) <= 0.3);
          }
        }
      }
    }
  }
  CHECK(random_params(MBFamily::RPlus, 2, 42, 0).alphas != random_params(MBFamily::RPlus, 2, 43, 0).alphas);
  CHECK(random_params(MBFamily::RPlus, 2, 42, 0).alphas != random_params(MBFamily::RPlus, 2, 42, 1).alphas);
  CHECK_THROWS_AS(random_params(MBFamily::RPlus, 0, 42, 0), ParameterError);
}

TEST_CASE("suite enumeration") {
  SuiteConfig empty;
  empty.families.clear();
  CHECK(run_suite(empty).empty());

  SuiteConfig cfg;
  cfg.families = {MBFamily::GustafsonFirst, MBFamily::RMinus};
  cfg.N_values = {1};
  cfg.instances_per_family = 2;
  const auto reports = run_suite(cfg);
  // GustafsonFirst: quadrature only; RMinus: three routes.
  REQUIRE(reports.size() == 2 + 3 * 2);
  CHECK(reports[0].family == MBFamily::GustafsonFirst);
  CHECK(reports[2].family == MBFamily::RMinus);
  CHECK(reports[2].route == Route::quadrature);
  CHECK(reports[4].route == Route::determinant);
  CHECK(reports[6].route == Route::residue_extraction);
  CHECK(all_pass(reports));
  CHECK(reports_to_json_lines(reports) == reports_to_json_lines(run_suite(cfg)));

  const std::string csv = reports_to_csv(reports);
  CHECK(csv.rfind("family,N,route,rel_err,pass\n", 0) == 0);

  SuiteConfig strict = cfg;
  strict.tolerance_overrides.push_back({MBFamily::GustafsonFirst, Route::quadrature, 1, 1e-300});
  const auto tight = run_suite(strict);
  CHECK_FALSE(tight[0].pass);
  CHECK(tight[2].pass);
}

TEST_CASE("report JSON layout") {
  const MBParameterSet p{MBFamily::GustafsonFirst, 1, {0.5, 0.5}, {0.5, 0.5}, std::nullopt};
  const std::string j = report_to_json(verify_instance(p, Route::quadrature));
  std::size_t last = 0;
  for (const char* key : {"\"family\"", "\"params\"", "\"route\"", "\"lhs\"", "\"rhs\"", "\"abs_err\"", "\"rel_err\"",
                          "\"budget\"", "\"pass\"", "\"error_estimate\"", "\"evaluations\"", "\"config\"",
                          "\"messages\""}) {
    const std::size_t at = j.find(key);
    REQUIRE(at != std::string::npos);
    CHECK(at >= last);
    last = at;
  }
  CHECK(j.find('\n') == std::string::npos);
}

TEST_CASE("route triangle on one R+- instance per N") {
  for (int N : {1, 2}) {
    const MBParameterSet p = random_params(MBFamily::RMinus, N, 7, 0);
    const VerificationReport q = verify_instance(p, Route::quadrature);
    const VerificationReport s = verify_instance(p, Route::series);
    const VerificationReport d = verify_instance(p, Route::determinant);
    CHECK(q.pass);
    CHECK(d.pass);
    CHECK(std::abs(s.lhs - q.lhs) <= s.error_estimate + q.error_estimate);
    CHECK(std::abs(d.lhs - q.lhs) <= d.error_estimate + q.error_estimate + 1e-12 * std::abs(q.rhs));
  }
}

TEST_CASE("second integral with a large alpha approaches the first integral") {
  // With alpha_{N+2} = M, Gamma(M - z)/Gamma(gamma - z) ~ M^-(A' + B) per variable.
  for (int N : {1, 2}) {
    const MBParameterSet gf = random_params(MBFamily::GustafsonFirst, N, 11, 0);
    Complex S{0.0, 0.0};
    for (Complex x : gf.alphas) S += x;
    for (Complex x : gf.betas) S += x;
    auto deviation = [&](double M) {
      MBParameterSet gs = gf;
      gs.family = MBFamily::GustafsonSecond;
      gs.alphas.push_back(M);
      const Complex scale = std::exp(-static_cast<double>(N) * S * std::log(M));
      const VerificationReport r = verify_instance(gs, Route::quadrature);
      CHECK(r.pass);
      return std::abs(r.lhs / (scale * closed_form_rhs(gf)) - 1.0);
    };
    // c/M + O(1/M^2): the ratio for doubled M climbs towards 2.
    const double d20 = deviation(20.0), d40 = deviation(40.0), d80 = deviation(80.0);
    CHECK(d20 / d40 >= 1.5);
    CHECK(d40 / d80 >= 1.7);
  }
}
