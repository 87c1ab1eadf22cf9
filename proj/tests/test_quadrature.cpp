#include <cmath>
#include <limits>

#include "doctest.h"
#include "mbverify/mb_model.hpp"
#include "mbverify/quadrature.hpp"
#include "mbverify/special_functions.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace mbverify;
using testing_support::rel_err;

namespace {

MBParameterSet first_barnes() {
  return {MBFamily::GustafsonFirst, 1, {0.5, 0.5}, {0.5, 0.5}, std::nullopt};
}

MBParameterSet gf2() {
  return {MBFamily::GustafsonFirst, 2, {{0.6, 0.1}, {0.8, -0.2}, {0.5, 0.0}},
          {{0.7, 0.1}, {0.4, 0.0}, {0.9, -0.1}}, std::nullopt};
}

MBParameterSet rplus1(double nu) {
  MBParameterSet p{MBFamily::RPlus, 1, {0.4, 0.6}, {0.5}, std::nullopt};
  p.a = Complex{1.5 + nu, 0.0};
  return p;
}

}  // namespace

TEST_CASE("gauss_jacobi_unit integrates s^b polynomials exactly") {
  for (double b : {0.0, -0.5, 0.3, 1.7, 4.0}) {
    const UnitGaussRule r = gauss_jacobi_unit(12, b);
    REQUIRE(r.nodes.size() == 12);
    for (int k = 0; k <= 23; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      CHECK(std::abs(s - 1.0 / (b + k + 1.0)) < 1e-13);
    }
    for (double x : r.nodes) {
      CHECK(x > 0.0);
      CHECK(x < 1.0);
    }
  }
}

TEST_CASE("Cahen-Mellin: (1/2 pi i) int Gamma(z) dz on Re z = 1 is 1/e") {
  ContourSpec c;
  c.shift = 1.0;
  c.truncation = 30.0;
  const QuadResult q = integrate_line([](Complex z) { return gamma(z); }, c);
  CHECK(rel_err(q.value, oracle::kCahenMellin) < 1e-12);
  CHECK(q.error_estimate < 1e-10);
}

TEST_CASE("first Barnes lemma at alpha = beta = 1/2 gives 1") {
  const MBParameterSet p = first_barnes();
  ContourSpec c;
  c.truncation = 12.0;
  const QuadResult q = integrate_factorized(factorized_integrand(p), c);
  CHECK(rel_err(q.value, Complex{1.0, 0.0}) < 1e-12);
  CHECK(q.error_estimate < 1e-10);
}

TEST_CASE("odd integrands integrate to zero, even ones by power tails") {
  ContourSpec c;
  const QuadResult odd = integrate_line([](Complex z) { return z * std::exp(z * z); }, c);
  CHECK(std::abs(odd.value) < 1e-15);

  // 1/(1 - z^2) on Re z = 0 is 1/(1 + t^2): (1/2 pi) * pi = 1/2.
  const TailPair tails{TailModel::power_law(-2.0), TailModel::power_law(-2.0)};
  const QuadResult lorentz = integrate_line([](Complex z) { return 1.0 / (1.0 - z * z); }, c, tails);
  CHECK(std::abs(lorentz.value - 0.5) < 1e-12);
  CHECK(lorentz.error_estimate < 1e-10);
}

TEST_CASE("estimate_tail") {
  ContourSpec c;
  c.truncation = 10.0;
  SUBCASE("exponential") {
    const TailEstimate t = estimate_tail([](Complex z) { return Complex{std::exp(-2.0 * kPi * std::abs(z.imag())), 0}; },
                                         c, Direction::up);
    CHECK(t.fit == TailEstimate::Fit::exponential);
    CHECK(std::abs(t.rate - 2.0 * kPi) < 1e-8);
    CHECK(rel_err(t.bound, std::exp(-2.0 * kPi * 10.0) / (2.0 * kPi)) < 1e-6);
  }
  SUBCASE("power") {
    const TailEstimate t =
        estimate_tail([](Complex z) { return Complex{std::pow(std::abs(z.imag()), -3.0), 0}; }, c, Direction::down);
    CHECK(t.fit == TailEstimate::Fit::power);
    CHECK(std::abs(t.rate - 3.0) < 1e-8);
    CHECK(rel_err(t.bound, 0.5 / 100.0) < 1e-6);
  }
  SUBCASE("divergent") {
    const TailEstimate t = estimate_tail([](Complex z) { return Complex{std::abs(z.imag()), 0}; }, c, Direction::up);
    CHECK(t.fit == TailEstimate::Fit::divergent);
    CHECK(std::isinf(t.bound));
  }
  SUBCASE("vanishing") {
    const TailEstimate t = estimate_tail([](Complex) { return Complex{0, 0}; }, c, Direction::up);
    CHECK(t.bound == 0.0);
  }
  SUBCASE("R+ integrand decays like |t|^(-1-nu) downward") {
    const MBParameterSet p = rplus1(0.5);
    ContourSpec c16;
    const TailEstimate t = estimate_tail(
        [&](Complex z) {
          const Complex zs[1] = {z};
          return integrand(p, zs);
        },
        c16, Direction::down);
    CHECK(t.fit == TailEstimate::Fit::power);
    CHECK(std::abs(t.rate - 1.5) < 0.15);
  }
}

TEST_CASE("make_line_rule layout") {
  ContourSpec c;
  c.truncation = 8.0;
  c.nodes_per_unit = 16;
  const LineRule plain = make_line_rule(c, {});
  CHECK(plain.size() == 16 * 16);
  double total = 0.0;
  for (double w : plain.weights) total += w;
  CHECK(std::abs(total - 16.0) < 1e-12);
  const LineRule coarse = make_line_rule(c, {}, true);
  CHECK(coarse.size() == 8 * 16);
  const LineRule tailed = make_line_rule(c, {TailModel::power_law(-2.0), TailModel::truncate()});
  CHECK(tailed.size() == plain.size() + kTailNodes);
  CHECK(make_line_rule(c, {TailModel::power_law(-2.0), TailModel::truncate()}, true).size() ==
        coarse.size() + kCoarseTailNodes);
  CHECK_THROWS_AS(make_line_rule(c, {TailModel::power_law(-0.5), TailModel::truncate()}), QuadratureError);
}

TEST_CASE("tensor rule in one dimension equals the line rule") {
  const MBParameterSet p = first_barnes();
  ContourSpec c;
  c.truncation = 10.0;
  const QuadResult line = integrate_line(
      [&](Complex z) {
        const Complex zs[1] = {z};
        return integrand(p, zs);
      },
      c);
  const QuadResult tensor = integrate_tensor([&](std::span<const Complex> z) { return integrand(p, z); }, c, 1);
  CHECK(std::abs(line.value - tensor.value) < 1e-15);
}

TEST_CASE("two-dimensional first integral: tensor, factorized and closed form agree") {
  const MBParameterSet p = gf2();
  ContourSpec c;
  c.truncation = 10.0;
  c.nodes_per_unit = 12;
  const FactorizedIntegrand f = factorized_integrand(p);
  const QuadResult fact = integrate_factorized(f, c);
  const QuadResult tensor = integrate_tensor([&](std::span<const Complex> z) { return integrand(p, z); }, c, 2);
  const Complex rhs = closed_form_rhs(p);
  CHECK(rel_err(fact.value, rhs) < 1e-7);
  CHECK(rel_err(tensor.value, fact.value) < 1e-12);
  CHECK(std::abs(fact.value - rhs) <= fact.error_estimate + 1e-12);
}

TEST_CASE("two-dimensional second integral") {
  const MBParameterSet p{MBFamily::GustafsonSecond, 2, {{0.6, 0.1}, {0.8, -0.2}, {0.5, 0.0}, {0.7, 0.05}},
                         {{0.7, 0.1}, {0.4, 0.0}, {0.9, -0.1}}, std::nullopt};
  ContourSpec c;
  c.truncation = 12.0;
  c.nodes_per_unit = 16;
  const QuadResult q = integrate_factorized(factorized_integrand(p), c);
  CHECK(rel_err(q.value, closed_form_rhs(p)) < 1e-7);
}

TEST_CASE("doubling the density moves the value by less than the error estimate") {
  for (const MBParameterSet& p : {first_barnes(), rplus1(0.6), gf2()}) {
    ContourSpec c;
    c.truncation = p.N == 1 ? 16.0 : 10.0;
    c.nodes_per_unit = p.N == 1 ? 16 : 8;
    const FactorizedIntegrand f = factorized_integrand(p);
    const QuadResult a = integrate_factorized(f, c);
    c.nodes_per_unit *= 2;
    const QuadResult b = integrate_factorized(f, c);
    CHECK(std::abs(a.value - b.value) <= a.error_estimate);
  }
}

TEST_CASE("moving the contour inside the pole gap leaves the value unchanged") {
  const MBParameterSet p{MBFamily::GustafsonFirst, 1, {0.6, {0.9, 0.2}}, {0.45, {0.7, -0.1}}, std::nullopt};
  ContourSpec c;
  c.truncation = 12.0;
  const FactorizedIntegrand f = factorized_integrand(p);
  const Complex ref = integrate_factorized(f, c).value;
  for (double shift : {-0.3, -0.1, 0.2, 0.5}) {
    c.shift = shift;
    CHECK(rel_err(integrate_factorized(f, c).value, ref) < 1e-8);
  }
}

TEST_CASE("integration is linear and measures scale by 2^-dim") {
  ContourSpec c;
  auto f = [](Complex z) { return gamma(0.5 - z) * gamma(0.5 + z); };
  auto g = [](Complex z) { return std::exp(kPi * kI * z) * gamma(0.3 - z) * gamma(0.7 + z); };
  const Complex a{0.3, -1.2}, b{2.0, 0.5};
  const Complex lhs = integrate_line([&](Complex z) { return a * f(z) + b * g(z); }, c).value;
  const Complex rhs = a * integrate_line(f, c).value + b * integrate_line(g, c).value;
  CHECK(std::abs(lhs - rhs) < 1e-13);

  for (int dim : {1, 2}) {
    ContourSpec cc;
    cc.truncation = 8.0;
    cc.nodes_per_unit = 8;
    auto h = [](std::span<const Complex> z) {
      Complex v{1.0, 0.0};
      for (Complex x : z) v *= gamma(0.5 - x) * gamma(0.5 + x);
      return v;
    };
    const Complex two = integrate_tensor(h, cc, dim, {}, Measure::two_pi_i).value;
    const Complex four = integrate_tensor(h, cc, dim, {}, Measure::four_pi_i).value;
    CHECK(std::abs(four * std::pow(2.0, dim) - two) < 1e-14);
  }
}

TEST_CASE("quadrature errors") {
  ContourSpec bad;
  bad.truncation = 2.0;
  CHECK_THROWS_AS(bad.check(), ParameterError);
  bad.truncation = 16.0;
  bad.nodes_per_unit = 2;
  CHECK_THROWS_AS(bad.check(), ParameterError);

  ContourSpec c;
  CHECK_THROWS_AS(integrate_line([](Complex) { return Complex{std::numeric_limits<double>::quiet_NaN(), 0.0}; }, c),
                  QuadratureError);
  CHECK_THROWS_AS(integrate_tensor([](std::span<const Complex>) { return Complex{1.0, 0.0}; }, c, 4), Error);
}
