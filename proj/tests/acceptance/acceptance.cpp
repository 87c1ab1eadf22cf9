// Acceptance run: one [PASS]/[FAIL] line per criterion, at the pinned
// tolerances and instance counts. Exit status 0 only when every line passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mbverify/determinant.hpp"
#include "mbverify/parallel.hpp"
#include "mbverify/series.hpp"
#include "mbverify/special_functions.hpp"
#include "mbverify/verification.hpp"

using namespace mbverify;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

// Quadrature of `count` random instances against the closed form; returns
// the worst relative error and whether every report passed at `budget`.
struct Batch {
  double worst = 0.0;
  bool all_pass = true;
  double seconds = 0.0;
  std::vector<VerificationReport> reports;
};

Batch quadrature_batch(MBFamily family, int N, int count, double budget) {
  const auto t0 = std::chrono::steady_clock::now();
  Batch b;
  RouteConfig rc;
  rc.budget = budget;
  for (int i = 0; i < count; ++i) {
    const VerificationReport r = verify_instance(random_params(family, N, kSeed, i), Route::quadrature, rc);
    b.worst = std::max(b.worst, std::isnan(r.rel_err) ? INFINITY : r.rel_err);
    b.all_pass = b.all_pass && r.pass;
    b.reports.push_back(r);
  }
  b.seconds = seconds_since(t0);
  return b;
}

Outcome criterion_first_barnes() {
  const auto t0 = std::chrono::steady_clock::now();
  const MBParameterSet half{MBFamily::GustafsonFirst, 1, {0.5, 0.5}, {0.5, 0.5}, std::nullopt};
  RouteConfig rc;
  rc.budget = 1e-8;
  const VerificationReport r = verify_instance(half, Route::quadrature, rc);
  const double one_err = std::abs(r.lhs - 1.0);
  const Batch b = quadrature_batch(MBFamily::GustafsonFirst, 1, 20, 1e-8);
  const double secs = seconds_since(t0);
  return {r.pass && one_err <= 1e-8 && b.all_pass && secs < 5.0,
          "alpha=beta=1/2 |LHS-1| " + sci(one_err) + "; 20 instances worst rel " + sci(b.worst) +
              " (limit 1e-8, < 5 s)"};
}

Outcome criterion_first_integral() {
  const Batch n2 = quadrature_batch(MBFamily::GustafsonFirst, 2, 10, 1e-6);
  const Batch n3 = quadrature_batch(MBFamily::GustafsonFirst, 3, 10, 1e-4);
  std::ostringstream os;
  os.precision(1);
  os << std::fixed << "N=2 worst rel " << sci(n2.worst) << " in " << n2.seconds << " s (limit 1e-6, < 120 s); N=3 worst rel "
     << sci(n3.worst) << " in " << n3.seconds << " s (limit 1e-4, < 1800 s, slow)";
  return {n2.all_pass && n3.all_pass && n2.seconds < 120.0 && n3.seconds < 1800.0, os.str()};
}

Outcome criterion_second_barnes() {
  const Batch b = quadrature_batch(MBFamily::GustafsonSecond, 1, 20, 1e-8);
  return {b.all_pass && b.seconds < 10.0, "20 instances worst rel " + sci(b.worst) + " (limit 1e-8, < 10 s)"};
}

Outcome criterion_second_integral() {
  const Batch b = quadrature_batch(MBFamily::GustafsonSecond, 2, 10, 1e-6);
  return {b.all_pass && b.seconds < 300.0, "10 instances worst rel " + sci(b.worst) + " (limit 1e-6, < 300 s)"};
}

// Shared by criteria 5 and 6.
std::vector<VerificationReport> r_quadrature;

Outcome criterion_r_closed_form() {
  bool pass = true;
  std::ostringstream os;
  for (int N : {1, 2}) {
    const double budget = N == 1 ? 1e-6 : 1e-5;
    for (MBFamily f : {MBFamily::RPlus, MBFamily::RMinus}) {
      const Batch b = quadrature_batch(f, N, 10, budget);
      pass = pass && b.all_pass;
      r_quadrature.insert(r_quadrature.end(), b.reports.begin(), b.reports.end());
      os << family_name(f) << " N=" << N << " " << sci(b.worst) << "; ";
    }
  }
  os << "worst rel per group (limits 1e-6 / 1e-5)";
  return {pass, os.str()};
}

Outcome criterion_route_triangle() {
  if (r_quadrature.empty()) return {false, "criterion 5 produced no instances"};
  int bad_series = 0, bad_det = 0, bad_pair = 0;
  double worst_ratio = 0.0;
  std::vector<VerificationReport> series(r_quadrature.size()), det(r_quadrature.size());
  RouteConfig rc;
  rc.n_max = 60;
  parallel_for(r_quadrature.size(), [&](std::size_t i) {
    series[i] = verify_instance(r_quadrature[i].params, Route::series, rc);
    det[i] = verify_instance(r_quadrature[i].params, Route::determinant, rc);
  });
  for (std::size_t i = 0; i < r_quadrature.size(); ++i) {
    const VerificationReport& q = r_quadrature[i];
    const double sq = std::abs(series[i].lhs - q.lhs), sb = series[i].error_estimate + q.error_estimate;
    const double dq = std::abs(det[i].lhs - q.lhs), db = det[i].error_estimate + q.error_estimate;
    const double sd = std::abs(series[i].lhs - det[i].lhs);
    if (!(sq <= sb)) ++bad_series;
    if (!(dq <= db)) ++bad_det;
    if (!(sd <= 2.0 * (series[i].error_estimate + det[i].error_estimate))) ++bad_pair;
    worst_ratio = std::max(worst_ratio, dq / db);
  }
  std::ostringstream os;
  os << r_quadrature.size() << " instances; outside budget: series-quadrature " << bad_series
     << ", determinant-quadrature " << bad_det << ", series-determinant " << bad_pair
     << "; worst |det-quad|/budget " << sci(worst_ratio);
  return {bad_series == 0 && bad_det == 0 && bad_pair == 0, os.str()};
}

Outcome criterion_milne() {
  double worst = 0.0;
  for (int N : {1, 2}) {
    for (int i = 0; i < 20; ++i) {
      const MBParameterSet p = random_params(MBFamily::RPlus, N, kSeed, i);
      worst = std::max(worst, rel(milne_sum(p, 60).value, milne_closed_form(p)));
    }
  }
  return {worst <= 1e-7, "n_max=60, 40 instances, worst rel " + sci(worst) + " (limit 1e-7)"};
}

Outcome criterion_residue() {
  double worst = 0.0;
  int failed = 0, total = 0;
  for (int N : {2, 3}) {
    for (MBFamily f : {MBFamily::RPlus, MBFamily::RMinus}) {
      for (int i = 0; i < 5; ++i) {
        const MBParameterSet p = random_params(f, N, kSeed, i);
        const ContourSpec c = default_contour(f, N, Route::residue_extraction);
        const ResidueFit fit = extract_residue(p, kDefaultEpsilons, ResidueRoute::determinant, c);
        const double e = rel(fit.residue, residue_predictions(p).via_reduced);
        worst = std::max(worst, e);
        failed += e > 5e-3;
        ++total;
      }
    }
  }
  std::ostringstream os;
  os << "eps {0.2,0.1,0.05}, " << total << " fits, " << failed << " above 5e-3, worst rel " << sci(worst);
  return {failed == 0, os.str()};
}

Outcome criterion_asymptotics() {
  int failed = 0, total = 0;
  double worst = 0.0;
  for (MBFamily f : {MBFamily::RPlus, MBFamily::RMinus}) {
    const int sign = r_sign(f);
    for (int i = 0; i < 5; ++i) {
      const MBParameterSet p = random_params(f, 2, kSeed, i);
      for (int m = 1; m <= 2; ++m) {
        for (int k = 1; k <= 2; ++k) {
          auto deviation = [&](double u) {
            const Complex z{0.0, -sign * u};
            return std::abs(q_entry_integrand(p, sign, m, k, z) / asymptotic_leading(p, sign, m, k, u) - 1.0);
          };
          const double ratio = deviation(40.0) / deviation(20.0);
          worst = std::max(worst, ratio);
          failed += !(ratio <= 0.6);
          ++total;
        }
      }
    }
  }
  return {failed == 0, std::to_string(total) + " (sign, instance, m, k) cases, worst dev(40)/dev(20) " + sci(worst) +
                           " (limit 0.6)"};
}

Outcome criterion_three_stars() {
  const Batch b = quadrature_batch(MBFamily::ThreeStars, 1, 10, 1e-6);
  return {b.all_pass, "10 instances, A = sum of alphas, worst rel " + sci(b.worst) + " (limit 1e-6)"};
}

Outcome criterion_invariants() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 g(kSeed);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  double reflection = 0, recurrence = 0, conjugation = 0, reciprocal = 0;
  int tested = 0;
  while (tested < 10000) {
    const double re = u(g);
    const double im = u(g);
    const Complex z{re, im};
    if (std::abs(z) > 50.0 || std::abs(z - std::round(re)) < 0.1) continue;
    ++tested;
    const Complex lg = log_gamma(z), lg1 = log_gamma(1.0 - z);
    reflection = std::max(reflection, std::abs(std::exp(lg + lg1 + log_sin_pi(z) - std::log(kPi)) - 1.0));
    recurrence = std::max(recurrence, std::abs(std::exp(log_gamma(z + 1.0) - lg - std::log(z)) - 1.0));
    reciprocal = std::max(reciprocal, std::abs(reciprocal_gamma(z) * std::exp(lg) - 1.0));
    conjugation = std::max(conjugation, std::abs(log_gamma(std::conj(z)) - std::conj(lg)) / std::max(1.0, std::abs(lg)));
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "10^4 samples: reflection " << sci(reflection) << " (1e-11), recurrence " << sci(recurrence)
     << " (1e-12), reciprocal " << sci(reciprocal) << " (1e-12), conjugation " << sci(conjugation) << " (1e-12)";
  return {reflection <= 1e-11 && recurrence <= 1e-12 && reciprocal <= 1e-12 && conjugation <= 1e-12 && secs < 5.0,
          os.str()};
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  status = pclose(pipe);
  return out;
}

Outcome criterion_determinism() {
  const std::string cmd = std::string(MBVERIFY_CLI_PATH) + " suite --seed 42 2>/dev/null";
  int s1 = 0, s2 = 0;
  const std::string a = capture(cmd, s1);
  const std::string b = capture(cmd, s2);
  std::size_t lines = 0;
  for (char c : a) lines += c == '\n';
  const bool same = !a.empty() && a == b;
  return {same, std::to_string(lines) + " JSON lines, " + std::to_string(a.size()) + " bytes, runs " +
                    (same ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  report(1, "first Barnes lemma", criterion_first_barnes);
  report(2, "first integral N=2,3", criterion_first_integral);
  report(3, "second Barnes lemma", criterion_second_barnes);
  report(4, "second integral N=2", criterion_second_integral);
  report(5, "R+- closed form", criterion_r_closed_form);
  report(6, "route triangle", criterion_route_triangle);
  report(7, "Milne sum at n_max=60", criterion_milne);
  report(8, "residue reduction N=2,3", criterion_residue);
  report(9, "entry asymptotics", criterion_asymptotics);
  report(10, "three-stars identity", criterion_three_stars);
  report(11, "special-function invariants", criterion_invariants);
  report(12, "suite determinism", criterion_determinism);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
