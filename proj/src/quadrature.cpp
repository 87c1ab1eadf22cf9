#include "mbverify/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "mbverify/kernels.hpp"
#include "mbverify/parallel.hpp"

namespace mbverify {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Heights of the "other" variables when a single axis is probed for its tail.
// Distinct and non-zero so that pair factors and z = 0 zeros do not vanish.
constexpr std::array<double, 2> kAnchorHeights = {0.31, -0.57};

const UnitGaussRule& legendre_panel_rule() {
  static const UnitGaussRule rule = gauss_jacobi_unit(kNodesPerPanel, 0.0);
  return rule;
}

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

[[noreturn]] void non_finite(Complex z, Complex v) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite integrand value (" << v.real() << ", " << v.imag() << ") at node z = ("
     << z.real() << ", " << z.imag() << ")";
  throw QuadratureError(os.str());
}

double measure_factor(Measure m) { return m == Measure::four_pi_i ? 4.0 * kPi : 2.0 * kPi; }

std::vector<Complex> contour_points(const LineRule& rule, double shift) {
  std::vector<Complex> z(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) z[k] = Complex(shift, rule.heights[k]);
  return z;
}

// Sum of tail fractions over every truncated (axis, direction): the bound of
// the 1-D slice beyond T relative to the slice's L1 mass on [-T, T]. The
// caller scales this by the L1 mass of the full integral.
double truncated_tail_fraction(const std::function<LineFunction(int)>& slice, int dim,
                               const ContourSpec& contour, const TailPair& tails) {
  const bool up = tails.up.kind == TailModel::Kind::truncate;
  const bool down = tails.down.kind == TailModel::Kind::truncate;
  if (!up && !down) return 0.0;

  ContourSpec probe = contour;
  probe.nodes_per_unit = 4;
  const LineRule central = make_line_rule(probe, TailPair{}, true);

  double fraction = 0.0;
  for (int axis = 0; axis < dim; ++axis) {
    const LineFunction g = slice(axis);
    double mass = 0.0;
    for (std::size_t k = 0; k < central.size(); ++k) {
      mass += central.weights[k] * std::abs(g(Complex(contour.shift, central.heights[k])));
    }
    for (Direction d : {Direction::up, Direction::down}) {
      if ((d == Direction::up && !up) || (d == Direction::down && !down)) continue;
      const double bound = estimate_tail(g, contour, d).bound;
      if (bound == 0.0) continue;
      fraction += mass > 0.0 ? bound / mass : kInf;
    }
  }
  return fraction;
}

std::vector<Complex> anchored_point(int dim, int axis, Complex z, double shift) {
  std::vector<Complex> point(static_cast<std::size_t>(dim));
  int other = 0;
  for (int j = 0; j < dim; ++j) {
    point[j] = j == axis ? z : Complex(shift, kAnchorHeights[other++]);
  }
  return point;
}

}  // namespace

void ContourSpec::check() const {
  if (!(truncation >= 5.0)) {
    throw ParameterError("contour truncation height must be >= 5");
  }
  if (nodes_per_unit < 4) {
    throw ParameterError("contour nodes_per_unit must be >= 4");
  }
  if (!std::isfinite(shift)) throw ParameterError("contour shift must be finite");
}

UnitGaussRule gauss_jacobi_unit(int n, double b) {
  if (n < 1) throw QuadratureError("Gauss-Jacobi rule needs at least one node");
  if (!(b > -1.0)) throw QuadratureError("Gauss-Jacobi weight exponent must exceed -1");

  // Jacobi (alpha = 0, beta = b) recurrence on [-1, 1], shifted to [0, 1].
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + b;
    const double a = k == 0 ? b / (b + 2.0) : (b * b) / (s * (s + 2.0));
    diag[k] = 0.5 * (1.0 + a);
    if (k + 1 < n) {
      const double m = k + 1.0;
      const double t = 2.0 * m + b;
      const double beta = 4.0 * m * m * (m + b) * (m + b) / (t * t * (t + 1.0) * (t - 1.0));
      sub[k] = 0.5 * std::sqrt(beta);
    }
  }

  UnitGaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag[0];
    rule.weights[0] = 1.0 / (b + 1.0);
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  const double mass = 1.0 / (b + 1.0);
  for (int k = 0; k < n; ++k) {
    const double v = solver.eigenvectors()(0, k);
    rule.nodes[k] = solver.eigenvalues()[k];
    rule.weights[k] = mass * v * v;
  }
  return rule;
}

LineRule make_line_rule(const ContourSpec& contour, const TailPair& tails, bool coarse) {
  contour.check();
  const double T = contour.truncation;
  int panels = std::max(1, static_cast<int>(std::ceil(2.0 * T * contour.nodes_per_unit / kNodesPerPanel - 1e-9)));
  if (coarse) panels = std::max(1, (panels + 1) / 2);
  const double width = 2.0 * T / panels;

  LineRule rule;
  auto add_tail = [&](const TailModel& tail, double sign) {
    if (tail.kind != TailModel::Kind::power_law) return;
    const double b = -tail.exponent.real() - 2.0;
    if (!(b > -1.0)) {
      throw QuadratureError("power-law tail must decay faster than 1/|t| (Re exponent < -1)");
    }
    const UnitGaussRule gj = gauss_jacobi_unit(coarse ? kCoarseTailNodes : kTailNodes, b);
    for (std::size_t k = 0; k < gj.nodes.size(); ++k) {
      const double s = gj.nodes[k];
      rule.heights.push_back(sign * T / s);
      rule.weights.push_back(gj.weights[k] * T * std::pow(s, -2.0 - b));
    }
  };

  add_tail(tails.down, -1.0);
  const UnitGaussRule& gl = legendre_panel_rule();
  for (int p = 0; p < panels; ++p) {
    const double left = -T + p * width;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      rule.heights.push_back(left + width * gl.nodes[k]);
      rule.weights.push_back(width * gl.weights[k]);
    }
  }
  add_tail(tails.up, 1.0);
  return rule;
}

TailEstimate estimate_tail(const LineFunction& f, const ContourSpec& contour, Direction direction) {
  const double T = contour.truncation;
  const double sign = direction == Direction::up ? 1.0 : -1.0;
  const std::array<double, 3> h = {T, 1.25 * T, 1.5 * T};
  std::array<double, 3> y{};
  for (int k = 0; k < 3; ++k) {
    y[k] = std::abs(f(Complex(contour.shift, sign * h[k])));
    if (!std::isfinite(y[k])) return {kInf, TailEstimate::Fit::divergent, 0.0};
  }
  if (y[0] == 0.0 && y[1] == 0.0 && y[2] == 0.0) return {};
  if (y[0] > 0.0 && (y[1] == 0.0 || y[2] == 0.0)) {
    // Underflows within the probe window: whatever remains sits in [T, 1.25T].
    return {y[0] * 0.25 * T, TailEstimate::Fit::exponential, kInf};
  }
  if (!(y[1] < y[0] && y[2] < y[1])) return {kInf, TailEstimate::Fit::divergent, 0.0};

  struct Line {
    double slope, intercept, residual;
  };
  auto fit = [&](const std::array<double, 3>& x) {
    double mx = 0, my = 0;
    std::array<double, 3> ly{};
    for (int k = 0; k < 3; ++k) {
      ly[k] = std::log(y[k]);
      mx += x[k] / 3.0;
      my += ly[k] / 3.0;
    }
    double sxx = 0, sxy = 0;
    for (int k = 0; k < 3; ++k) {
      sxx += (x[k] - mx) * (x[k] - mx);
      sxy += (x[k] - mx) * (ly[k] - my);
    }
    Line line{sxy / sxx, 0.0, 0.0};
    line.intercept = my - line.slope * mx;
    for (int k = 0; k < 3; ++k) {
      const double r = ly[k] - (line.intercept + line.slope * x[k]);
      line.residual += r * r;
    }
    return line;
  };

  const Line expo = fit(h);
  const Line power = fit({std::log(h[0]), std::log(h[1]), std::log(h[2])});
  if (expo.residual <= power.residual) {
    const double rate = -expo.slope;
    const double at_T = std::exp(expo.intercept + expo.slope * T);
    return {at_T / rate, TailEstimate::Fit::exponential, rate};
  }
  const double q = -power.slope;
  if (q <= 1.0) return {kInf, TailEstimate::Fit::divergent, q};
  const double at_T = std::exp(power.intercept + power.slope * std::log(T));
  return {at_T * T / (q - 1.0), TailEstimate::Fit::power, q};
}

QuadResult integrate_line(const LineFunction& f, const ContourSpec& contour, const TailPair& tails) {
  QuadResult result;
  auto pass = [&](const LineRule& rule, double* mass) {
    std::vector<Complex> terms(rule.size());
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const Complex z(contour.shift, rule.heights[k]);
      const Complex v = f(z);
      if (!finite(v)) non_finite(z, v);
      terms[k] = rule.weights[k] * v;
      if (mass) *mass += std::abs(terms[k]);
    }
    result.evaluations += rule.size();
    return kernels::pairwise_sum(terms) / (2.0 * kPi);
  };

  double mass = 0.0;
  const Complex full = pass(make_line_rule(contour, tails, false), nullptr);
  const Complex coarse = pass(make_line_rule(contour, tails, true), &mass);
  double tail = 0.0;
  for (Direction d : {Direction::up, Direction::down}) {
    const TailModel& model = d == Direction::up ? tails.up : tails.down;
    if (model.kind != TailModel::Kind::truncate) continue;
    tail += estimate_tail(f, contour, d).bound / (2.0 * kPi);
    result.evaluations += 3;
  }
  (void)mass;
  result.value = full;
  result.error_estimate = std::abs(full - coarse) + tail;
  return result;
}

QuadResult integrate_tensor(const PointFunction& f, const ContourSpec& contour, int dim,
                            const TailPair& tails, Measure measure) {
  if (dim < 1 || dim > 3) throw QuadratureError("integrate_tensor supports 1 <= dim <= 3");
  QuadResult result;
  const double scale = std::pow(measure_factor(measure), dim);

  auto pass = [&](const LineRule& rule, double* mass) {
    const std::size_t n = rule.size();
    const std::vector<Complex> z = contour_points(rule, contour.shift);
    const std::size_t inner = dim == 1 ? 1 : (dim == 2 ? n : n * n);
    std::vector<Complex> partial(n);
    std::vector<double> partial_mass(n, 0.0);
    parallel_for(n, [&](std::size_t i0) {
      std::vector<Complex> terms(inner);
      std::vector<Complex> point(static_cast<std::size_t>(dim));
      point[0] = z[i0];
      double m = 0.0;
      for (std::size_t r = 0; r < inner; ++r) {
        double w = rule.weights[i0];
        if (dim >= 2) {
          const std::size_t i1 = dim == 2 ? r : r / n;
          point[1] = z[i1];
          w *= rule.weights[i1];
        }
        if (dim == 3) {
          const std::size_t i2 = r % n;
          point[2] = z[i2];
          w *= rule.weights[i2];
        }
        const Complex v = f(point);
        if (!finite(v)) non_finite(point.back(), v);
        terms[r] = w * v;
        m += std::abs(terms[r]);
      }
      partial[i0] = kernels::pairwise_sum(terms);
      partial_mass[i0] = m;
    });
    std::size_t count = 1;
    for (int d = 0; d < dim; ++d) count *= n;
    result.evaluations += count;
    if (mass) {
      for (double m : partial_mass) *mass += m;
    }
    return kernels::pairwise_sum(partial) / scale;
  };

  double mass = 0.0;
  const Complex full = pass(make_line_rule(contour, tails, false), nullptr);
  const Complex coarse = pass(make_line_rule(contour, tails, true), &mass);
  const double fraction = truncated_tail_fraction(
      [&](int axis) -> LineFunction {
        return [&, axis](Complex zt) {
          const std::vector<Complex> p = anchored_point(dim, axis, zt, contour.shift);
          return f(p);
        };
      },
      dim, contour, tails);
  result.value = full;
  result.error_estimate = std::abs(full - coarse) + (fraction > 0.0 ? fraction * mass / scale : 0.0);
  return result;
}

Complex FactorizedIntegrand::evaluate(std::span<const Complex> z) const {
  Complex log_sum{0.0, 0.0};
  for (std::size_t k = 0; k < z.size(); ++k) {
    log_sum += log_point(z[k]);
    for (std::size_t j = k + 1; j < z.size(); ++j) log_sum += log_pair(z[k], z[j]);
  }
  return std::exp(log_sum);
}

QuadResult integrate_factorized(const FactorizedIntegrand& f, const ContourSpec& contour) {
  const int dim = f.dim;
  if (dim < 1 || dim > 3) throw QuadratureError("integrate_factorized supports 1 <= dim <= 3");
  QuadResult result;
  const double scale = std::pow(measure_factor(f.measure), dim);
  const double growth = f.pair_growth;

  // Returns the weighted sum; with `magnitudes` the same sum over |terms|.
  auto pass = [&](const LineRule& rule, bool magnitudes) -> Complex {
    const std::size_t n = rule.size();
    const std::vector<Complex> z = contour_points(rule, contour.shift);
    auto fold = [&](Complex v) { return magnitudes ? Complex(std::abs(v), 0.0) : v; };

    // Point factors, rescaled by exp((dim-1) growth |Im z|) to balance the
    // pair factors below, which are rescaled by exp(-growth (|Im z|+|Im w|)).
    kernels::ComplexArray a(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Complex lp = f.log_point(z[k]) + (dim - 1) * growth * std::abs(z[k].imag());
      const Complex v = std::exp(lp);
      if (!finite(v)) non_finite(z[k], v);
      a.set(k, fold(rule.weights[k] * v));
    }
    if (dim == 1) return kernels::sum(a.view());

    kernels::ComplexArray pair(n * n);
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = i; j < n; ++j) {
        const double damp = growth * (std::abs(z[i].imag()) + std::abs(z[j].imag()));
        const Complex v = std::exp(f.log_pair(z[i], z[j]) - damp);
        if (!finite(v)) non_finite(z[j], v);
        pair.set(i * n + j, fold(v));
        pair.set(j * n + i, fold(v));
      }
    });

    std::vector<Complex> rows(n);
    if (dim == 2) {
      parallel_for(n, [&](std::size_t i) {
        rows[i] = a.get(i) * kernels::dot(pair.view(i * n, n), a.view());
      });
      return kernels::pairwise_sum(rows);
    }
    parallel_for(n, [&](std::size_t i) {
      std::vector<Complex> terms(n);
      const kernels::ComplexView row_i = pair.view(i * n, n);
      for (std::size_t j = 0; j < n; ++j) {
        const Complex inner = kernels::dot3(row_i, pair.view(j * n, n), a.view());
        terms[j] = a.get(j) * pair.get(i * n + j) * inner;
      }
      rows[i] = a.get(i) * kernels::pairwise_sum(terms);
    });
    return kernels::pairwise_sum(rows);
  };

  const LineRule full_rule = make_line_rule(contour, f.tails, false);
  const LineRule coarse_rule = make_line_rule(contour, f.tails, true);
  const Complex full = pass(full_rule, false) / scale;
  const Complex coarse = pass(coarse_rule, false) / scale;
  std::size_t count_full = 1, count_coarse = 1;
  for (int d = 0; d < dim; ++d) {
    count_full *= full_rule.size();
    count_coarse *= coarse_rule.size();
  }
  result.evaluations = count_full + count_coarse;

  double tail = 0.0;
  const double fraction = truncated_tail_fraction(
      [&](int axis) -> LineFunction {
        return [&, axis](Complex zt) {
          const std::vector<Complex> p = anchored_point(dim, axis, zt, contour.shift);
          return f.evaluate(p);
        };
      },
      dim, contour, f.tails);
  if (fraction > 0.0) {
    const double mass = pass(coarse_rule, true).real() / scale;
    tail = std::isfinite(fraction) ? fraction * mass : kInf;
  }
  result.value = full;
  result.error_estimate = std::abs(full - coarse) + tail;
  return result;
}

}  // namespace mbverify
