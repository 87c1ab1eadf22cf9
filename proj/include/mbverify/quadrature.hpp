#pragma once

// Integration along straight vertical contours Re z = c, in one to three
// dimensions. Every routine returns (1/2 pi i)^dim times the contour
// integral (or (1/4 pi i)^dim with Measure::four_pi_i).
//
// The central part |Im z - 0| <= T is covered by composite 16-point
// Gauss-Legendre panels. Beyond T an integrand is either dropped (its
// contribution is bounded by estimate_tail and added to the error estimate)
// or, when the caller declares power-law decay |f| ~ |t|^p, integrated to
// infinity with a Gauss-Jacobi rule in s = T/|t|.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mbverify/core.hpp"

namespace mbverify {

inline constexpr int kNodesPerPanel = 16;

// Where and how a vertical-line integral is discretized.
struct ContourSpec {
  double shift = 0.0;       // c in Re z = c
  double truncation = 16.0; // T: central range Im z in [-T, T]
  int nodes_per_unit = 32;  // Gauss-Legendre nodes per unit length of Im z

  // Throws ParameterError unless T >= 5 and nodes_per_unit >= 4.
  void check() const;
};

// Behaviour of the integrand beyond the truncation height in one direction.
struct TailModel {
  enum class Kind { truncate, power_law };
  Kind kind = Kind::truncate;
  Complex exponent{0.0, 0.0};  // f ~ |t|^exponent (power_law only)

  static TailModel truncate() { return {}; }
  static TailModel power_law(Complex p) { return {Kind::power_law, p}; }
};

struct TailPair {
  TailModel up;    // Im z -> +inf
  TailModel down;  // Im z -> -inf
};

enum class Direction { up, down };

enum class Measure { two_pi_i, four_pi_i };

struct QuadResult {
  Complex value{0.0, 0.0};
  // |full - coarse| + truncation-tail bound (additive combination).
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

// Nodes t_k and weights w_k with int f(c + i t) dt ~= sum_k w_k f(c + i t_k).
struct LineRule {
  std::vector<double> heights;
  std::vector<double> weights;
  std::size_t size() const { return heights.size(); }
};

// Gauss rule for int_0^1 s^b g(s) ds (b > -1), by Golub-Welsch.
struct UnitGaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
UnitGaussRule gauss_jacobi_unit(int n, double b);

// Nodes per Gauss-Jacobi tail rule in the full and the coarse pass.
inline constexpr int kTailNodes = 32;
inline constexpr int kCoarseTailNodes = 20;

// Full-density rule, or the coarse one (half the panels, fewer tail nodes)
// used for the error estimate.
LineRule make_line_rule(const ContourSpec& contour, const TailPair& tails, bool coarse = false);

using LineFunction = std::function<Complex(Complex)>;
using PointFunction = std::function<Complex(std::span<const Complex>)>;

struct TailEstimate {
  enum class Fit { vanishing, exponential, power, divergent };
  double bound = 0.0;  // bound on int_T^inf |f(c + i t)| dt in the direction
  Fit fit = Fit::vanishing;
  double rate = 0.0;   // decay rate (exponential) or exponent q in t^-q (power)
};

// Samples |f| at heights T, 1.25T, 1.5T in the given direction, fits an
// exponential and a power envelope (log-linear and log-log least squares),
// keeps the better one and integrates it analytically beyond T. Returns
// +inf when |f| does not decrease across the probes.
TailEstimate estimate_tail(const LineFunction& f, const ContourSpec& contour, Direction direction);

/// (1/2 pi i) int f(z) dz over Re z = c.
/// Throws QuadratureError when f is non-finite at a node.
QuadResult integrate_line(const LineFunction& f, const ContourSpec& contour,
                          const TailPair& tails = {});

/// Tensor product of the 1-D rule over dim <= 3 variables, one measure
/// factor per variable. evaluations counts (1-D node count)^dim per pass.
QuadResult integrate_tensor(const PointFunction& f, const ContourSpec& contour, int dim,
                            const TailPair& tails = {}, Measure measure = Measure::two_pi_i);

// Integrand of the form prod_k exp(log_point(z_k)) * prod_{k<j} exp(log_pair(z_k, z_j))
// with log_pair symmetric and |exp(log_pair(z, w))| <= C exp(pair_growth (|Im z| + |Im w|)).
// This covers every gamma-product family here and lets the tensor sum run as
// dense complex dot products instead of pointwise integrand calls.
struct FactorizedIntegrand {
  int dim = 1;
  std::function<Complex(Complex)> log_point;
  std::function<Complex(Complex, Complex)> log_pair;
  double pair_growth = 0.0;
  TailPair tails;
  Measure measure = Measure::two_pi_i;

  // exp of the summed logs at one point of the product contour.
  Complex evaluate(std::span<const Complex> z) const;
};

/// Same value as integrate_tensor(f.evaluate, ...), computed through the
/// factorized structure with the SIMD kernels.
QuadResult integrate_factorized(const FactorizedIntegrand& f, const ContourSpec& contour);

}  // namespace mbverify
