#pragma once

// Helpers shared by the unit tests: an independent long double log-gamma,
// error metrics and a seeded sampler.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mbverify/core.hpp"

namespace testing_support {

using LComplex = std::complex<long double>;
using mbverify::Complex;

// Stirling series at z + n with Re(z + n) >= 24, 12 terms, long double.
inline LComplex log_gamma_ld(LComplex z) {
  static const long double b[] = {1.0L / 6,     -1.0L / 30,   1.0L / 42,        -1.0L / 30,
                                  5.0L / 66,    -691.0L / 2730, 7.0L / 6,       -3617.0L / 510,
                                  43867.0L / 798, -174611.0L / 330, 854513.0L / 138, -236364091.0L / 2730};
  LComplex shift_sum{0.0L, 0.0L};
  while (z.real() < 24.0L) {
    shift_sum += std::log(z);
    z += 1.0L;
  }
  const long double half_log_2pi = 0.918938533204672741780329736405617639861L;
  LComplex s = (z - 0.5L) * std::log(z) - z + half_log_2pi;
  LComplex zp = z;
  const LComplex z2 = z * z;
  for (int k = 1; k <= 12; ++k) {
    s += b[k - 1] / (static_cast<long double>(2 * k) * (2 * k - 1) * zp);
    zp *= z2;
  }
  return s - shift_sum;
}

inline double rel_err(Complex got, Complex want) {
  const double scale = std::abs(want);
  return scale > 0 ? std::abs(got - want) / scale : std::abs(got);
}

inline double rel_err(double got, double want) { return rel_err(Complex{got, 0.0}, Complex{want, 0.0}); }

inline double rel_err(std::complex<long double> got, std::complex<long double> want) {
  const long double scale = std::abs(want);
  return static_cast<double>(scale > 0 ? std::abs(got - want) / scale : std::abs(got));
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
  Complex complex(double lo_re, double hi_re, double lo_im, double hi_im) {
    const double re = uniform(lo_re, hi_re);
    const double im = uniform(lo_im, hi_im);
    return {re, im};
  }
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

// Distance from z to the nearest integer.
inline double integer_distance(Complex z) { return std::abs(z - std::round(z.real())); }

}  // namespace testing_support
