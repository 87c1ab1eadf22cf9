#include "mbverify/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace mbverify {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2 pi)/2
constexpr double kStirlingShift = 9.0;
constexpr double kMaxExponent = 709.782712893384;  // log(DBL_MAX)

// B_{2k} / (2k (2k-1)), k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

std::string describe(const char* what, Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at z = (" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

Complex stirling(Complex w) {
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series = kStirling.back();
  for (auto it = kStirling.rbegin() + 1; it != kStirling.rend(); ++it) {
    series = series * inv2 + *it;
  }
  return (w - 0.5) * std::log(w) - w + kHalfLog2Pi + series * inv;
}

// e^{2 pi i z}; modulus <= 1 for Im z >= 0.
Complex phase_up(Complex z) {
  return std::polar(std::exp(-2.0 * kPi * z.imag()), 2.0 * kPi * z.real());
}

// e^{-2 pi i z}; modulus <= 1 for Im z <= 0.
Complex phase_down(Complex z) {
  return std::polar(std::exp(2.0 * kPi * z.imag()), -2.0 * kPi * z.real());
}

Complex damped_phase(Complex z) {
  return z.imag() >= 0.0 ? phase_up(z) : phase_down(z);
}

Complex log_cos_upper(Complex z) {
  return -kI * kPi * z + std::log((1.0 + phase_up(z)) * 0.5);
}

Complex log_cos_lower(Complex z) {
  return kI * kPi * z + std::log((1.0 + phase_down(z)) * 0.5);
}

}  // namespace

bool near_nonpositive_integer(Complex z, double radius) {
  const double k = std::round(z.real());
  if (k > 0.0) return false;
  return std::abs(z - Complex(k, 0.0)) < radius;
}

bool near_half_integer(Complex z, double radius) {
  const double h = std::round(z.real() - 0.5) + 0.5;
  return std::abs(z - Complex(h, 0.0)) < radius;
}

Complex log_gamma(Complex z) {
  if (near_nonpositive_integer(z)) {
    throw PoleError(describe("log_gamma pole", z));
  }
  Complex shifted_logs{0.0, 0.0};
  Complex w = z;
  while (w.real() < kStirlingShift) {
    shifted_logs += std::log(w);
    w += 1.0;
  }
  return stirling(w) - shifted_logs;
}

Complex gamma(Complex z) {
  const Complex lg = log_gamma(z);
  if (lg.real() > kMaxExponent) {
    throw OverflowError(describe("gamma overflow", z));
  }
  return std::exp(lg);
}

Complex reciprocal_gamma(Complex z) {
  if (near_nonpositive_integer(z)) return {0.0, 0.0};
  return std::exp(-log_gamma(z));
}

Complex log_reciprocal_gamma(Complex z) {
  if (near_nonpositive_integer(z)) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  return -log_gamma(z);
}

Complex pochhammer(Complex a, std::uint32_t n) {
  Complex product{1.0, 0.0};
  for (std::uint32_t k = 0; k < n; ++k) {
    product *= a + static_cast<double>(k);
  }
  return product;
}

Complex log_cos_pi(Complex z) {
  if (near_half_integer(z)) {
    throw PoleError(describe("log_cos_pi zero of cos", z));
  }
  if (z.imag() >= 0.0) return log_cos_upper(z);
  // Glue the lower half onto the upper one at Im z = 0 so that the branch
  // is continuous along the vertical line through z.
  const Complex on_axis(z.real(), 0.0);
  const double jump = (log_cos_upper(on_axis) - log_cos_lower(on_axis)).imag();
  const double turns = std::round(jump / (2.0 * kPi));
  return log_cos_lower(z) + kI * (2.0 * kPi * turns);
}

Complex tan_pi(Complex z) {
  if (near_half_integer(z)) {
    throw PoleError(describe("tan_pi pole", z));
  }
  const Complex q = damped_phase(z);
  if (z.imag() >= 0.0) {
    return kI * (1.0 - q) / (1.0 + q);
  }
  return -kI * (1.0 - q) / (1.0 + q);
}

Complex log_sin_pi(Complex z) {
  if (z.imag() == 0.0 && z.real() == std::round(z.real())) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  const Complex q = damped_phase(z);
  if (z.imag() >= 0.0) {
    return -kI * kPi * z + std::log((q - 1.0) / (2.0 * kI));
  }
  return kI * kPi * z + std::log((1.0 - q) / (2.0 * kI));
}

Complex log_inv_gamma_pair(Complex w) {
  if (w == Complex(0.0, 0.0)) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  return std::log(-w / kPi) + log_sin_pi(w);
}

}  // namespace mbverify
