#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mbverify {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Base for every error raised by the library. Callers that only need to
// report a failure can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument within the pole-exclusion radius of a singularity.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Result exceeds the double-precision range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent parameter set (arity, family, sign).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class SeriesError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace mbverify
