#pragma once

// Complex-plane gamma-family functions and overflow-safe trigonometric
// kernels. Everything here is a pure function of its arguments.

#include <cstdint>

#include "mbverify/core.hpp"

namespace mbverify {

// Arguments closer than this to a pole (or to a zero, for the reciprocal
// forms) are treated as sitting exactly on it.
inline constexpr double kPoleExclusionRadius = 1e-9;

// True when z lies within `radius` of one of 0, -1, -2, ...
bool near_nonpositive_integer(Complex z, double radius = kPoleExclusionRadius);

// True when z lies within `radius` of k + 1/2 for some integer k.
bool near_half_integer(Complex z, double radius = kPoleExclusionRadius);

/// Principal branch of log Gamma(z), continuous on C \ (-inf, 0].
///
/// Stirling series evaluated at z + n with n the smallest shift that makes
/// Re(z + n) >= 9, followed by the downward recurrence
/// log Gamma(z) = log Gamma(z + n) - sum_k log(z + k).
/// Throws PoleError near 0, -1, -2, ...
Complex log_gamma(Complex z);

/// Gamma(z) = exp(log_gamma(z)). Throws PoleError near the poles and
/// OverflowError when Re log_gamma(z) exceeds the largest finite exponent.
Complex gamma(Complex z);

/// 1/Gamma(z). Entire: returns exactly 0 at the poles of Gamma.
Complex reciprocal_gamma(Complex z);

/// log(1/Gamma(z)); real part is -inf at the poles of Gamma.
Complex log_reciprocal_gamma(Complex z);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1) by direct product.
Complex pochhammer(Complex a, std::uint32_t n);

/// log cos(pi z), continuous along any vertical line Re z = const.
/// Throws PoleError near half-integers (zeros of cos).
Complex log_cos_pi(Complex z);

/// tan(pi z) without overflow for large |Im z|; tends to +i as Im z -> +inf
/// and to -i as Im z -> -inf. Throws PoleError near half-integers.
Complex tan_pi(Complex z);

/// log sin(pi z) without overflow. Zeros of sin give a real part of -inf;
/// no exception is raised.
Complex log_sin_pi(Complex z);

/// log of 1/(Gamma(w) Gamma(-w)) = -w sin(pi w)/pi, evaluated without any
/// gamma call. The function is entire; its zeros (w integer) give -inf.
Complex log_inv_gamma_pair(Complex w);

}  // namespace mbverify
