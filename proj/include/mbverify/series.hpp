#pragma once

// Left-half-plane residue series for RPlus/RMinus and the bare multiple
// hypergeometric sum it contains, with beta_{N+1} = 1 - a:
//
//   S = sum_{n in [0, n_max]^N} prod_{k<j} (beta_k + n_k - beta_j - n_j)/(beta_k - beta_j)
//         * prod_j prod_{k=1}^{N+1} (alpha_k + beta_j)_{n_j} / (1 - beta_k + beta_j)_{n_j}
//
// Terms decay like n^(-1-Re nu) per coordinate, so the truncation error
// falls only like n_max^(-Re nu). tail_estimate reflects that.

#include <cstdint>
#include <span>

#include "mbverify/core.hpp"
#include "mbverify/mb_model.hpp"

namespace mbverify {

inline constexpr int kDefaultNMax = 60;

// beta_k - beta_j closer than this to an integer is rejected.
inline constexpr double kDegenerateSpacing = 0.05;

struct SeriesResult {
  Complex value{0.0, 0.0};      // truncated partial sum
  std::uint64_t terms_used = 0;
  // |S(n_max) - S(n_max - 2)| * max(1, n_max / Re nu). For terms ~ n^(-1-nu)
  // the remainder is about n_max / (2 nu) times the two-step difference; the
  // extra factor 2 covers the O(1/n) corrections. +inf for n_max < 2.
  double tail_estimate = 0.0;
};

/// The bare sum S truncated at n_max per coordinate.
/// Throws SeriesError for Re(nu) <= 0, degenerate beta spacing, or a
/// vanishing Pochhammer denominator; ParameterError for non-R families.
SeriesResult milne_sum(const MBParameterSet& p, int n_max = kDefaultNMax);

/// N! e^(-+ i pi B) prod Gamma(alpha_k + beta_j) / prod Gamma(a + beta_j) times milne_sum.
SeriesResult residue_series(const MBParameterSet& p, int n_max = kDefaultNMax);

/// Gamma(nu) prod_{j<=N} Gamma(a + beta_j) / prod_{j<=N+1} Gamma(a - alpha_j).
Complex milne_closed_form(const MBParameterSet& p);

/// One term of S at multi-index n (n.size() == N), computed from scratch.
Complex milne_term(const MBParameterSet& p, std::span<const int> n);

}  // namespace mbverify
