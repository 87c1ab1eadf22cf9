#include "mbverify/series.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "mbverify/kernels.hpp"
#include "mbverify/special_functions.hpp"

namespace mbverify {
namespace {

double distance_to_integer(Complex w) {
  return std::abs(w - std::round(w.real()));
}

// Shared preconditions; returns the extended beta list (beta_{N+1} = 1 - a).
std::vector<Complex> checked_betas(const MBParameterSet& p) {
  r_sign(p.family);
  const DerivedQuantities d = derived_quantities(p);
  if (!(d.nu->real() > 0.0)) {
    throw SeriesError("R+- integrals converge only if Re(ν)>0; the residue series diverges otherwise");
  }
  const int N = p.N;
  for (int k = 0; k < N; ++k) {
    for (int j = k + 1; j < N; ++j) {
      if (distance_to_integer(p.betas[k] - p.betas[j]) < kDegenerateSpacing) {
        throw SeriesError("degenerate beta spacing: beta_" + std::to_string(k + 1) + " - beta_" +
                          std::to_string(j + 1) + " is within 0.05 of an integer");
      }
    }
  }
  std::vector<Complex> ext = p.betas;
  ext.push_back(1.0 - *p.a);
  for (int j = 0; j < N; ++j) {
    // (a + beta_j)_n never vanishes for n >= 0 unless a + beta_j is a non-positive integer.
    if (near_nonpositive_integer(*p.a + p.betas[j], 1e-9)) {
      throw SeriesError("Pochhammer denominator (a + beta_" + std::to_string(j + 1) + ")_n vanishes");
    }
  }
  return ext;
}

// F_j(n) = prod_k (alpha_k + beta_j)_n / (1 - beta_k + beta_j)_n for n = 0..n_max.
std::vector<std::vector<Complex>> coordinate_factors(const MBParameterSet& p,
                                                     const std::vector<Complex>& ext, int n_max) {
  std::vector<std::vector<Complex>> f(p.N, std::vector<Complex>(n_max + 1));
  for (int j = 0; j < p.N; ++j) {
    Complex v{1.0, 0.0};
    f[j][0] = v;
    for (int n = 0; n < n_max; ++n) {
      for (std::size_t k = 0; k < p.alphas.size(); ++k) {
        v *= (p.alphas[k] + p.betas[j] + static_cast<double>(n)) /
             (1.0 - ext[k] + p.betas[j] + static_cast<double>(n));
      }
      f[j][n + 1] = v;
    }
  }
  return f;
}

Complex vandermonde_ratio(const MBParameterSet& p, const int* n) {
  Complex r{1.0, 0.0};
  for (int k = 0; k < p.N; ++k) {
    for (int j = k + 1; j < p.N; ++j) {
      const Complex d = p.betas[k] - p.betas[j];
      r *= (d + static_cast<double>(n[k] - n[j])) / d;
    }
  }
  return r;
}

}  // namespace

SeriesResult milne_sum(const MBParameterSet& p, int n_max) {
  if (n_max < 0) throw SeriesError("n_max must be non-negative");
  const std::vector<Complex> ext = checked_betas(p);
  const auto f = coordinate_factors(p, ext, n_max);
  const int N = p.N;

  std::vector<Complex> all;
  std::vector<Complex> inner;
  std::vector<int> n(N, 0);
  while (true) {
    Complex t = vandermonde_ratio(p, n.data());
    int largest = 0;
    for (int j = 0; j < N; ++j) {
      t *= f[j][n[j]];
      largest = std::max(largest, n[j]);
    }
    all.push_back(t);
    if (largest <= n_max - 2) inner.push_back(t);
    int pos = N - 1;
    while (pos >= 0 && n[pos] == n_max) n[pos--] = 0;
    if (pos < 0) break;
    ++n[pos];
  }

  SeriesResult r;
  r.value = kernels::pairwise_sum(all);
  r.terms_used = all.size();
  if (n_max < 2) {
    r.tail_estimate = std::numeric_limits<double>::infinity();
  } else {
    const double nu = derived_quantities(p).nu->real();
    const double diff = std::abs(r.value - kernels::pairwise_sum(inner));
    r.tail_estimate = diff * std::max(1.0, n_max / nu);
  }
  return r;
}

SeriesResult residue_series(const MBParameterSet& p, int n_max) {
  SeriesResult r = milne_sum(p, n_max);
  const DerivedQuantities d = derived_quantities(p);
  Complex lp{std::lgamma(p.N + 1.0), 0.0};
  lp += -static_cast<double>(r_sign(p.family)) * kI * kPi * d.B;
  for (Complex be : p.betas) {
    for (Complex al : p.alphas) {
      if (near_nonpositive_integer(al + be)) {
        throw SeriesError("prefactor has a pole: Gamma(alpha_k + beta_j) at a non-positive integer");
      }
      lp += log_gamma(al + be);
    }
    lp -= log_gamma(*p.a + be);
  }
  const Complex prefactor = std::exp(lp);
  r.value *= prefactor;
  r.tail_estimate *= std::abs(prefactor);
  return r;
}

Complex milne_closed_form(const MBParameterSet& p) {
  const DerivedQuantities d = derived_quantities(p);
  r_sign(p.family);
  if (near_nonpositive_integer(*d.nu)) throw PoleError("Gamma(nu) has a pole");
  Complex s = log_gamma(*d.nu);
  for (Complex be : p.betas) {
    if (near_nonpositive_integer(*p.a + be)) throw PoleError("Gamma(a + beta_j) has a pole");
    s += log_gamma(*p.a + be);
  }
  for (Complex al : p.alphas) s += log_reciprocal_gamma(*p.a - al);
  if (std::isinf(s.real()) && s.real() < 0) return {0.0, 0.0};
  return std::exp(s);
}

Complex milne_term(const MBParameterSet& p, std::span<const int> n) {
  r_sign(p.family);
  check_arity(p);
  if (n.size() != static_cast<std::size_t>(p.N)) throw SeriesError("multi-index must have N entries");
  std::vector<Complex> ext = p.betas;
  ext.push_back(1.0 - *p.a);
  // Ratios of Pochhammer symbols accumulated in log space: the symbols
  // themselves overflow long before the terms become negligible.
  Complex log_t{0.0, 0.0};
  for (int j = 0; j < p.N; ++j) {
    if (n[j] < 0) throw SeriesError("multi-index entries must be non-negative");
    for (std::size_t k = 0; k < p.alphas.size(); ++k) {
      const Complex num = p.alphas[k] + p.betas[j];
      const Complex den = 1.0 - ext[k] + p.betas[j];
      for (int i = 0; i < n[j]; ++i) {
        const Complex r = (num + double(i)) / (den + double(i));
        if (r == Complex(0.0, 0.0)) return {0.0, 0.0};
        log_t += std::log(r);
      }
    }
  }
  return vandermonde_ratio(p, n.data()) * std::exp(log_t);
}

}  // namespace mbverify
