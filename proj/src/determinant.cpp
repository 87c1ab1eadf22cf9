#include "mbverify/determinant.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

#include "mbverify/parallel.hpp"
#include "mbverify/special_functions.hpp"

namespace mbverify {
namespace {

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw ParameterError("kernel sign must be +1 or -1");
}

void check_index(const MBParameterSet& p, int m, int k) {
  if (m < 1 || m > p.N || k < 1 || k > p.N) {
    throw ParameterError("matrix indices must satisfy 1 <= m, k <= N");
  }
}

Complex minor_det(const std::vector<Complex>& a, std::size_t n, std::size_t row, std::size_t col) {
  std::vector<Complex> m;
  m.reserve((n - 1) * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != col) m.push_back(a[i * n + j]);
    }
  }
  return determinant(std::move(m), n - 1);
}

}  // namespace

Complex log_q_kernel(const MBParameterSet& p, int sign, Complex z) {
  check_sign(sign);
  r_sign(p.family);
  check_arity(p);
  Complex s = static_cast<double>(sign) * kI * kPi * z;
  for (Complex al : p.alphas) s += log_gamma(al - z);
  for (Complex be : p.betas) s += log_gamma(z + be);
  return s + log_reciprocal_gamma(*p.a - z);
}

Complex q_kernel(const MBParameterSet& p, int sign, Complex z) { return std::exp(log_q_kernel(p, sign, z)); }

Complex q_entry_integrand(const MBParameterSet& p, int sign, int m, int k, Complex z) {
  check_index(p, m, k);
  Complex log_part = log_q_kernel(p, sign, z);
  if (p.N > 1) log_part += static_cast<double>(p.N - 1) * log_cos_pi(z);
  Complex v = std::exp(log_part);
  if (m > 1) {
    const Complex t = tan_pi(z);
    for (int i = 1; i < m; ++i) v *= t;
  }
  for (int i = 1; i < k; ++i) v *= z;
  return v;
}

TailPair q_entry_tails(const MBParameterSet& p, int sign, int k) {
  check_sign(sign);
  const DerivedQuantities d = derived_quantities(p);
  const Complex exponent = -*d.nu - static_cast<double>(p.N) + static_cast<double>(k - 1);
  TailPair t;
  if (sign > 0) {
    t.down = TailModel::power_law(exponent);
  } else {
    t.up = TailModel::power_law(exponent);
  }
  return t;
}

QuadResult q_entry(const MBParameterSet& p, int sign, int m, int k, const ContourSpec& contour) {
  check_index(p, m, k);
  return integrate_line([&](Complex z) { return q_entry_integrand(p, sign, m, k, z); }, contour,
                        q_entry_tails(p, sign, k));
}

QMatrix q_matrix(const MBParameterSet& p, int sign, const ContourSpec& contour) {
  check_sign(sign);
  const ValidationReport v = validate(p, contour.shift);
  if (!v.ok) throw ParameterError(v.messages.empty() ? "invalid parameters" : v.messages.front());
  QMatrix q;
  q.sign = sign;
  q.N = p.N;
  const auto n = static_cast<std::size_t>(p.N);
  q.entries.assign(n * n, Complex{});
  q.entry_errors.assign(n * n, 0.0);
  std::vector<std::size_t> evals(n * n, 0);
  parallel_for(n * n, [&](std::size_t idx) {
    const int m = static_cast<int>(idx / n) + 1;
    const int k = static_cast<int>(idx % n) + 1;
    const QuadResult r = q_entry(p, sign, m, k, contour);
    q.entries[idx] = r.value;
    q.entry_errors[idx] = r.error_estimate;
    evals[idx] = r.evaluations;
  });
  for (std::size_t e : evals) q.evaluations += e;
  return q;
}

double determinant_prefactor(int N) {
  const int pairs = N * (N - 1) / 2;
  return std::pow(-1.0 / kPi, pairs) * std::tgamma(N + 1.0);
}

Complex determinant(std::vector<Complex> a, std::size_t n) {
  if (a.size() != n * n) throw Error("determinant: matrix size mismatch");
  if (n == 0) return {1.0, 0.0};
  Complex det{1.0, 0.0};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (a[pivot * n + col] == Complex{}) return {0.0, 0.0};
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      det = -det;
    }
    const Complex d = a[col * n + col];
    det *= d;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a[r * n + col] / d;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
    }
  }
  return det;
}

Complex vandermonde_det(std::span<const Complex> x) {
  const std::size_t n = x.size();
  std::vector<Complex> m(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex power{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      m[i * n + j] = power;
      power *= x[j];
    }
  }
  return determinant(std::move(m), n);
}

Complex tangent_hat_det(std::span<const Complex> t, int sign) {
  check_sign(sign);
  std::vector<Complex> cols(t.begin(), t.end());
  cols.emplace_back(0.0, -static_cast<double>(sign));
  return vandermonde_det(cols);
}

Complex asymptotic_leading(const MBParameterSet& p, int sign, int m, int k, double u) {
  check_sign(sign);
  check_index(p, m, k);
  if (!(u > 0.0)) throw ParameterError("asymptotic_leading needs u > 0");
  const DerivedQuantities d = derived_quantities(p);
  const Complex power = d.A + d.B - *p.a - static_cast<double>(p.N) + static_cast<double>(k - 1);
  const Complex phase = d.B - d.A + *p.a + static_cast<double>(m + k - 2);
  const Complex log_u = std::log(u) * power;
  const Complex log_phase = -static_cast<double>(sign) * kI * (kPi / 2.0) * phase;
  return 2.0 * std::pow(kPi, p.N) * std::exp(log_u + log_phase);
}

DeterminantResult r_via_determinant(const MBParameterSet& p, int sign, const ContourSpec& contour) {
  DeterminantResult r;
  r.matrix = q_matrix(p, sign, contour);
  const auto n = static_cast<std::size_t>(p.N);
  const double pref = determinant_prefactor(p.N);
  r.value = pref * determinant(r.matrix.entries, n);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double cof = n == 1 ? 1.0 : std::abs(minor_det(r.matrix.entries, n, i, j));
      err += cof * r.matrix.entry_errors[i * n + j];
    }
  }
  r.error_estimate = std::abs(pref) * err;
  return r;
}

MBParameterSet at_nu(const MBParameterSet& p, Complex eps) {
  r_sign(p.family);
  const DerivedQuantities d = derived_quantities(p);
  MBParameterSet q = p;
  q.a = d.A + d.B + eps;
  return q;
}

ResidueFit extract_residue(const MBParameterSet& p, const std::vector<double>& epsilons,
                           ResidueRoute route, const ContourSpec& contour) {
  const int sign = r_sign(p.family);
  if (epsilons.size() < 3) throw FitError("residue fit needs at least three epsilon values");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw FitError("epsilon values must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) throw FitError("epsilon values must be strictly decreasing");
  }

  ResidueFit fit;
  fit.epsilons = epsilons;
  const std::size_t n = epsilons.size();
  fit.values.resize(n);
  fit.value_errors.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const MBParameterSet q = at_nu(p, epsilons[i]);
    if (route == ResidueRoute::determinant) {
      const DeterminantResult d = r_via_determinant(q, sign, contour);
      fit.values[i] = d.value;
      fit.value_errors[i] = d.error_estimate;
    } else {
      const QuadResult r = integrate_factorized(factorized_integrand(q), contour);
      fit.values[i] = r.value;
      fit.value_errors[i] = r.error_estimate;
    }
  }

  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    design(i, 0) = 1.0 / epsilons[i];
    design(i, 1) = 1.0;
    design(i, 2) = epsilons[i];
    re[i] = fit.values[i].real();
    im[i] = fit.values[i].imag();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  fit.condition_number = s[0] / s[s.size() - 1];
  if (!(fit.condition_number < 1e12)) {
    throw FitError("residue fit is ill-conditioned (condition number " + std::to_string(fit.condition_number) + ")");
  }
  const Eigen::VectorXd cr = svd.solve(re);
  const Eigen::VectorXd ci = svd.solve(im);
  fit.residue = {cr[0], ci[0]};
  fit.c0 = {cr[1], ci[1]};
  fit.c1 = {cr[2], ci[2]};

  // Row 0 of the pseudo-inverse maps value errors onto c_-1.
  const Eigen::MatrixXd pinv =
      svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
  for (std::size_t i = 0; i < n; ++i) fit.residue_error += std::abs(pinv(0, i)) * fit.value_errors[i];
  return fit;
}

ResiduePredictions residue_predictions(const MBParameterSet& p) {
  const int sign = r_sign(p.family);
  const DerivedQuantities d = derived_quantities(p);
  const Complex phase = std::exp(-static_cast<double>(sign) * kI * kPi * d.B);

  ResiduePredictions r;
  const Complex reduced = p.N == 1 ? Complex{1.0, 0.0} : closed_form_rhs(reduction_parameters(p));
  r.via_reduced = static_cast<double>(p.N) * phase * reduced;

  Complex s{std::lgamma(p.N + 1.0), 0.0};
  for (Complex al : p.alphas) {
    for (Complex be : p.betas) {
      if (near_nonpositive_integer(al + be)) throw PoleError("Gamma(alpha_j + beta_k) has a pole");
      s += log_gamma(al + be);
    }
    s += log_reciprocal_gamma(d.A + d.B - al);
  }
  r.via_closed_form = phase * std::exp(s);
  return r;
}

}  // namespace mbverify
