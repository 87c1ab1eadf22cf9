#pragma once

// Determinant representation of R+-: R = (-1/pi)^(N(N-1)/2) N! det Q with
//
//   Q_mk = (1/2 pi i) int (cos pi z)^(N-1) (tan pi z)^(m-1) z^(k-1) Q(z) dz,
//   Q(z) = e^(+-i pi z) prod_k Gamma(alpha_k - z) prod_j Gamma(z + beta_j) / Gamma(a - z),
//
// plus the power-law asymptotics of the entry integrands and numeric
// extraction of the residue of R+- at nu = 0.
//
// `sign` is +1 for the RPlus kernel and -1 for RMinus; it need not match
// the family tag of the parameter set, which only supplies alphas, betas, a.

#include <span>
#include <vector>

#include "mbverify/core.hpp"
#include "mbverify/mb_model.hpp"
#include "mbverify/quadrature.hpp"

namespace mbverify {

Complex log_q_kernel(const MBParameterSet& p, int sign, Complex z);
Complex q_kernel(const MBParameterSet& p, int sign, Complex z);

// Integrand of entry (m, k), both 1-based.
Complex q_entry_integrand(const MBParameterSet& p, int sign, int m, int k, Complex z);

// Exponential decay towards Im z -> +-inf, power |t|^(A+B-a-N+k-1) the other way.
TailPair q_entry_tails(const MBParameterSet& p, int sign, int k);

QuadResult q_entry(const MBParameterSet& p, int sign, int m, int k, const ContourSpec& contour);

struct QMatrix {
  int sign = 1;
  int N = 0;
  std::vector<Complex> entries;     // row-major, entries[(m-1)*N + (k-1)]
  std::vector<double> entry_errors;
  std::size_t evaluations = 0;

  Complex at(int m, int k) const { return entries[(m - 1) * N + (k - 1)]; }
  double error_at(int m, int k) const { return entry_errors[(m - 1) * N + (k - 1)]; }
};

// Entries are independent line integrals, evaluated in parallel.
QMatrix q_matrix(const MBParameterSet& p, int sign, const ContourSpec& contour);

struct DeterminantResult {
  Complex value{0.0, 0.0};
  // First-order bound sum |cofactor_mk| * entry_error_mk, times the prefactor.
  double error_estimate = 0.0;
  QMatrix matrix;
};

DeterminantResult r_via_determinant(const MBParameterSet& p, int sign, const ContourSpec& contour);

// (-1/pi)^(N(N-1)/2) N!
double determinant_prefactor(int N);

/// Determinant of an n x n row-major matrix by partial-pivot elimination.
Complex determinant(std::vector<Complex> a, std::size_t n);

/// det of the Vandermonde matrix with rows x^0, x^1, ..., x^(n-1).
Complex vandermonde_det(std::span<const Complex> x);

/// det of the tangent matrix whose first n-1 columns are powers of t_k and
/// whose last column holds powers of (-+ i) for sign = +-1.
Complex tangent_hat_det(std::span<const Complex> t, int sign);

/// 2 pi^N u^(A+B-a-N+k-1) (-+i)^(B-A+a+m+k-2), principal branch for the
/// complex power: (-+i)^x = exp(-+ i pi x / 2).
Complex asymptotic_leading(const MBParameterSet& p, int sign, int m, int k, double u);

enum class ResidueRoute { quadrature, determinant };

struct ResidueFit {
  Complex residue{0.0, 0.0};  // c_-1
  Complex c0{0.0, 0.0};
  Complex c1{0.0, 0.0};
  double residue_error = 0.0;  // propagated from the per-epsilon errors
  double condition_number = 0.0;
  std::vector<double> epsilons;
  std::vector<Complex> values;
  std::vector<double> value_errors;
};

inline const std::vector<double> kDefaultEpsilons = {0.2, 0.1, 0.05};

// Copy of p with a = A + B + eps.
MBParameterSet at_nu(const MBParameterSet& p, Complex eps);

/// Evaluates R+- at a = A + B + eps for each eps and fits c_-1/eps + c0 + c1 eps
/// by least squares. Throws FitError for fewer than three epsilons,
/// non-positive or non-decreasing lists, or a condition number above 1e12.
ResidueFit extract_residue(const MBParameterSet& p, const std::vector<double>& epsilons,
                           ResidueRoute route, const ContourSpec& contour);

struct ResiduePredictions {
  Complex via_reduced;      // N e^(-+i pi B) times the reduced integral (1 when N = 1)
  Complex via_closed_form;  // residue at nu = 0 of the closed form of R+-
};
ResiduePredictions residue_predictions(const MBParameterSet& p);

}  // namespace mbverify
