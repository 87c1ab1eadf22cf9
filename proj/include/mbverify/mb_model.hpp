#pragma once

// The six integral families, their parameter sets, convergence and
// pole-separation checks, integrands and closed-form right-hand sides.
//
// Integrands exclude the measure: every family integrates against
// prod dz_k/(2 pi i) except ThreeStars, which uses prod dz_k/(4 pi i).

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mbverify/core.hpp"
#include "mbverify/quadrature.hpp"

namespace mbverify {

enum class MBFamily { GustafsonFirst, GustafsonSecond, RPlus, RMinus, TReduced, ThreeStars };

inline constexpr std::array<MBFamily, 6> kAllFamilies = {
    MBFamily::GustafsonFirst, MBFamily::GustafsonSecond, MBFamily::RPlus,
    MBFamily::RMinus,         MBFamily::TReduced,        MBFamily::ThreeStars};

std::string_view family_name(MBFamily family);
// Throws ParameterError on an unknown name. Names are the enumerator spellings.
MBFamily parse_family(std::string_view name);

bool is_r_family(MBFamily family);
// +1 for RPlus, -1 for RMinus. Throws ParameterError for other families.
int r_sign(MBFamily family);

struct MBParameterSet {
  MBFamily family = MBFamily::GustafsonFirst;
  int N = 1;  // integration dimension
  std::vector<Complex> alphas;
  std::vector<Complex> betas;
  std::optional<Complex> a;  // RPlus / RMinus only
};

// Expected list sizes for a family at dimension N.
struct Arity {
  std::size_t alphas;
  std::size_t betas;
  bool has_a;
};
Arity arity(MBFamily family, int N);

// Throws ParameterError when N < 1 or the lists do not match arity().
void check_arity(const MBParameterSet& p);

struct DerivedQuantities {
  Complex A;  // sum of alphas
  Complex B;  // sum of betas
  std::optional<Complex> gamma_param;  // A + B for GustafsonSecond / TReduced
  std::optional<Complex> nu;           // a - A - B for RPlus / RMinus
};
DerivedQuantities derived_quantities(const MBParameterSet& p);

struct ValidationReport {
  bool ok = false;
  bool contour_feasible = false;
  bool converges = false;
  std::vector<std::string> messages;
};

// Pole separation by the straight contour Re z = c and convergence at large
// |Im z|. RPlus/RMinus need Re(nu) > 0. ThreeStars needs Re(beta - A) > 0:
// its integrand decays only like |Im z|^(2 Re(A - beta) - 1).
ValidationReport validate(const MBParameterSet& p, double c = 0.0);

/// log of the integrand (no measure); the imaginary part is not reduced to
/// a principal value. Requires z.size() == p.N.
Complex log_integrand(const MBParameterSet& p, std::span<const Complex> z);
Complex integrand(const MBParameterSet& p, std::span<const Complex> z);

Measure family_measure(MBFamily family);

// Decay model beyond the truncation height in each direction, as used by
// the quadrature: exponential directions are truncated, power-law ones get
// a Gauss-Jacobi tail with the exponent of |integrand| in one variable.
TailPair family_tails(const MBParameterSet& p);

// The integrand split into per-variable and pairwise log factors.
FactorizedIntegrand factorized_integrand(const MBParameterSet& p);

/// Closed-form value of the integral. Throws PoleError naming the gamma
/// factor when a numerator argument hits a pole.
Complex closed_form_rhs(const MBParameterSet& p);

/// TReduced instance of dimension N-1 carrying the same alphas and betas.
/// Throws ParameterError for N = 1 (the reduced integral is the empty
/// integral, value 1) and for families other than RPlus/RMinus.
MBParameterSet reduction_parameters(const MBParameterSet& p);

// JSON document {"family", "N", "alphas": [[re,im],...], "betas", "a": [re,im] | null}.
// Parsing also accepts plain numbers for real entries. Throws ParameterError.
std::string params_to_json(const MBParameterSet& p);
MBParameterSet params_from_json(std::string_view text);

}  // namespace mbverify
