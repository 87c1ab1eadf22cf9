#include "mbverify/mb_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "mbverify/json_io.hpp"
#include "mbverify/special_functions.hpp"

namespace mbverify {
namespace {

struct FamilyName {
  MBFamily family;
  std::string_view name;
};

constexpr std::array<FamilyName, 6> kNames = {{
    {MBFamily::GustafsonFirst, "GustafsonFirst"},
    {MBFamily::GustafsonSecond, "GustafsonSecond"},
    {MBFamily::RPlus, "RPlus"},
    {MBFamily::RMinus, "RMinus"},
    {MBFamily::TReduced, "TReduced"},
    {MBFamily::ThreeStars, "ThreeStars"},
}};

Complex sum_of(const std::vector<Complex>& v) {
  Complex s{0.0, 0.0};
  for (Complex x : v) s += x;
  return s;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Accumulates log Gamma(arg) and reports which factor sits on a pole.
void add_log_gamma(Complex& acc, Complex arg, const std::string& label) {
  if (near_nonpositive_integer(arg)) {
    throw PoleError("closed form has a pole: Gamma(" + label + ") at " + describe(arg));
  }
  acc += log_gamma(arg);
}

std::string idx(const char* name, std::size_t i) { return std::string(name) + "_" + std::to_string(i + 1); }

// The gamma-product part shared by all u(N) families: numerator factors
// Gamma(alpha_k - z) Gamma(beta_m + z) and 1/Gamma(d - z) when present.
Complex log_point_un(const std::vector<Complex>& alphas, const std::vector<Complex>& betas,
                     const std::optional<Complex>& denom, Complex z) {
  Complex s{0.0, 0.0};
  for (Complex al : alphas) s += log_gamma(al - z);
  for (Complex be : betas) s += log_gamma(be + z);
  if (denom) s += log_reciprocal_gamma(*denom - z);
  return s;
}

}  // namespace

std::string_view family_name(MBFamily family) {
  for (const auto& entry : kNames) {
    if (entry.family == family) return entry.name;
  }
  return "unknown";
}

MBFamily parse_family(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.family;
  }
  throw ParameterError("unknown family '" + std::string(name) +
                       "' (expected GustafsonFirst, GustafsonSecond, RPlus, RMinus, TReduced or ThreeStars)");
}

bool is_r_family(MBFamily family) { return family == MBFamily::RPlus || family == MBFamily::RMinus; }

int r_sign(MBFamily family) {
  if (family == MBFamily::RPlus) return 1;
  if (family == MBFamily::RMinus) return -1;
  throw ParameterError("operation requires an RPlus or RMinus parameter set");
}

Arity arity(MBFamily family, int N) {
  const auto n = static_cast<std::size_t>(N);
  switch (family) {
    case MBFamily::GustafsonFirst: return {n + 1, n + 1, false};
    case MBFamily::GustafsonSecond: return {n + 2, n + 1, false};
    case MBFamily::RPlus:
    case MBFamily::RMinus: return {n + 1, n, true};
    case MBFamily::TReduced: return {n + 2, n + 1, false};
    case MBFamily::ThreeStars: return {2 * n + 1, 1, false};
  }
  return {0, 0, false};
}

void check_arity(const MBParameterSet& p) {
  if (p.N < 1) throw ParameterError("N must be a positive integer");
  const Arity want = arity(p.family, p.N);
  std::ostringstream os;
  const std::string fam(family_name(p.family));
  if (p.alphas.size() != want.alphas) {
    os << fam << " with N=" << p.N << " needs " << want.alphas << " alphas, got " << p.alphas.size();
  } else if (p.betas.size() != want.betas) {
    os << fam << " with N=" << p.N << " needs " << want.betas << " betas, got " << p.betas.size();
  } else if (want.has_a && !p.a) {
    os << fam << " needs the parameter a";
  } else if (!want.has_a && p.a) {
    os << fam << " takes no parameter a";
  } else {
    return;
  }
  throw ParameterError(os.str());
}

DerivedQuantities derived_quantities(const MBParameterSet& p) {
  check_arity(p);
  DerivedQuantities d{sum_of(p.alphas), sum_of(p.betas), std::nullopt, std::nullopt};
  if (p.family == MBFamily::GustafsonSecond || p.family == MBFamily::TReduced) d.gamma_param = d.A + d.B;
  if (is_r_family(p.family)) d.nu = *p.a - d.A - d.B;
  return d;
}

ValidationReport validate(const MBParameterSet& p, double c) {
  check_arity(p);
  ValidationReport r;
  r.contour_feasible = true;
  r.converges = true;

  auto finite = [](Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
  bool all_finite = std::all_of(p.alphas.begin(), p.alphas.end(), finite) &&
                    std::all_of(p.betas.begin(), p.betas.end(), finite) && (!p.a || finite(*p.a));
  if (!all_finite) {
    r.contour_feasible = false;
    r.messages.push_back("parameters must be finite");
  }

  double min_alpha = INFINITY;
  for (Complex al : p.alphas) min_alpha = std::min(min_alpha, al.real());
  if (p.family == MBFamily::ThreeStars) {
    if (!(min_alpha > std::abs(c))) {
      r.contour_feasible = false;
      r.messages.push_back("contour Re z = c must satisfy |c| < min Re(alpha) to separate the poles of Gamma(alpha_k +- z)");
    }
  } else {
    double max_neg_beta = -INFINITY;
    for (Complex be : p.betas) max_neg_beta = std::max(max_neg_beta, -be.real());
    if (!(min_alpha > c)) {
      r.contour_feasible = false;
      r.messages.push_back("contour Re z = c must lie left of the poles alpha_n + k (min Re(alpha) > c)");
    }
    if (!(c > max_neg_beta)) {
      r.contour_feasible = false;
      r.messages.push_back("contour Re z = c must lie right of the poles -beta_m - k (c > max(-Re beta))");
    }
  }

  const DerivedQuantities d = derived_quantities(p);
  if (d.nu && !(d.nu->real() > 0.0)) {
    r.converges = false;
    r.messages.push_back("R+- integrals converge only if Re(ν)>0 (nu = " + describe(*d.nu) + ")");
  }
  if (p.family == MBFamily::ThreeStars) {
    const Complex gap = p.betas[0] - d.A;
    if (!(gap.real() > 0.0)) {
      r.converges = false;
      r.messages.push_back("the three-stars integral converges only if Re(β-A)>0 (beta - A = " +
                           describe(gap) + ")");
    }
  }
  r.ok = r.contour_feasible && r.converges;
  return r;
}

Measure family_measure(MBFamily family) {
  return family == MBFamily::ThreeStars ? Measure::four_pi_i : Measure::two_pi_i;
}

TailPair family_tails(const MBParameterSet& p) {
  const DerivedQuantities d = derived_quantities(p);
  TailPair t;
  switch (p.family) {
    case MBFamily::RPlus:
      t.down = TailModel::power_law(-1.0 - *d.nu);
      break;
    case MBFamily::RMinus:
      t.up = TailModel::power_law(-1.0 - *d.nu);
      break;
    case MBFamily::ThreeStars: {
      const Complex q = 2.0 * (d.A - p.betas[0]) - 1.0;
      t.up = TailModel::power_law(q);
      t.down = TailModel::power_law(q);
      break;
    }
    default:
      break;
  }
  return t;
}

FactorizedIntegrand factorized_integrand(const MBParameterSet& p) {
  const DerivedQuantities d = derived_quantities(p);
  FactorizedIntegrand f;
  f.dim = p.N;
  f.tails = family_tails(p);
  f.measure = family_measure(p.family);
  const std::vector<Complex> alphas = p.alphas;
  const std::vector<Complex> betas = p.betas;

  switch (p.family) {
    case MBFamily::GustafsonFirst:
      f.log_point = [=](Complex z) { return log_point_un(alphas, betas, std::nullopt, z); };
      break;
    case MBFamily::GustafsonSecond:
    case MBFamily::TReduced: {
      const Complex g = *d.gamma_param;
      f.log_point = [=](Complex z) { return log_point_un(alphas, betas, g, z); };
      break;
    }
    case MBFamily::RPlus:
    case MBFamily::RMinus: {
      const Complex a = *p.a;
      const double s = r_sign(p.family);
      f.log_point = [=](Complex z) { return log_point_un(alphas, betas, a, z) + s * kI * kPi * z; };
      break;
    }
    case MBFamily::ThreeStars: {
      const Complex beta = betas[0];
      f.log_point = [=](Complex z) {
        Complex s{0.0, 0.0};
        for (Complex al : alphas) s += log_gamma(al - z) + log_gamma(al + z);
        return s + log_reciprocal_gamma(beta - z) + log_reciprocal_gamma(beta + z) +
               log_inv_gamma_pair(2.0 * z);
      };
      break;
    }
  }

  if (p.family == MBFamily::ThreeStars) {
    f.log_pair = [](Complex z, Complex w) { return log_inv_gamma_pair(z + w) + log_inv_gamma_pair(z - w); };
    f.pair_growth = 2.0 * kPi;
  } else {
    f.log_pair = [](Complex z, Complex w) { return log_inv_gamma_pair(z - w); };
    f.pair_growth = kPi;
  }
  return f;
}

Complex log_integrand(const MBParameterSet& p, std::span<const Complex> z) {
  if (z.size() != static_cast<std::size_t>(p.N)) {
    throw ParameterError("integrand needs exactly N integration variables");
  }
  const FactorizedIntegrand f = factorized_integrand(p);
  Complex s{0.0, 0.0};
  for (std::size_t k = 0; k < z.size(); ++k) {
    s += f.log_point(z[k]);
    for (std::size_t j = k + 1; j < z.size(); ++j) s += f.log_pair(z[k], z[j]);
  }
  return s;
}

Complex integrand(const MBParameterSet& p, std::span<const Complex> z) {
  return std::exp(log_integrand(p, z));
}

Complex closed_form_rhs(const MBParameterSet& p) {
  const DerivedQuantities d = derived_quantities(p);
  Complex s{log_factorial(p.N), 0.0};
  const auto& al = p.alphas;
  const auto& be = p.betas;

  auto numerator_cross = [&] {
    for (std::size_t k = 0; k < al.size(); ++k) {
      for (std::size_t j = 0; j < be.size(); ++j) {
        add_log_gamma(s, al[k] + be[j], idx("alpha", k) + "+" + idx("beta", j));
      }
    }
  };

  switch (p.family) {
    case MBFamily::GustafsonFirst:
      numerator_cross();
      s += log_reciprocal_gamma(d.A + d.B);
      break;
    case MBFamily::GustafsonSecond:
    case MBFamily::TReduced:
      numerator_cross();
      for (Complex x : al) s += log_reciprocal_gamma(*d.gamma_param - x);
      break;
    case MBFamily::RPlus:
    case MBFamily::RMinus:
      numerator_cross();
      add_log_gamma(s, *d.nu, "nu");
      for (Complex x : al) s += log_reciprocal_gamma(*p.a - x);
      s += -static_cast<double>(r_sign(p.family)) * kI * kPi * d.B;
      break;
    case MBFamily::ThreeStars: {
      const Complex beta = be[0];
      add_log_gamma(s, beta - d.A, "beta-A");
      for (std::size_t k = 0; k < al.size(); ++k) {
        for (std::size_t j = k + 1; j < al.size(); ++j) {
          add_log_gamma(s, al[k] + al[j], idx("alpha", k) + "+" + idx("alpha", j));
        }
      }
      for (Complex x : al) s += log_reciprocal_gamma(beta - x);
      break;
    }
  }
  if (std::isinf(s.real()) && s.real() < 0) return {0.0, 0.0};
  return std::exp(s);
}

MBParameterSet reduction_parameters(const MBParameterSet& p) {
  r_sign(p.family);
  check_arity(p);
  if (p.N < 2) {
    throw ParameterError("reduction of an N=1 integral is the empty integral (value 1); no TReduced instance exists");
  }
  MBParameterSet t;
  t.family = MBFamily::TReduced;
  t.N = p.N - 1;
  t.alphas = p.alphas;
  t.betas = p.betas;
  return t;
}

std::string params_to_json(const MBParameterSet& p) {
  json::Object o;
  o.add("family", family_name(p.family));
  o.add("N", p.N);
  o.add("alphas", p.alphas);
  o.add("betas", p.betas);
  o.raw("a", p.a ? json::number(*p.a) : "null");
  return o.str();
}

MBParameterSet params_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("invalid parameter JSON: ") + e.what());
  }
  auto complex_of = [](const nlohmann::json& v, const std::string& where) -> Complex {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ParameterError(where + " must be [re, im] or a number");
  };
  auto list_of = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw ParameterError(std::string("parameter JSON needs an array field \"") + key + "\"");
    }
    std::vector<Complex> out;
    for (std::size_t i = 0; i < doc[key].size(); ++i) {
      out.push_back(complex_of(doc[key][i], std::string(key) + "[" + std::to_string(i) + "]"));
    }
    return out;
  };

  if (!doc.is_object()) throw ParameterError("parameter JSON must be an object");
  if (!doc.contains("family") || !doc["family"].is_string()) {
    throw ParameterError("parameter JSON needs a string field \"family\"");
  }
  if (!doc.contains("N") || !doc["N"].is_number_integer()) {
    throw ParameterError("parameter JSON needs an integer field \"N\"");
  }
  MBParameterSet p;
  p.family = parse_family(doc["family"].get<std::string>());
  p.N = doc["N"].get<int>();
  p.alphas = list_of("alphas");
  p.betas = list_of("betas");
  if (doc.contains("a") && !doc["a"].is_null()) p.a = complex_of(doc["a"], "a");
  check_arity(p);
  return p;
}

}  // namespace mbverify
