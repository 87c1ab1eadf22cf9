#pragma once

// Inner-loop kernels of the tensor-product quadrature: complex dot products
// over structure-of-arrays data. A scalar reference implementation is always
// available; AVX2+FMA (x86-64) and NEON (AArch64) variants are selected at
// runtime. Every variant accumulates in a fixed order, so a given variant is
// bit-reproducible regardless of threading.
//
// Set MBVERIFY_KERNEL=scalar in the environment to force the reference path.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mbverify/core.hpp"

namespace mbverify::kernels {

// Read-only view of n complex numbers stored as separate re/im arrays.
struct ComplexView {
  const double* re = nullptr;
  const double* im = nullptr;
  std::size_t size = 0;
};

// Owning structure-of-arrays complex vector.
class ComplexArray {
 public:
  ComplexArray() = default;
  explicit ComplexArray(std::size_t n) : re_(n, 0.0), im_(n, 0.0) {}

  std::size_t size() const { return re_.size(); }
  void set(std::size_t i, Complex v) {
    re_[i] = v.real();
    im_[i] = v.imag();
  }
  Complex get(std::size_t i) const { return {re_[i], im_[i]}; }
  ComplexView view() const { return {re_.data(), im_.data(), re_.size()}; }
  ComplexView view(std::size_t offset, std::size_t n) const {
    return {re_.data() + offset, im_.data() + offset, n};
  }

 private:
  std::vector<double> re_;
  std::vector<double> im_;
};

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);

// The variant used by sum/dot/dot3 below.
Isa active_isa();

// Overrides the runtime choice (tests, benchmarking). Throws Error when the
// requested variant is not available on this machine.
void set_active_isa(Isa isa);

// sum_k a_k
Complex sum(ComplexView a);
// sum_k a_k b_k
Complex dot(ComplexView a, ComplexView b);
// sum_k a_k b_k c_k
Complex dot3(ComplexView a, ComplexView b, ComplexView c);

namespace scalar {
Complex sum(ComplexView a);
Complex dot(ComplexView a, ComplexView b);
Complex dot3(ComplexView a, ComplexView b, ComplexView c);
}  // namespace scalar

namespace avx2 {
Complex sum(ComplexView a);
Complex dot(ComplexView a, ComplexView b);
Complex dot3(ComplexView a, ComplexView b, ComplexView c);
}  // namespace avx2

namespace neon {
Complex sum(ComplexView a);
Complex dot(ComplexView a, ComplexView b);
Complex dot3(ComplexView a, ComplexView b, ComplexView c);
}  // namespace neon

// Pairwise (cascade) summation of a complex sequence; the reduction used for
// every deterministic accumulation outside the inner kernels.
Complex pairwise_sum(std::span<const Complex> values);

}  // namespace mbverify::kernels
