#include "mbverify/kernels.hpp"

namespace mbverify::kernels {
namespace {

constexpr std::size_t kBlock = 16;

// Cascade over [begin, end): sequential below kBlock, split in half above.
template <typename Term>
Complex cascade(std::size_t begin, std::size_t end, const Term& term) {
  if (end - begin <= kBlock) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      const Complex t = term(k);
      re += t.real();
      im += t.imag();
    }
    return {re, im};
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return cascade(begin, mid, term) + cascade(mid, end, term);
}

}  // namespace

Complex pairwise_sum(std::span<const Complex> values) {
  return cascade(0, values.size(), [&](std::size_t k) { return values[k]; });
}

namespace scalar {

Complex sum(ComplexView a) {
  return cascade(0, a.size, [&](std::size_t k) { return Complex(a.re[k], a.im[k]); });
}

Complex dot(ComplexView a, ComplexView b) {
  return cascade(0, a.size, [&](std::size_t k) {
    return Complex(a.re[k] * b.re[k] - a.im[k] * b.im[k],
                   a.re[k] * b.im[k] + a.im[k] * b.re[k]);
  });
}

Complex dot3(ComplexView a, ComplexView b, ComplexView c) {
  return cascade(0, a.size, [&](std::size_t k) {
    const double pr = a.re[k] * b.re[k] - a.im[k] * b.im[k];
    const double pi = a.re[k] * b.im[k] + a.im[k] * b.re[k];
    return Complex(pr * c.re[k] - pi * c.im[k], pr * c.im[k] + pi * c.re[k]);
  });
}

}  // namespace scalar
}  // namespace mbverify::kernels
