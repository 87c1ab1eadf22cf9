// AArch64 variant; NEON (Advanced SIMD) is part of the base ISA there.

#include <arm_neon.h>

#include "mbverify/kernels.hpp"

namespace mbverify::kernels::neon {
namespace {

inline double hsum(float64x2_t v) {
  return vgetq_lane_f64(v, 0) + vgetq_lane_f64(v, 1);
}

}  // namespace

Complex sum(ComplexView a) {
  float64x2_t re0 = vdupq_n_f64(0.0), re1 = vdupq_n_f64(0.0);
  float64x2_t im0 = vdupq_n_f64(0.0), im1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= a.size; k += 4) {
    re0 = vaddq_f64(re0, vld1q_f64(a.re + k));
    im0 = vaddq_f64(im0, vld1q_f64(a.im + k));
    re1 = vaddq_f64(re1, vld1q_f64(a.re + k + 2));
    im1 = vaddq_f64(im1, vld1q_f64(a.im + k + 2));
  }
  double re = hsum(vaddq_f64(re0, re1));
  double im = hsum(vaddq_f64(im0, im1));
  for (; k < a.size; ++k) {
    re += a.re[k];
    im += a.im[k];
  }
  return {re, im};
}

Complex dot(ComplexView a, ComplexView b) {
  float64x2_t acc_re = vdupq_n_f64(0.0);
  float64x2_t acc_im = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= a.size; k += 2) {
    const float64x2_t ar = vld1q_f64(a.re + k);
    const float64x2_t ai = vld1q_f64(a.im + k);
    const float64x2_t br = vld1q_f64(b.re + k);
    const float64x2_t bi = vld1q_f64(b.im + k);
    acc_re = vfmaq_f64(acc_re, ar, br);
    acc_re = vfmsq_f64(acc_re, ai, bi);
    acc_im = vfmaq_f64(acc_im, ar, bi);
    acc_im = vfmaq_f64(acc_im, ai, br);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; k < a.size; ++k) {
    re += a.re[k] * b.re[k] - a.im[k] * b.im[k];
    im += a.re[k] * b.im[k] + a.im[k] * b.re[k];
  }
  return {re, im};
}

Complex dot3(ComplexView a, ComplexView b, ComplexView c) {
  float64x2_t acc_re = vdupq_n_f64(0.0);
  float64x2_t acc_im = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= a.size; k += 2) {
    const float64x2_t ar = vld1q_f64(a.re + k);
    const float64x2_t ai = vld1q_f64(a.im + k);
    const float64x2_t br = vld1q_f64(b.re + k);
    const float64x2_t bi = vld1q_f64(b.im + k);
    const float64x2_t cr = vld1q_f64(c.re + k);
    const float64x2_t ci = vld1q_f64(c.im + k);
    const float64x2_t pr = vfmsq_f64(vmulq_f64(ar, br), ai, bi);
    const float64x2_t pi = vfmaq_f64(vmulq_f64(ar, bi), ai, br);
    acc_re = vfmaq_f64(acc_re, pr, cr);
    acc_re = vfmsq_f64(acc_re, pi, ci);
    acc_im = vfmaq_f64(acc_im, pr, ci);
    acc_im = vfmaq_f64(acc_im, pi, cr);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; k < a.size; ++k) {
    const double pr = a.re[k] * b.re[k] - a.im[k] * b.im[k];
    const double pi = a.re[k] * b.im[k] + a.im[k] * b.re[k];
    re += pr * c.re[k] - pi * c.im[k];
    im += pr * c.im[k] + pi * c.re[k];
  }
  return {re, im};
}

}  // namespace mbverify::kernels::neon
