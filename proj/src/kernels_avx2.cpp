// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "mbverify/kernels.hpp"

namespace mbverify::kernels::avx2 {
namespace {

// Lanes are combined in index order, independent of the data.
inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

Complex sum(ComplexView a) {
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= a.size; k += 8) {
    re0 = _mm256_add_pd(re0, _mm256_loadu_pd(a.re + k));
    im0 = _mm256_add_pd(im0, _mm256_loadu_pd(a.im + k));
    re1 = _mm256_add_pd(re1, _mm256_loadu_pd(a.re + k + 4));
    im1 = _mm256_add_pd(im1, _mm256_loadu_pd(a.im + k + 4));
  }
  double re = hsum(_mm256_add_pd(re0, re1));
  double im = hsum(_mm256_add_pd(im0, im1));
  for (; k < a.size; ++k) {
    re += a.re[k];
    im += a.im[k];
  }
  return {re, im};
}

Complex dot(ComplexView a, ComplexView b) {
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= a.size; k += 8) {
    for (std::size_t half = 0; half < 8; half += 4) {
      const __m256d ar = _mm256_loadu_pd(a.re + k + half);
      const __m256d ai = _mm256_loadu_pd(a.im + k + half);
      const __m256d br = _mm256_loadu_pd(b.re + k + half);
      const __m256d bi = _mm256_loadu_pd(b.im + k + half);
      __m256d& acc_re = half == 0 ? re0 : re1;
      __m256d& acc_im = half == 0 ? im0 : im1;
      acc_re = _mm256_fmadd_pd(ar, br, acc_re);
      acc_re = _mm256_fnmadd_pd(ai, bi, acc_re);
      acc_im = _mm256_fmadd_pd(ar, bi, acc_im);
      acc_im = _mm256_fmadd_pd(ai, br, acc_im);
    }
  }
  double re = hsum(_mm256_add_pd(re0, re1));
  double im = hsum(_mm256_add_pd(im0, im1));
  for (; k < a.size; ++k) {
    re += a.re[k] * b.re[k] - a.im[k] * b.im[k];
    im += a.re[k] * b.im[k] + a.im[k] * b.re[k];
  }
  return {re, im};
}

Complex dot3(ComplexView a, ComplexView b, ComplexView c) {
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= a.size; k += 8) {
    for (std::size_t half = 0; half < 8; half += 4) {
      const __m256d ar = _mm256_loadu_pd(a.re + k + half);
      const __m256d ai = _mm256_loadu_pd(a.im + k + half);
      const __m256d br = _mm256_loadu_pd(b.re + k + half);
      const __m256d bi = _mm256_loadu_pd(b.im + k + half);
      const __m256d cr = _mm256_loadu_pd(c.re + k + half);
      const __m256d ci = _mm256_loadu_pd(c.im + k + half);
      const __m256d pr = _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi));
      const __m256d pi = _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br));
      __m256d& acc_re = half == 0 ? re0 : re1;
      __m256d& acc_im = half == 0 ? im0 : im1;
      acc_re = _mm256_fmadd_pd(pr, cr, acc_re);
      acc_re = _mm256_fnmadd_pd(pi, ci, acc_re);
      acc_im = _mm256_fmadd_pd(pr, ci, acc_im);
      acc_im = _mm256_fmadd_pd(pi, cr, acc_im);
    }
  }
  double re = hsum(_mm256_add_pd(re0, re1));
  double im = hsum(_mm256_add_pd(im0, im1));
  for (; k < a.size; ++k) {
    const double pr = a.re[k] * b.re[k] - a.im[k] * b.im[k];
    const double pi = a.re[k] * b.im[k] + a.im[k] * b.re[k];
    re += pr * c.re[k] - pi * c.im[k];
    im += pr * c.im[k] + pi * c.re[k];
  }
  return {re, im};
}

}  // namespace mbverify::kernels::avx2
