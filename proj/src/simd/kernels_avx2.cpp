// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// AVX2 kernels. scaled_inv_distance_row avoids fused multiply-add so every
// element goes through the same single-rounded ops as the scalar reference
// and the results match bit for bit. The accumulating kernels use FMA and
// agree with the reference to roundoff only.

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "subwave/simd/kernels.hpp"

namespace subwave::simd::avx2 {

void scaled_inv_distance_row(double px, double py, double pz, const double* cx,
                             const double* cy, const double* cz, std::size_t n,
                             double scale, double* out) {
  const __m256d vpx = _mm256_set1_pd(px);
  const __m256d vpy = _mm256_set1_pd(py);
  const __m256d vpz = _mm256_set1_pd(pz);
  const __m256d vsc = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(cx + i));
    const __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(cy + i));
    const __m256d dz = _mm256_sub_pd(vpz, _mm256_loadu_pd(cz + i));
    const __m256d d2 =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                      _mm256_mul_pd(dz, dz));
    _mm256_storeu_pd(out + i, _mm256_div_pd(vsc, _mm256_sqrt_pd(d2)));
  }
  for (; i < n; ++i) {
    const double dx = px - cx[i];
    const double dy = py - cy[i];
    const double dz = pz - cz[i];
    const double d2 = (dx * dx + dy * dy) + dz * dz;
    out[i] = scale / std::sqrt(d2);
  }
}

double weighted_inv_distance_sum(double px, double py, double pz,
                                 const double* cx, const double* cy,
                                 const double* cz, const double* w,
                                 std::size_t n) {
  const __m256d vpx = _mm256_set1_pd(px);
  const __m256d vpy = _mm256_set1_pd(py);
  const __m256d vpz = _mm256_set1_pd(pz);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(cx + i));
    const __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(cy + i));
    const __m256d dz = _mm256_sub_pd(vpz, _mm256_loadu_pd(cz + i));
    const __m256d d2 = _mm256_fmadd_pd(
        dx, dx, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dz, dz)));
    const __m256d inv =
        _mm256_div_pd(_mm256_loadu_pd(w + i), _mm256_sqrt_pd(d2));
    acc = _mm256_add_pd(acc, inv);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double tail = 0.0;
  for (; i < n; ++i) {
    const double dx = px - cx[i], dy = py - cy[i], dz = pz - cz[i];
    tail += w[i] / std::sqrt((dx * dx + dy * dy) + dz * dz);
  }
  return ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + tail;
}

void convolve(const double* sig, std::size_t ns, const double* ker,
              std::size_t nk, double* out) {
  const std::size_t no = ns + nk - 1;
  for (std::size_t t = 0; t < no; ++t) out[t] = 0.0;
  for (std::size_t k = 0; k < nk; ++k) {
    const __m256d hk = _mm256_set1_pd(ker[k]);
    double* o = out + k;
    std::size_t t = 0;
    for (; t + 4 <= ns; t += 4) {
      const __m256d acc = _mm256_fmadd_pd(hk, _mm256_loadu_pd(sig + t),
                                          _mm256_loadu_pd(o + t));
      _mm256_storeu_pd(o + t, acc);
    }
    const double hks = ker[k];
    for (; t < ns; ++t) o[t] += hks * sig[t];
  }
}

}  // namespace subwave::simd::avx2
