// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// NEON (aarch64) kernels, two lanes of f64. Same contract as the AVX2
// backend: the elementwise kernel matches the scalar reference bit for bit,
// the accumulating kernels to roundoff.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

#include "subwave/simd/kernels.hpp"

namespace subwave::simd::neon {

void scaled_inv_distance_row(double px, double py, double pz, const double* cx,
                             const double* cy, const double* cz, std::size_t n,
                             double scale, double* out) {
  const float64x2_t vpx = vdupq_n_f64(px);
  const float64x2_t vpy = vdupq_n_f64(py);
  const float64x2_t vpz = vdupq_n_f64(pz);
  const float64x2_t vsc = vdupq_n_f64(scale);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vpx, vld1q_f64(cx + i));
    const float64x2_t dy = vsubq_f64(vpy, vld1q_f64(cy + i));
    const float64x2_t dz = vsubq_f64(vpz, vld1q_f64(cz + i));
    const float64x2_t d2 = vaddq_f64(
        vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy)), vmulq_f64(dz, dz));
    vst1q_f64(out + i, vdivq_f64(vsc, vsqrtq_f64(d2)));
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
  const float64x2_t vpx = vdupq_n_f64(px);
  const float64x2_t vpy = vdupq_n_f64(py);
  const float64x2_t vpz = vdupq_n_f64(pz);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vpx, vld1q_f64(cx + i));
    const float64x2_t dy = vsubq_f64(vpy, vld1q_f64(cy + i));
    const float64x2_t dz = vsubq_f64(vpz, vld1q_f64(cz + i));
    const float64x2_t d2 =
        vfmaq_f64(vfmaq_f64(vmulq_f64(dz, dz), dy, dy), dx, dx);
    acc = vaddq_f64(acc, vdivq_f64(vld1q_f64(w + i), vsqrtq_f64(d2)));
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double dx = px - cx[i], dy = py - cy[i], dz = pz - cz[i];
    tail += w[i] / std::sqrt((dx * dx + dy * dy) + dz * dz);
  }
  return (vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1)) + tail;
}

void convolve(const double* sig, std::size_t ns, const double* ker,
              std::size_t nk, double* out) {
  const std::size_t no = ns + nk - 1;
  for (std::size_t t = 0; t < no; ++t) out[t] = 0.0;
  for (std::size_t k = 0; k < nk; ++k) {
    const float64x2_t hk = vdupq_n_f64(ker[k]);
    double* o = out + k;
    std::size_t t = 0;
    for (; t + 2 <= ns; t += 2) {
      vst1q_f64(o + t, vfmaq_f64(vld1q_f64(o + t), hk, vld1q_f64(sig + t)));
    }
    const double hks = ker[k];
    for (; t < ns; ++t) o[t] += hks * sig[t];
  }
}

}  // namespace subwave::simd::neon

#endif  // __aarch64__
