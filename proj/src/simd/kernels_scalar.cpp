// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// Reference kernels. This translation unit is built with -ffp-contract=off:
// each mul and add rounds separately, matching the vector backends' op
// ordering so the elementwise kernel is comparable bit for bit.

#include <cmath>
#include <cstddef>

#include "subwave/simd/kernels.hpp"

namespace subwave::simd::scalar {

void scaled_inv_distance_row(double px, double py, double pz, const double* cx,
                             const double* cy, const double* cz, std::size_t n,
                             double scale, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
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
  // Four accumulators, mirroring the vector backends' partial sums.
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double dx0 = px - cx[i], dy0 = py - cy[i], dz0 = pz - cz[i];
    const double dx1 = px - cx[i + 1], dy1 = py - cy[i + 1],
                 dz1 = pz - cz[i + 1];
    const double dx2 = px - cx[i + 2], dy2 = py - cy[i + 2],
                 dz2 = pz - cz[i + 2];
    const double dx3 = px - cx[i + 3], dy3 = py - cy[i + 3],
                 dz3 = pz - cz[i + 3];
    acc0 += w[i] / std::sqrt((dx0 * dx0 + dy0 * dy0) + dz0 * dz0);
    acc1 += w[i + 1] / std::sqrt((dx1 * dx1 + dy1 * dy1) + dz1 * dz1);
    acc2 += w[i + 2] / std::sqrt((dx2 * dx2 + dy2 * dy2) + dz2 * dz2);
    acc3 += w[i + 3] / std::sqrt((dx3 * dx3 + dy3 * dy3) + dz3 * dz3);
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double dx = px - cx[i], dy = py - cy[i], dz = pz - cz[i];
    tail += w[i] / std::sqrt((dx * dx + dy * dy) + dz * dz);
  }
  return ((acc0 + acc1) + (acc2 + acc3)) + tail;
}

void convolve(const double* sig, std::size_t ns, const double* ker,
              std::size_t nk, double* out) {
  const std::size_t no = ns + nk - 1;
  for (std::size_t t = 0; t < no; ++t) out[t] = 0.0;
  // Tap-major accumulation: for each kernel tap, one pass over the signal.
  // Every output element receives its terms in ascending-tap order, the same
  // order the vector backends use.
  for (std::size_t k = 0; k < nk; ++k) {
    const double hk = ker[k];
    double* o = out + k;
    for (std::size_t t = 0; t < ns; ++t) o[t] += hk * sig[t];
  }
}

}  // namespace subwave::simd::scalar
