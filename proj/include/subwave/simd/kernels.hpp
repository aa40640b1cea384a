// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// Per-backend hot-loop kernels. Everything here is a pure function of its
// arguments; callers pick a backend through dispatch.hpp unless they are
// equivalence tests, which call the backends directly.

#pragma once

#include <cstddef>

namespace subwave::simd {

// out[i] = scale / |p - c_i|. Elementwise, no accumulation: the scalar and
// vector backends agree bit for bit (single-rounded mul/add/sqrt/div only).
using scaled_inv_distance_fn = void (*)(double px, double py, double pz,
                                        const double* cx, const double* cy,
                                        const double* cz, std::size_t n,
                                        double scale, double* out);

// Returns sum_i w[i] / |p - c_i|. Accumulating: backends agree to roundoff
// (vector lanes and fused multiply-add reorder the sum), not bit for bit.
using weighted_inv_distance_sum_fn = double (*)(double px, double py,
                                                double pz, const double* cx,
                                                const double* cy,
                                                const double* cz,
                                                const double* w,
                                                std::size_t n);

// Full causal convolution: out[t] = sum_k ker[k] * sig[t-k] for
// t in [0, ns+nk-1). out must hold ns+nk-1 entries; it is overwritten.
using convolve_fn = void (*)(const double* sig, std::size_t ns,
                             const double* ker, std::size_t nk, double* out);

namespace scalar {
void scaled_inv_distance_row(double px, double py, double pz, const double* cx,
                             const double* cy, const double* cz, std::size_t n,
                             double scale, double* out);
double weighted_inv_distance_sum(double px, double py, double pz,
                                 const double* cx, const double* cy,
                                 const double* cz, const double* w,
                                 std::size_t n);
void convolve(const double* sig, std::size_t ns, const double* ker,
              std::size_t nk, double* out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void scaled_inv_distance_row(double px, double py, double pz, const double* cx,
                             const double* cy, const double* cz, std::size_t n,
                             double scale, double* out);
double weighted_inv_distance_sum(double px, double py, double pz,
                                 const double* cx, const double* cy,
                                 const double* cz, const double* w,
                                 std::size_t n);
void convolve(const double* sig, std::size_t ns, const double* ker,
              std::size_t nk, double* out);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void scaled_inv_distance_row(double px, double py, double pz, const double* cx,
                             const double* cy, const double* cz, std::size_t n,
                             double scale, double* out);
double weighted_inv_distance_sum(double px, double py, double pz,
                                 const double* cx, const double* cy,
                                 const double* cz, const double* w,
                                 std::size_t n);
void convolve(const double* sig, std::size_t ns, const double* ker,
              std::size_t nk, double* out);
}  // namespace neon
#endif

}  // namespace subwave::simd
