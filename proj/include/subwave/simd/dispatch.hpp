// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "subwave/simd/kernels.hpp"

namespace subwave::simd {

enum class Backend { scalar, avx2, neon };

// Backend chosen once at startup from CPU features; the SUBWAVE_SIMD
// environment variable ("scalar", "avx2", "neon") forces a choice, falling
// back to scalar when the named backend is not compiled in or unsupported.
Backend active_backend();
const char* backend_name(Backend b);

void scaled_inv_distance_row(double px, double py, double pz, const double* cx,
                             const double* cy, const double* cz, std::size_t n,
                             double scale, double* out);
double weighted_inv_distance_sum(double px, double py, double pz,
                                 const double* cx, const double* cy,
                                 const double* cz, const double* w,
                                 std::size_t n);
void convolve(const double* sig, std::size_t ns, const double* ker,
              std::size_t nk, double* out);

}  // namespace subwave::simd
