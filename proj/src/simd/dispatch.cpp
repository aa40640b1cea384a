// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include "subwave/simd/dispatch.hpp"

#include <cstdlib>
#include <string_view>

#include "subwave/simd/kernels.hpp"

namespace subwave::simd {
namespace {

Backend detect() {
  const char* forced = std::getenv("SUBWAVE_SIMD");
  const std::string_view want = forced ? forced : "";
  if (want == "scalar") return Backend::scalar;
#if defined(__x86_64__) || defined(_M_X64)
  const bool have_avx2 =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  if (want == "avx2") return have_avx2 ? Backend::avx2 : Backend::scalar;
  if (!want.empty()) return Backend::scalar;
  return have_avx2 ? Backend::avx2 : Backend::scalar;
#elif defined(__aarch64__)
  if (want == "neon" || want.empty()) return Backend::neon;
  return Backend::scalar;
#else
  return Backend::scalar;
#endif
}

struct Table {
  scaled_inv_distance_fn row;
  weighted_inv_distance_sum_fn sum;
  convolve_fn conv;
};

Table table_for(Backend b) {
  switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
      return {avx2::scaled_inv_distance_row, avx2::weighted_inv_distance_sum,
              avx2::convolve};
#endif
#if defined(__aarch64__)
    case Backend::neon:
      return {neon::scaled_inv_distance_row, neon::weighted_inv_distance_sum,
              neon::convolve};
#endif
    default:
      return {scalar::scaled_inv_distance_row,
              scalar::weighted_inv_distance_sum, scalar::convolve};
  }
}

const Backend g_backend = detect();
const Table g_table = table_for(g_backend);

}  // namespace

Backend active_backend() { return g_backend; }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
    default:
      return "scalar";
  }
}

void scaled_inv_distance_row(double px, double py, double pz, const double* cx,
                             const double* cy, const double* cz, std::size_t n,
                             double scale, double* out) {
  g_table.row(px, py, pz, cx, cy, cz, n, scale, out);
}

double weighted_inv_distance_sum(double px, double py, double pz,
                                 const double* cx, const double* cy,
                                 const double* cz, const double* w,
                                 std::size_t n) {
  return g_table.sum(px, py, pz, cx, cy, cz, w, n);
}

void convolve(const double* sig, std::size_t ns, const double* ker,
              std::size_t nk, double* out) {
  g_table.conv(sig, ns, ker, nk, out);
}

}  // namespace subwave::simd
