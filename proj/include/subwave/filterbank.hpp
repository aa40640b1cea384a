// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// Biomimetic filter bank: causal damped-sinusoid kernels h(t) =
// c_n exp(Im(w) t) sin(Re(w) t) for t >= 0, channel outputs a_n = s * h_n,
// frequency responses, and the convolution stability bounds.

#pragma once

#include <complex>
#include <vector>

namespace subwave {

struct Kernel {
  std::complex<double> omega;  // rad/s, Im < 0
  double c_n = 1.0;
  double sample_rate = 0.0;    // Hz
  std::vector<double> samples; // h(k/sample_rate), k = 0..
  double truncation_time = 0.0;  // time of the last stored sample, s
};

struct Signal {
  std::vector<double> samples;
  double sample_rate = 0.0;  // Hz
};

enum class KernelNorm { unit_amplitude, unit_l2 };

using FilterBank = std::vector<Kernel>;

// Samples the kernel until the envelope exp(Im(w) t) falls below trunc_tol.
// unit_amplitude keeps c_n = 1; unit_l2 rescales to unit discrete L2 norm.
Kernel make_kernel(std::complex<double> omega, double sample_rate,
                   double trunc_tol,
                   KernelNorm norm = KernelNorm::unit_amplitude);

// Causal convolution per channel, length ns + nk - 1, scaled by
// 1/sample_rate (rectangle-rule approximation of the continuous transform).
std::vector<std::vector<double>> apply_transform(
    const Signal& signal, const std::vector<Kernel>& kernels);

struct FrequencyResponse {
  std::vector<double> freq_hz;    // one-sided grid
  std::vector<double> magnitude;  // unit discrete L2 norm
  double peak_hz = 0.0;
};

// nfft = 0 picks the next power of two >= 4x kernel length.
FrequencyResponse frequency_response(const Kernel& kernel,
                                     std::size_t nfft = 0);

// First and last frequency where the magnitude reaches peak/sqrt(2).
struct HalfPowerBand {
  double lo_hz, hi_hz;
};
HalfPowerBand half_power_band(const FrequencyResponse& response);

// sqrt(2)/(c e) * |w_old - w_new| * s_l1. Both imaginary parts must lie at
// or below -c.
double stability_bound(std::complex<double> omega_old,
                       std::complex<double> omega_new, double c, double s_l1);

// Continuous L1 norm approximated by sum|s|/sample_rate.
double signal_l1_norm(const Signal& signal);

struct KernelSupDifference {
  double sup_diff;        // sampled sup of |h_old - h_new|, c_n = 1
  double analytic_bound;  // (1/(c e)) (|dIm| + |dRe|)
  bool within_bound;
};

KernelSupDifference kernel_sup_difference(std::complex<double> omega_old,
                                          std::complex<double> omega_new,
                                          double c, double sample_rate);

}  // namespace subwave
