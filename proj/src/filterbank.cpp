// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include "subwave/filterbank.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "subwave/errors.hpp"
#include "subwave/simd/dispatch.hpp"

namespace subwave {
namespace {

void validate_omega(std::complex<double> omega, double sample_rate) {
  if (!(omega.imag() < 0.0)) {
    throw std::invalid_argument(
        "kernel: Im(omega) must be negative (non-decaying kernel)");
  }
  if (!(omega.real() > 0.0)) {
    throw std::invalid_argument("kernel: Re(omega) must be positive");
  }
  if (!(sample_rate > 2.0 * omega.real() / (2.0 * std::numbers::pi))) {
    throw std::invalid_argument(
        "kernel: sample rate below the Nyquist guard 2*Re(omega)/(2*pi)");
  }
}

std::size_t next_pow2(std::size_t x) {
  std::size_t p = 1;
  while (p < x) p <<= 1;
  return p;
}

}  // namespace

Kernel make_kernel(std::complex<double> omega, double sample_rate,
                   double trunc_tol, KernelNorm norm) {
  validate_omega(omega, sample_rate);
  if (!(trunc_tol > 0.0) || !(trunc_tol < 1.0)) {
    throw std::invalid_argument("kernel: trunc_tol must lie in (0, 1)");
  }
  const double decay = -omega.imag();
  // First sample time strictly past the envelope crossing, so the envelope
  // at truncation_time is below trunc_tol (peak envelope is 1 at t = 0).
  const double t_cross = std::log(1.0 / trunc_tol) / decay;
  const std::size_t last =
      static_cast<std::size_t>(std::floor(t_cross * sample_rate)) + 1;

  Kernel kernel;
  kernel.omega = omega;
  kernel.sample_rate = sample_rate;
  kernel.truncation_time = static_cast<double>(last) / sample_rate;
  kernel.samples.resize(last + 1);
  for (std::size_t k = 0; k <= last; ++k) {
    const double t = static_cast<double>(k) / sample_rate;
    kernel.samples[k] =
        std::exp(omega.imag() * t) * std::sin(omega.real() * t);
  }
  if (norm == KernelNorm::unit_l2) {
    double sq = 0.0;
    for (double s : kernel.samples) sq += s * s;
    if (!(sq > 0.0)) {
      throw NumericalError("kernel: zero norm, cannot normalize");
    }
    kernel.c_n = 1.0 / std::sqrt(sq);
    for (double& s : kernel.samples) s *= kernel.c_n;
  }
  return kernel;
}

std::vector<std::vector<double>> apply_transform(
    const Signal& signal, const std::vector<Kernel>& kernels) {
  if (signal.samples.empty()) {
    throw std::invalid_argument("transform: empty signal");
  }
  if (!(signal.sample_rate > 0.0)) {
    throw std::invalid_argument("transform: sample rate must be > 0");
  }
  std::vector<std::vector<double>> channels;
  channels.reserve(kernels.size());
  for (const Kernel& kernel : kernels) {
    if (kernel.sample_rate != signal.sample_rate) {
      throw std::invalid_argument(
          "transform: kernel and signal sample rates differ");
    }
    std::vector<double> out(signal.samples.size() + kernel.samples.size() - 1);
    simd::convolve(signal.samples.data(), signal.samples.size(),
                   kernel.samples.data(), kernel.samples.size(), out.data());
    const double scale = 1.0 / signal.sample_rate;
    for (double& x : out) x *= scale;
    channels.push_back(std::move(out));
  }
  return channels;
}

FrequencyResponse frequency_response(const Kernel& kernel, std::size_t nfft) {
  const std::size_t len = kernel.samples.size();
  if (nfft == 0) nfft = next_pow2(4 * len);
  if (nfft < len) {
    throw std::invalid_argument("frequency_response: nfft below kernel length");
  }
  double* in = fftw_alloc_real(nfft);
  fftw_complex* out = fftw_alloc_complex(nfft / 2 + 1);
  std::copy(kernel.samples.begin(), kernel.samples.end(), in);
  std::fill(in + len, in + nfft, 0.0);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(nfft), in, out,
                                        FFTW_ESTIMATE);
  fftw_execute(plan);

  FrequencyResponse response;
  const std::size_t bins = nfft / 2 + 1;
  response.freq_hz.resize(bins);
  response.magnitude.resize(bins);
  double norm_sq = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = out[k][0];
    const double im = out[k][1];
    const double mag = std::hypot(re, im);
    response.freq_hz[k] = static_cast<double>(k) * kernel.sample_rate /
                          static_cast<double>(nfft);
    response.magnitude[k] = mag;
    norm_sq += mag * mag;
  }
  fftw_destroy_plan(plan);
  fftw_free(in);
  fftw_free(out);
  if (!(norm_sq > 0.0)) {
    throw NumericalError("frequency_response: zero spectrum");
  }
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  std::size_t peak = 0;
  for (std::size_t k = 0; k < bins; ++k) {
    response.magnitude[k] *= inv_norm;
    if (response.magnitude[k] > response.magnitude[peak]) peak = k;
  }
  response.peak_hz = response.freq_hz[peak];
  return response;
}

HalfPowerBand half_power_band(const FrequencyResponse& response) {
  const double peak =
      *std::max_element(response.magnitude.begin(), response.magnitude.end());
  const double threshold = peak / std::numbers::sqrt2;
  std::size_t lo = 0;
  while (lo < response.magnitude.size() &&
         response.magnitude[lo] < threshold) {
    ++lo;
  }
  std::size_t hi = response.magnitude.size();
  while (hi > 0 && response.magnitude[hi - 1] < threshold) --hi;
  if (lo >= hi) {
    throw NumericalError("half_power_band: empty band");
  }
  return HalfPowerBand{response.freq_hz[lo], response.freq_hz[hi - 1]};
}

double stability_bound(std::complex<double> omega_old,
                       std::complex<double> omega_new, double c,
                       double s_l1) {
  if (!(c > 0.0)) {
    throw std::invalid_argument("stability_bound: c must be > 0");
  }
  if (!(omega_old.imag() <= -c) || !(omega_new.imag() <= -c)) {
    throw std::invalid_argument(
        "stability_bound: both Im(omega) must lie at or below -c");
  }
  return std::numbers::sqrt2 / (c * std::numbers::e) *
         std::abs(omega_old - omega_new) * s_l1;
}

double signal_l1_norm(const Signal& signal) {
  if (!(signal.sample_rate > 0.0)) {
    throw std::invalid_argument("signal_l1_norm: sample rate must be > 0");
  }
  double acc = 0.0;
  for (double s : signal.samples) acc += std::abs(s);
  return acc / signal.sample_rate;
}

KernelSupDifference kernel_sup_difference(std::complex<double> omega_old,
                                          std::complex<double> omega_new,
                                          double c, double sample_rate) {
  if (!(c > 0.0)) {
    throw std::invalid_argument("kernel_sup_difference: c must be > 0");
  }
  if (!(omega_old.imag() <= -c) || !(omega_new.imag() <= -c)) {
    throw std::invalid_argument(
        "kernel_sup_difference: both Im(omega) must lie at or below -c");
  }
  if (!(sample_rate > 0.0)) {
    throw std::invalid_argument(
        "kernel_sup_difference: sample rate must be > 0");
  }
  // Beyond this envelope both kernels differ by less than anything the sup
  // could resolve against the analytic bound.
  constexpr double kTailTol = 1e-9;
  const double decay =
      std::min(-omega_old.imag(), -omega_new.imag());
  const double t_end = std::log(1.0 / kTailTol) / decay;
  const std::size_t samples =
      static_cast<std::size_t>(std::floor(t_end * sample_rate)) + 2;

  double sup = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / sample_rate;
    const double h_old =
        std::exp(omega_old.imag() * t) * std::sin(omega_old.real() * t);
    const double h_new =
        std::exp(omega_new.imag() * t) * std::sin(omega_new.real() * t);
    sup = std::max(sup, std::abs(h_old - h_new));
  }

  KernelSupDifference result;
  result.sup_diff = sup;
  result.analytic_bound =
      (std::abs(omega_old.imag() - omega_new.imag()) +
       std::abs(omega_old.real() - omega_new.real())) /
      (c * std::numbers::e);
  result.within_bound =
      sup <= result.analytic_bound * (1.0 + 1e-12) + 1e-300;
  return result;
}

}  // namespace subwave
