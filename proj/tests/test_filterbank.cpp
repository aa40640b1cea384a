// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "subwave/errors.hpp"
#include "subwave/filterbank.hpp"

using namespace subwave;

namespace {

const std::complex<double> kOmega{2.0 * std::numbers::pi * 100.0, -50.0};

Signal random_signal(std::size_t n, double fs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Signal s;
  s.sample_rate = fs;
  s.samples.resize(n);
  for (double& v : s.samples) v = u(rng);
  return s;
}

}  // namespace

TEST_SUITE("filterbank") {

TEST_CASE("kernel samples the damped sinusoid on the time grid") {
  const double fs = 4000.0;
  const Kernel k = make_kernel(kOmega, fs, 1e-6);
  REQUIRE(k.samples.size() > 10);
  CHECK(k.samples[0] == 0.0);
  for (std::size_t i : {1u, 7u, 42u}) {
    const double t = double(i) / fs;
    const double expect =
        std::exp(kOmega.imag() * t) * std::sin(kOmega.real() * t);
    CHECK(k.samples[i] == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("truncation keeps ln(1/tol)/decay seconds of kernel") {
  const double fs = 1000.0, decay = 50.0;
  const Kernel k =
      make_kernel({2.0 * std::numbers::pi * 60.0, -decay}, fs, 1e-6);
  // frozen: ln(1e6)/50 = 0.2763102111592855
  const double t_cross = 0.2763102111592855;
  CHECK(k.samples.size() == std::size_t(std::floor(t_cross * fs)) + 2);
  CHECK(k.truncation_time ==
        doctest::Approx(double(k.samples.size() - 1) / fs));
  CHECK(k.truncation_time >= t_cross);
  CHECK(k.truncation_time <= t_cross + 2.0 / fs);
}

TEST_CASE("kernel validation rejects bad frequencies and rates") {
  CHECK_THROWS_AS(make_kernel({100.0, 0.0}, 1000.0, 1e-6),
                  std::invalid_argument);  // non-decaying
  CHECK_THROWS_AS(make_kernel({-100.0, -1.0}, 1000.0, 1e-6),
                  std::invalid_argument);  // nonpositive frequency
  CHECK_THROWS_AS(make_kernel({2000.0 * std::numbers::pi, -1.0}, 1000.0,
                              1e-6),
                  std::invalid_argument);  // above Nyquist
  CHECK_THROWS_AS(make_kernel(kOmega, 4000.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel(kOmega, 4000.0, 1.5), std::invalid_argument);
}

TEST_CASE("unit-l2 normalization gives unit discrete norm") {
  const Kernel k = make_kernel(kOmega, 4000.0, 1e-8, KernelNorm::unit_l2);
  double norm_sq = 0.0;
  for (double v : k.samples) norm_sq += v * v;
  CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(k.c_n != 1.0);
}

TEST_CASE("impulse input reproduces the kernel scaled by 1/fs") {
  const double fs = 4000.0;
  const Kernel k = make_kernel(kOmega, fs, 1e-6);
  Signal impulse;
  impulse.sample_rate = fs;
  impulse.samples.assign(64, 0.0);
  impulse.samples[0] = 1.0;
  const auto out = apply_transform(impulse, {k});
  REQUIRE(out.size() == 1u);
  REQUIRE(out[0].size() == impulse.samples.size() + k.samples.size() - 1);
  for (std::size_t t = 0; t < k.samples.size(); ++t) {
    CHECK(out[0][t] == doctest::Approx(k.samples[t] / fs).epsilon(1e-15));
  }
  for (std::size_t t = k.samples.size(); t < out[0].size(); ++t) {
    CHECK(out[0][t] == 0.0);
  }
}

TEST_CASE("transform is causal") {
  const double fs = 4000.0;
  const Kernel k = make_kernel(kOmega, fs, 1e-6);
  Signal delayed;
  delayed.sample_rate = fs;
  delayed.samples.assign(100, 0.0);
  delayed.samples[37] = 2.5;
  const auto out = apply_transform(delayed, {k});
  for (std::size_t t = 0; t < 37; ++t) CHECK(out[0][t] == 0.0);
  CHECK(out[0][38] != 0.0);
}

TEST_CASE("transform is linear to roundoff") {
  const double fs = 8000.0;
  const std::vector<Kernel> bank{
      make_kernel({2.0 * std::numbers::pi * 200.0, -40.0}, fs, 1e-6),
      make_kernel({2.0 * std::numbers::pi * 700.0, -90.0}, fs, 1e-6)};
  const Signal s1 = random_signal(300, fs, 1);
  const Signal s2 = random_signal(300, fs, 2);
  Signal mix;
  mix.sample_rate = fs;
  mix.samples.resize(300);
  const double a = 1.7, b = -0.3;
  for (std::size_t i = 0; i < 300; ++i) {
    mix.samples[i] = a * s1.samples[i] + b * s2.samples[i];
  }
  const auto o1 = apply_transform(s1, bank);
  const auto o2 = apply_transform(s2, bank);
  const auto om = apply_transform(mix, bank);
  for (std::size_t c = 0; c < bank.size(); ++c) {
    for (std::size_t t = 0; t < om[c].size(); ++t) {
      const double expect = a * o1[c][t] + b * o2[c][t];
      const double scale = std::max(std::abs(expect), 1e-6);
      CHECK(std::abs(om[c][t] - expect) / scale < 1e-12);
    }
  }
}

TEST_CASE("transform commutes with integer shifts bit for bit") {
  const double fs = 8000.0;
  const Kernel k =
      make_kernel({2.0 * std::numbers::pi * 300.0, -60.0}, fs, 1e-6);
  const Signal s = random_signal(200, fs, 5);
  const std::size_t shift = 13;
  Signal shifted;
  shifted.sample_rate = fs;
  shifted.samples.assign(s.samples.size() + shift, 0.0);
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    shifted.samples[i + shift] = s.samples[i];
  }
  const auto base = apply_transform(s, {k});
  const auto moved = apply_transform(shifted, {k});
  for (std::size_t t = 0; t < base[0].size(); ++t) {
    CHECK(moved[0][t + shift] == base[0][t]);
  }
}

TEST_CASE("transform validates rates and emptiness") {
  const Kernel k = make_kernel(kOmega, 4000.0, 1e-6);
  Signal empty;
  empty.sample_rate = 4000.0;
  CHECK_THROWS_AS(apply_transform(empty, {k}), std::invalid_argument);
  Signal wrong = random_signal(10, 8000.0, 1);
  CHECK_THROWS_AS(apply_transform(wrong, {k}), std::invalid_argument);
}

TEST_CASE("frequency response peaks at the resonance") {
  const double fs = 4000.0;
  const Kernel k = make_kernel(kOmega, fs, 1e-8);
  const FrequencyResponse fr = frequency_response(k);
  REQUIRE(!fr.freq_hz.empty());
  double norm_sq = 0.0;
  for (double m : fr.magnitude) norm_sq += m * m;
  CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-12));
  const double f0 = kOmega.real() / (2.0 * std::numbers::pi);
  const double df = fr.freq_hz[1] - fr.freq_hz[0];
  CHECK(std::abs(fr.peak_hz - f0) < 2.0 * df + 2.0);
}

TEST_CASE("half-power band brackets the peak with Lorentzian width") {
  const double fs = 4000.0, decay = 50.0;
  const Kernel k =
      make_kernel({2.0 * std::numbers::pi * 100.0, -decay}, fs, 1e-9);
  const FrequencyResponse fr = frequency_response(k, 1 << 16);
  const HalfPowerBand band = half_power_band(fr);
  CHECK(band.lo_hz <= fr.peak_hz);
  CHECK(band.hi_hz >= fr.peak_hz);
  // damped sinusoid: full width at half power ~ decay/pi Hz
  const double width = band.hi_hz - band.lo_hz;
  CHECK(width == doctest::Approx(decay / std::numbers::pi).epsilon(0.3));
}

TEST_CASE("stability bound formula and preconditions") {
  const std::complex<double> w1(600.0, -50.0), w2(650.0, -45.0);
  const double c = 40.0, l1 = 2.5;
  const double expect = std::sqrt(2.0) / (c * std::numbers::e) *
                        std::abs(w1 - w2) * l1;
  CHECK(stability_bound(w1, w2, c, l1) == doctest::Approx(expect));
  CHECK_THROWS_AS(stability_bound(w1, w2, 0.0, l1), std::invalid_argument);
  CHECK_THROWS_AS(stability_bound(w1, w2, 60.0, l1), std::invalid_argument);
}

TEST_CASE("signal l1 norm uses the rectangle rule") {
  Signal s;
  s.sample_rate = 100.0;
  s.samples = {1.0, -2.0, 0.5};
  CHECK(signal_l1_norm(s) == doctest::Approx(3.5 / 100.0).epsilon(1e-15));
}

TEST_CASE("kernel sup difference respects the analytic envelope bound") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> re(2.0 * std::numbers::pi * 50.0,
                                            2.0 * std::numbers::pi * 400.0);
  std::uniform_real_distribution<double> im(-80.0, -20.0);
  for (int t = 0; t < 20; ++t) {
    const std::complex<double> w1(re(rng), im(rng));
    const std::complex<double> w2(re(rng), im(rng));
    const double c = std::min(-w1.imag(), -w2.imag());
    const KernelSupDifference d =
        kernel_sup_difference(w1, w2, c, 20000.0);
    CHECK(d.within_bound);
    CHECK(d.sup_diff <= d.analytic_bound * (1.0 + 1e-9));
  }
  const KernelSupDifference same =
      kernel_sup_difference(kOmega, kOmega, 50.0, 20000.0);
  CHECK(same.sup_diff == 0.0);
  CHECK(same.analytic_bound == 0.0);
  CHECK(same.within_bound);
}

TEST_CASE("convolution difference obeys the stability bound") {
  const double fs = 20000.0;
  const std::complex<double> w1(2.0 * std::numbers::pi * 150.0, -45.0);
  const std::complex<double> w2(2.0 * std::numbers::pi * 170.0, -55.0);
  const double c = 45.0;
  const Signal s = random_signal(2000, fs, 11);
  const Kernel k1 = make_kernel(w1, fs, 1e-9);
  const Kernel k2 = make_kernel(w2, fs, 1e-9);
  const auto o1 = apply_transform(s, {k1});
  const auto o2 = apply_transform(s, {k2});
  double sup = 0.0;
  const std::size_t n = std::max(o1[0].size(), o2[0].size());
  for (std::size_t t = 0; t < n; ++t) {
    const double a = t < o1[0].size() ? o1[0][t] : 0.0;
    const double b = t < o2[0].size() ? o2[0][t] : 0.0;
    sup = std::max(sup, std::abs(a - b));
  }
  CHECK(sup <= stability_bound(w1, w2, c, signal_l1_norm(s)));
}

}  // TEST_SUITE
