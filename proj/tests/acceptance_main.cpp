// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks, one PASS/FAIL line each. Exit code is the
// number of failed checks.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "subwave/bem.hpp"
#include "subwave/capacitance.hpp"
#include "subwave/filterbank.hpp"
#include "subwave/geometry.hpp"
#include "subwave/robustness.hpp"
#include "subwave/spectral.hpp"

using namespace subwave;

namespace {

constexpr double kPi = std::numbers::pi;
const Material kUnit{1e-3, 1.0, 1.0};
const Material kAirWater{1e-3, 343.0, 1481.0};

struct Outcome {
  bool ok;
  std::string details;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

ResonatorArray graded_dilute(int n, double growth, double spacing,
                             double eps) {
  return as_dilute(make_graded_array(n, 1.0, growth, spacing, kUnit), eps);
}

// 1. Single-sphere capacitance against the closed form 4*pi*r.
Outcome c1_bem_sphere() {
  const ResonatorArray one = make_array({{Vec3(0, 0, 0), 1.0}}, kUnit);
  const double exact = 4.0 * kPi;
  double errs[2], times[2];
  const int refines[2] = {3, 4};
  for (int i = 0; i < 2; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const BemCapacitance bc = capacitance_matrix_bem(one, refines[i]);
    times[i] = seconds_since(t0);
    errs[i] = std::abs(bc.C(0, 0) - exact) / exact;
  }
  const bool ok = errs[0] < 0.01 && errs[1] < 0.003 && times[0] < 10.0 &&
                  times[1] < 10.0;
  return {ok, fmt("C11 rel err %.2e @refine3 (%.2fs, need <1e-2), "
                  "%.2e @refine4 (%.2fs, need <3e-3)",
                  errs[0], times[0], errs[1], times[1])};
}

// 2. Dilute closed form converges to the boundary-integral matrix at
// O(eps^2): successive discrepancy ratios near 4.
Outcome c2_dilute_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Vec3> anchors{Vec3(0, 0, 0), Vec3(0.75, 0, 0)};
  const double epsilons[3] = {0.2, 0.1, 0.05};
  // refinement matched to the separation: the mesh bias must stay well
  // below the dilute discrepancy being measured, and the eps=0.05 term is
  // only ~0.45% of the matrix scale
  const int refines[3] = {3, 3, 4};
  double disc[3];
  for (int i = 0; i < 3; ++i) {
    const ResonatorArray a =
        make_dilute_array(anchors, {1.0, 1.0}, epsilons[i], kUnit);
    const GeneralizedCapacitanceMatrix exact = gcm_from_bem(a, refines[i]);
    const GeneralizedCapacitanceMatrix approx = dilute_gcm(a);
    disc[i] = (exact.values - approx.values).norm();
  }
  const double r1 = disc[0] / disc[1], r2 = disc[1] / disc[2];
  const double elapsed = seconds_since(t0);
  const bool ok = r1 >= 2.5 && r1 <= 6.0 && r2 >= 2.5 && r2 <= 6.0 &&
                  elapsed < 60.0;
  return {ok, fmt("discrepancy ratios %.3f, %.3f (need within [2.5,6]), "
                  "%.1fs (need <60s)",
                  r1, r2, elapsed)};
}

// 3. Wielandt-Hoffman bound on seeded size and position perturbations.
Outcome c3_wielandt_hoffman() {
  const auto t0 = std::chrono::steady_clock::now();
  const ResonatorArray a = graded_dilute(10, 1.07, 5.0, 0.05);
  int size_pass = 0, pos_pass = 0;
  for (int t = 0; t < 100; ++t) {
    const PerturbationSpec s =
        random_perturbation(PerturbationKind::size, 10, 0.05, 100 + t);
    size_pass += wielandt_hoffman_check(perturbed_gcm_size(a, s.alphas),
                                        kUnit)
                     .bound_ok;
    const PerturbationSpec p =
        random_perturbation(PerturbationKind::position, 10, 0.02, 200 + t);
    pos_pass += wielandt_hoffman_check(perturbed_gcm_position(a, p.betas),
                                       kUnit)
                    .bound_ok;
  }
  const double elapsed = seconds_since(t0);
  const bool ok = size_pass == 100 && pos_pass == 100 && elapsed < 5.0;
  return {ok, fmt("size %d/100, position %d/100 within bound, %.2fs "
                  "(need <5s)",
                  size_pass, pos_pass, elapsed)};
}

// 4. Exact eigenvalue interlacing under every single removal.
Outcome c4_interlacing() {
  const auto t0 = std::chrono::steady_clock::now();
  int arrays = 0, removals = 0, violations = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + t % 18;
    // spacing keeps the first-order matrix positive definite out to n=20
    const ResonatorArray a = graded_dilute(
        n, 1.02 + 0.005 * (t % 10), 6.0 + t % 4, 0.05);
    const GeneralizedCapacitanceMatrix gcm = dilute_gcm(a);
    ++arrays;
    for (int j = 1; j <= n; ++j) {
      const InterlacingReport r = removal_analysis(gcm, {j}, kUnit);
      ++removals;
      violations += static_cast<int>(r.violations.size());
    }
  }
  const double elapsed = seconds_since(t0);
  const bool ok = violations == 0 && elapsed < 10.0;
  return {ok, fmt("%d arrays, %d removals, %d violations (need 0), %.2fs "
                  "(need <10s)",
                  arrays, removals, violations, elapsed)};
}

// 5. First-order eigenvector error decays quadratically in the
// perturbation scale.
Outcome c5_eigvec_scaling() {
  const auto t0 = std::chrono::steady_clock::now();
  const GeneralizedCapacitanceMatrix base =
      dilute_gcm(graded_dilute(8, 1.07, 5.0, 0.05));
  Eigen::MatrixXd g0(8, 8);
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j <= i; ++j) g0(i, j) = g0(j, i) = u(rng);
  }
  g0 /= g0.norm();
  const double gammas[3] = {1e-2, 5e-3, 2.5e-3};
  double err[3];
  for (int i = 0; i < 3; ++i) {
    err[i] = eigvec_first_order(base.values, gammas[i] * g0)
                 .errors.maxCoeff();
  }
  const double r1 = err[0] / err[1], r2 = err[1] / err[2];
  const double elapsed = seconds_since(t0);
  const bool ok = r1 >= 2.5 && r1 <= 6.0 && r2 >= 2.5 && r2 <= 6.0 &&
                  elapsed < 5.0;
  return {ok, fmt("error ratios %.3f, %.3f (need within [2.5,6]), %.2fs "
                  "(need <5s)",
                  r1, r2, elapsed)};
}

// 6. Gershgorin-type open bound (0, 2 Cap/|B|) for growing arrays.
Outcome c6_large_arrays() {
  const auto t0 = std::chrono::steady_clock::now();
  int violations = 0;
  std::string admiss;
  for (int n : {10, 50, 100}) {
    std::vector<Vec3> anchors;
    for (int j = 0; j < n; ++j) anchors.emplace_back(2.0 * j, 0.0, 0.0);
    const GershgorinReport r =
        gershgorin_large_array_check(1.0, anchors, 0.5, n);
    if (!r.all_inside) ++violations;
    for (Eigen::Index j = 0; j < r.eigenvalues.size(); ++j) {
      if (!(r.eigenvalues[j] > 0.0 && r.eigenvalues[j] < 6.0)) ++violations;
    }
    admiss += fmt("%s%.3f", admiss.empty() ? "" : "/", r.admissibility);
  }
  const double elapsed = seconds_since(t0);
  const bool ok = violations == 0 && elapsed < 30.0;
  return {ok, fmt("N in {10,50,100}, eigenvalues in (0,6), %d violations "
                  "(need 0), admissibility %s, %.2fs (need <30s)",
                  violations, admiss.c_str(), elapsed)};
}

// 7. Damping signs and the single-sphere closed form.
Outcome c7_structure() {
  int bad = 0, arrays = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 9;
    const ResonatorArray a = graded_dilute(
        n, 1.03 + 0.007 * (t % 8), 4.0 + t % 3, 0.02 + 0.001 * (t % 5));
    const Spectrum s = compute_spectrum(dilute_gcm(a), kAirWater);
    ++arrays;
    for (int i = 0; i < s.size(); ++i) {
      if (!(s.taus[i] >= 0.0 && s.omegas[i].imag() <= 0.0 &&
            s.omegas[i].real() > 0.0)) {
        ++bad;
      }
    }
  }
  // closed form for one sphere of radius r: Re = v*sqrt(3*delta)/r,
  // Im = -1.5*delta*v^2/(v0*r)
  const double r = 1.0;
  Eigen::MatrixXd C(1, 1);
  C << sphere_capacitance(r);
  const ResonatorArray one = make_array({{Vec3(0, 0, 0), r}}, kAirWater);
  const Spectrum s = compute_spectrum(
      gcm_from_capacitance(C, one, GcmSource::dilute, -1, 0.0), kAirWater);
  const double re_exact =
      kAirWater.v * std::sqrt(3.0 * kAirWater.delta) / r;
  const double im_exact =
      -1.5 * kAirWater.delta * kAirWater.v * kAirWater.v / (kAirWater.v0 * r);
  const double re_err = std::abs(s.omegas[0].real() - re_exact) / re_exact;
  const double im_err =
      std::abs(s.omegas[0].imag() - im_exact) / std::abs(im_exact);
  const bool ok = bad == 0 && re_err < 1e-12 && im_err < 1e-12;
  return {ok, fmt("%d arrays, %d sign violations (need 0); closed-form rel "
                  "err re %.1e, im %.1e (need <1e-12)",
                  arrays, bad, re_err, im_err)};
}

// 8. Device-scale graded array: 22 resonators across 35 mm in water.
Outcome c8_device_scale() {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = 22;
  // growth/spacing chosen so modes localize: nearest-neighbor coupling
  // stays well below the diagonal gaps, giving one dominant resonator per
  // mode
  const double growth = 1.10, spacing = 12.0, total = 0.035;
  const double r0 = graded_first_radius_for_length(n, growth, spacing, total);
  const ResonatorArray a = as_dilute(
      make_graded_array(n, r0, growth, spacing, kAirWater), 1.0);
  const Spectrum s = compute_spectrum(dilute_gcm(a), kAirWater);
  int distinct = 1, in_range = 0, ordered = 0;
  for (int i = 0; i < n; ++i) {
    const double f = s.omegas[i].real() / (2.0 * kPi);
    if (f >= 1e3 && f <= 1e5) ++in_range;
    if (i > 0 && s.omegas[i].real() > s.omegas[i - 1].real()) ++distinct;
    // mode i (ascending frequency) should live on resonator n-i (sizes
    // decrease the frequency)
    Eigen::Index dominant = 0;
    s.vectors.col(i).cwiseAbs().maxCoeff(&dominant);
    if (dominant == n - 1 - i) ++ordered;
  }
  const double f_lo = s.omegas[0].real() / (2.0 * kPi);
  const double f_hi = s.omegas[n - 1].real() / (2.0 * kPi);
  const double elapsed = seconds_since(t0);
  const bool ok = distinct == n && in_range == n && ordered == n &&
                  elapsed < 5.0;
  return {ok, fmt("22 modes, %d distinct, %d in 1-100 kHz, %d size-ordered "
                  "(need 22 each), span %.1f-%.1f kHz, %.2fs (need <5s)",
                  distinct, in_range, ordered, f_lo / 1e3, f_hi / 1e3,
                  elapsed)};
}

// 9. Convolution stability bound and the envelope calculus identity.
Outcome c9_filter_stability() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> re(2.0 * kPi * 50.0,
                                            2.0 * kPi * 400.0);
  std::uniform_real_distribution<double> im(-80.0, -20.0);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  const double fs = 20000.0;
  int pass = 0;
  const int cases = 50;
  for (int t = 0; t < cases; ++t) {
    const std::complex<double> w1(re(rng), im(rng));
    const std::complex<double> w2(re(rng), im(rng));
    const double c = std::min(-w1.imag(), -w2.imag());
    Signal s;
    s.sample_rate = fs;
    s.samples.resize(1500);
    for (double& v : s.samples) v = amp(rng);
    const auto o1 = apply_transform(s, {make_kernel(w1, fs, 1e-7)});
    const auto o2 = apply_transform(s, {make_kernel(w2, fs, 1e-7)});
    double sup = 0.0;
    const std::size_t len = std::max(o1[0].size(), o2[0].size());
    for (std::size_t i = 0; i < len; ++i) {
      const double x = i < o1[0].size() ? o1[0][i] : 0.0;
      const double y = i < o2[0].size() ? o2[0][i] : 0.0;
      sup = std::max(sup, std::abs(x - y));
    }
    if (sup <= stability_bound(w1, w2, c, signal_l1_norm(s))) ++pass;
  }
  // sup over t of t*exp(-c t) is attained at t = 1/c with value 1/(c e)
  const double c = 7.0;
  const double peak = (1.0 / c) * std::exp(-1.0);
  double sampled = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double t = 3.0 / c * i / 100000.0;
    sampled = std::max(sampled, t * std::exp(-c * t));
  }
  const double id_err = std::abs(sampled - 1.0 / (c * std::numbers::e)) /
                        (1.0 / (c * std::numbers::e));
  const double peak_err =
      std::abs(peak - 1.0 / (c * std::numbers::e)) * c * std::numbers::e;
  const double elapsed = seconds_since(t0);
  const bool ok = pass == cases && id_err < 1e-6 && peak_err < 1e-12 &&
                  elapsed < 30.0;
  return {ok, fmt("%d/%d convolutions within bound, envelope identity err "
                  "%.1e (need <1e-6), %.1fs (need <30s)",
                  pass, cases, id_err, elapsed)};
}

// 10. Transform algebra: causality, linearity, shift equivariance, impulse
// response.
Outcome c10_filter_algebra() {
  const double fs = 8000.0;
  const std::vector<Kernel> bank{
      make_kernel({2.0 * kPi * 150.0, -40.0}, fs, 1e-7),
      make_kernel({2.0 * kPi * 600.0, -90.0}, fs, 1e-7)};
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Signal s1, s2;
  s1.sample_rate = s2.sample_rate = fs;
  s1.samples.resize(400);
  s2.samples.resize(400);
  for (double& v : s1.samples) v = u(rng);
  for (double& v : s2.samples) v = u(rng);

  // causality
  bool causal = true;
  Signal delayed;
  delayed.sample_rate = fs;
  delayed.samples.assign(200, 0.0);
  delayed.samples[71] = 1.0;
  for (const auto& ch : apply_transform(delayed, bank)) {
    for (int t = 0; t < 71; ++t) causal = causal && ch[t] == 0.0;
  }

  // linearity
  double lin_err = 0.0;
  Signal mix;
  mix.sample_rate = fs;
  mix.samples.resize(400);
  for (int i = 0; i < 400; ++i) {
    mix.samples[i] = 0.8 * s1.samples[i] - 1.3 * s2.samples[i];
  }
  const auto o1 = apply_transform(s1, bank);
  const auto o2 = apply_transform(s2, bank);
  const auto om = apply_transform(mix, bank);
  for (std::size_t ch = 0; ch < bank.size(); ++ch) {
    for (std::size_t t = 0; t < om[ch].size(); ++t) {
      const double expect = 0.8 * o1[ch][t] - 1.3 * o2[ch][t];
      lin_err = std::max(lin_err, std::abs(om[ch][t] - expect) /
                                      std::max(std::abs(expect), 1e-9));
    }
  }

  // shift equivariance, bit for bit
  bool shift_exact = true;
  const std::size_t shift = 29;
  Signal moved;
  moved.sample_rate = fs;
  moved.samples.assign(s1.samples.size() + shift, 0.0);
  for (std::size_t i = 0; i < s1.samples.size(); ++i) {
    moved.samples[i + shift] = s1.samples[i];
  }
  const auto od = apply_transform(moved, bank);
  for (std::size_t ch = 0; ch < bank.size(); ++ch) {
    for (std::size_t t = 0; t < o1[ch].size(); ++t) {
      shift_exact = shift_exact && od[ch][t + shift] == o1[ch][t];
    }
  }

  // impulse reproduces the kernel / fs
  bool impulse_ok = true;
  Signal impulse;
  impulse.sample_rate = fs;
  impulse.samples.assign(8, 0.0);
  impulse.samples[0] = 1.0;
  const auto oi = apply_transform(impulse, bank);
  for (std::size_t ch = 0; ch < bank.size(); ++ch) {
    for (std::size_t t = 0; t < bank[ch].samples.size(); ++t) {
      const double expect = bank[ch].samples[t] / fs;
      impulse_ok = impulse_ok &&
                   std::abs(oi[ch][t] - expect) <=
                       1e-15 * std::max(1.0, std::abs(expect));
    }
  }

  const bool ok = causal && lin_err < 1e-12 && shift_exact && impulse_ok;
  return {ok, fmt("causal=%d, linearity err %.1e (need <1e-12), "
                  "shift-exact=%d, impulse=%d",
                  causal, lin_err, shift_exact, impulse_ok)};
}

}  // namespace

int main() {
  struct Check {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Check> checks{
      {"bem-sphere-oracle", c1_bem_sphere},
      {"dilute-convergence", c2_dilute_convergence},
      {"wielandt-hoffman", c3_wielandt_hoffman},
      {"removal-interlacing", c4_interlacing},
      {"eigvec-first-order-scaling", c5_eigvec_scaling},
      {"large-array-bound", c6_large_arrays},
      {"damping-and-frequency-structure", c7_structure},
      {"device-scale-band", c8_device_scale},
      {"filter-stability-bound", c9_filter_stability},
      {"filter-algebra", c10_filter_algebra},
  };
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome r{false, ""};
    try {
      r = checks[i].run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s: %s\n", r.ok ? "PASS" : "FAIL", i + 1,
                checks[i].name, r.details.c_str());
    std::fflush(stdout);
    failures += !r.ok;
  }
  if (failures == 0) {
    std::printf("all %zu acceptance checks passed\n", checks.size());
  } else {
    std::printf("%d of %zu acceptance checks failed\n", failures,
                checks.size());
  }
  return failures;
}
