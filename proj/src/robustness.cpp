// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include "subwave/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "subwave/errors.hpp"

namespace subwave {
namespace {

// Absolute plus relative floating-point slack for the eigenvalue-sum bound.
// The absolute term alone is meaningless at device scale where the matrix
// entries are ~1e8 per square meter.
bool within_slack(double lhs, double rhs_sq) {
  return lhs <= rhs_sq + 1e-12 + 1e-12 * rhs_sq;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 1));
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m,
                          const std::vector<int>& keep) {
  const int k = static_cast<int>(keep.size());
  Eigen::MatrixXd out(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) out(i, j) = m(keep[i], keep[j]);
  }
  return out;
}

struct RunningStats {
  double sum = 0.0;
  double sum_sq = 0.0;
  double max = 0.0;
  int count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    max = std::max(max, x);
    ++count;
  }
  double mean() const { return count > 0 ? sum / count : 0.0; }
  double stddev() const {
    if (count < 2) return 0.0;
    const double var = (sum_sq - sum * sum / count) / (count - 1);
    return var > 0.0 ? std::sqrt(var) : 0.0;
  }
};

}  // namespace

PerturbedGcm perturbed_gcm_size(const ResonatorArray& array,
                                const std::vector<double>& alphas) {
  if (!array.is_dilute()) {
    throw std::invalid_argument("perturbed_gcm_size: array must be dilute");
  }
  PerturbationSpec spec;
  spec.kind = PerturbationKind::size;
  spec.alphas = alphas;

  PerturbedGcm pg;
  pg.before = dilute_gcm(array);
  // The dilute formula applied to the scaled radii reproduces the exact
  // perturbed matrix: Cap scales by (1+a), |B| by (1+a)^3, so the diagonal
  // picks up (1+a)^-2 and the off-diagonal ((1+a_i)(1+a_j))^-1/2.
  pg.after = dilute_gcm(apply_perturbation(array, spec));
  pg.correction = pg.after.values - pg.before.values;

  const int n = array.size();
  pg.first_order.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double factor =
          i == j ? -2.0 * alphas[i] : -0.5 * (alphas[i] + alphas[j]);
      pg.first_order(i, j) = factor * pg.before.values(i, j);
    }
  }
  return pg;
}

PerturbedGcm perturbed_gcm_position(const ResonatorArray& array,
                                    const std::vector<Vec3>& betas) {
  if (!array.is_dilute()) {
    throw std::invalid_argument(
        "perturbed_gcm_position: array must be dilute");
  }
  PerturbationSpec spec;
  spec.kind = PerturbationKind::position;
  spec.betas = betas;

  PerturbedGcm pg;
  pg.before = dilute_gcm(array);
  pg.after = dilute_gcm(apply_perturbation(array, spec));
  pg.correction = pg.after.values - pg.before.values;

  const int n = array.size();
  const double eps = *array.epsilon;
  const std::vector<Vec3>& z = *array.reference_centers;
  pg.first_order = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double capi = sphere_capacitance(array.resonators[i].radius);
    const double voli = sphere_volume(array.resonators[i].radius);
    for (int j = i + 1; j < n; ++j) {
      const double capj = sphere_capacitance(array.resonators[j].radius);
      const double volj = sphere_volume(array.resonators[j].radius);
      const Vec3 dz = z[i] - z[j];
      const double dist = dz.norm();
      const double value = eps * (betas[i] - betas[j]).dot(dz) * capi * capj /
                           (4.0 * std::numbers::pi * dist * dist * dist *
                            std::sqrt(voli * volj));
      pg.first_order(i, j) = value;
      pg.first_order(j, i) = value;
    }
  }
  return pg;
}

PerturbationReport wielandt_hoffman_check(const Eigen::MatrixXd& before,
                                          const Eigen::MatrixXd& after) {
  if (before.rows() != after.rows() || before.cols() != after.cols() ||
      before.rows() != before.cols()) {
    throw std::invalid_argument("wielandt_hoffman_check: size mismatch");
  }
  PerturbationReport report;
  report.correction = after - before;
  report.lambda_before = eigendecompose_sym(before).first;
  report.lambda_after = eigendecompose_sym(after).first;
  report.frobenius = report.correction.norm();
  report.wh_lhs =
      (report.lambda_after - report.lambda_before).squaredNorm();
  report.bound_ok =
      within_slack(report.wh_lhs, report.frobenius * report.frobenius);
  return report;
}

PerturbationReport wielandt_hoffman_check(const PerturbedGcm& pg,
                                          const Material& material) {
  PerturbationReport report =
      wielandt_hoffman_check(pg.before.values, pg.after.values);
  const Spectrum sb = compute_spectrum(pg.before, material);
  const Spectrum sa = compute_spectrum(pg.after, material);
  report.omega_before = sb.omegas;
  report.omega_after = sa.omegas;
  return report;
}

FrequencyShiftReport frequency_shift_bound(const Spectrum& before,
                                           const Spectrum& after,
                                           double alpha_scale,
                                           double epsilon) {
  if (before.size() != after.size()) {
    throw std::invalid_argument("frequency_shift_bound: size mismatch");
  }
  if (before.material.delta != after.material.delta ||
      before.material.v != after.material.v ||
      before.material.v0 != after.material.v0) {
    throw std::invalid_argument("frequency_shift_bound: materials differ");
  }
  FrequencyShiftReport report;
  const int n = before.size();
  report.shifts.resize(n);
  for (int i = 0; i < n; ++i) {
    report.shifts[i] = std::abs(before.omegas[i] - after.omegas[i]);
  }
  report.scale = std::sqrt(before.material.delta *
                           (alpha_scale + epsilon * epsilon));
  report.ratios = report.scale > 0.0
                      ? Eigen::VectorXd(report.shifts / report.scale)
                      : Eigen::VectorXd(Eigen::VectorXd::Zero(n));
  return report;
}

EigvecPerturbation eigvec_first_order(const Eigen::MatrixXd& before,
                                      const Eigen::MatrixXd& correction) {
  if (before.rows() != before.cols() ||
      correction.rows() != before.rows() ||
      correction.cols() != before.cols()) {
    throw std::invalid_argument("eigvec_first_order: size mismatch");
  }
  const Eigen::MatrixXd b = 0.5 * (before + before.transpose());
  const Eigen::MatrixXd g = 0.5 * (correction + correction.transpose());
  const auto [lambdas, vectors] = eigendecompose_sym(b);

  const int n = static_cast<int>(lambdas.size());
  const double norm2 =
      std::max(std::abs(lambdas[0]), std::abs(lambdas[n - 1]));
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < n; ++i) {
    min_gap = std::min(min_gap, lambdas[i + 1] - lambdas[i]);
  }
  if (n > 1 && min_gap < kGapTolFactor * norm2) {
    std::ostringstream msg;
    msg << "near-degenerate spectrum: eigenvalue gap " << min_gap
        << " below tolerance " << kGapTolFactor * norm2;
    throw NumericalError(msg.str());
  }

  // coupling(k, n) = <v_k, G v_n> / (lambda_n - lambda_k), zero diagonal.
  const Eigen::MatrixXd w = vectors.transpose() * g * vectors;
  Eigen::MatrixXd coupling = Eigen::MatrixXd::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    for (int k = 0; k < n; ++k) {
      if (k == c) continue;
      coupling(k, c) = w(k, c) / (lambdas[c] - lambdas[k]);
    }
  }

  EigvecPerturbation result;
  result.approx =
      vectors * (Eigen::MatrixXd::Identity(n, n) + coupling);
  result.exact = eigendecompose_sym(b + g).second;
  result.errors.resize(n);
  for (int c = 0; c < n; ++c) {
    if (result.approx.col(c).dot(result.exact.col(c)) < 0.0) {
      result.exact.col(c) = -result.exact.col(c);
    }
    result.errors[c] = (result.approx.col(c) - result.exact.col(c)).norm();
  }
  return result;
}

InterlacingReport removal_analysis(const GeneralizedCapacitanceMatrix& full,
                                   const std::vector<int>& removed,
                                   const Material& material) {
  const int n = static_cast<int>(full.values.rows());
  if (removed.empty()) {
    throw std::invalid_argument("removal_analysis: index set is empty");
  }
  std::vector<int> sorted = removed;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("removal_analysis: duplicate index");
  }
  if (sorted.front() < 1 || sorted.back() > n) {
    throw std::invalid_argument("removal_analysis: index out of range 1..N");
  }
  if (static_cast<int>(sorted.size()) >= n) {
    throw std::invalid_argument("removal_analysis: cannot remove all");
  }

  InterlacingReport report;
  report.removed = sorted;
  report.lambda_full = eigendecompose_sym(full.values).first;
  const double slack = 1e-12 * std::max(std::abs(report.lambda_full[0]),
                                        std::abs(report.lambda_full[n - 1]));

  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;
  Eigen::VectorXd prev = report.lambda_full;
  Eigen::VectorXd curr = prev;
  int step = 0;
  for (int r : sorted) {
    alive.erase(std::find(alive.begin(), alive.end(), r - 1));
    curr = eigendecompose_sym(submatrix(full.values, alive)).first;
    // Cauchy interlacing against the previous spectrum in the chain.
    for (int j = 0; j < curr.size(); ++j) {
      const double lower = prev[j];
      const double upper = prev[j + 1];
      if (curr[j] < lower - slack || curr[j] > upper + slack) {
        report.violations.push_back({step, j, lower, curr[j], upper});
      }
    }
    prev = curr;
    ++step;
  }
  report.lambda_reduced = curr;
  report.interlaced = report.violations.empty();

  for (int i : alive) report.surviving_labels.push_back(full.labels[i]);

  // Real frequency parts for both structures. The reduced companions are the
  // matching principal submatrix of C and subvector of V.
  const Spectrum sfull = compute_spectrum(full, material);
  report.omega_real_full = sfull.omegas.real();

  GeneralizedCapacitanceMatrix reduced;
  reduced.source = full.source;
  reduced.refinement = full.refinement;
  reduced.epsilon = full.epsilon;
  reduced.labels = report.surviving_labels;
  reduced.values = submatrix(full.values, alive);
  reduced.cap = submatrix(full.cap, alive);
  reduced.vol_scaling.resize(static_cast<int>(alive.size()));
  for (std::size_t i = 0; i < alive.size(); ++i) {
    reduced.vol_scaling[static_cast<int>(i)] = full.vol_scaling[alive[i]];
  }
  const Spectrum sred = compute_spectrum(reduced, material);
  report.omega_real_reduced = sred.omegas.real();
  return report;
}

GershgorinReport gershgorin_large_array_check(double base_radius,
                                              const std::vector<Vec3>& anchors,
                                              double c, int n) {
  if (n != static_cast<int>(anchors.size()) || n < 1) {
    throw std::invalid_argument(
        "gershgorin check: N must match the anchor count");
  }
  if (!(base_radius > 0.0) || !(c > 0.0)) {
    throw std::invalid_argument(
        "gershgorin check: base_radius and c must be > 0");
  }
  const double cap = sphere_capacitance(base_radius);
  const double vol = sphere_volume(base_radius);
  const double eps = c / n;

  double min_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      min_dist = std::min(min_dist, (anchors[i] - anchors[j]).norm());
    }
  }

  GershgorinReport report;
  report.bound = 2.0 * cap / vol;
  report.epsilon = eps;
  report.admissibility =
      n > 1 ? eps * (n - 1) * (cap / (4.0 * std::numbers::pi)) / min_dist
            : 0.0;
  if (report.admissibility >= 1.0) {
    std::ostringstream msg;
    msg << "gershgorin check: c violates admissibility, "
        << "eps*(N-1)*Cap/(4*pi*min|z_i-z_j|) = " << report.admissibility
        << " >= 1";
    throw std::invalid_argument(msg.str());
  }
  if (n > 1 && !(min_dist / eps > 2.0 * base_radius)) {
    throw std::invalid_argument(
        "gershgorin check: spheres overlap at this epsilon");
  }

  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = cap / vol;
    for (int j = i + 1; j < n; ++j) {
      const double dist = (anchors[i] - anchors[j]).norm();
      const double off =
          -eps * cap * cap / (4.0 * std::numbers::pi * vol * dist);
      m(i, j) = off;
      m(j, i) = off;
    }
  }
  report.eigenvalues = eigendecompose_sym(m).first;
  report.all_inside = report.eigenvalues[0] > 0.0 &&
                      report.eigenvalues[n - 1] < report.bound;
  return report;
}

MonteCarloTable monte_carlo_robustness(const ResonatorArray& array,
                                       PerturbationKind kind,
                                       const std::vector<double>& sigmas,
                                       int trials, std::uint64_t seed) {
  if (trials < 1) {
    throw std::invalid_argument("monte carlo: trials must be >= 1");
  }
  if (sigmas.empty()) {
    throw std::invalid_argument("monte carlo: need at least one sigma");
  }
  if (!array.is_dilute()) {
    throw std::invalid_argument("monte carlo: array must be dilute");
  }
  const int n = array.size();
  const GeneralizedCapacitanceMatrix gcm_before = dilute_gcm(array);

  MonteCarloTable table;
  table.kind = kind;
  table.trials = trials;
  table.seed = seed;

  const int modes = kind == PerturbationKind::removal ? n - 1 : n;
  for (std::size_t si = 0; si < sigmas.size(); ++si) {
    std::vector<RunningStats> shift(modes);
    std::vector<RunningStats> vec_err(modes);
    int passes = 0;
    int valid = 0;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t ts =
          derive_seed(seed, si * static_cast<std::size_t>(trials) + t);
      const PerturbationSpec spec =
          random_perturbation(kind, n, sigmas[si], ts);
      if (kind == PerturbationKind::removal) {
        const InterlacingReport rep =
            removal_analysis(gcm_before, spec.removed, array.material);
        ++valid;
        if (rep.interlaced) ++passes;
        for (int m = 0; m < modes; ++m) {
          shift[m].add(std::abs(rep.omega_real_full[m] -
                                rep.omega_real_reduced[m]));
        }
        continue;
      }
      PerturbedGcm pg;
      try {
        pg = kind == PerturbationKind::size
                 ? perturbed_gcm_size(array, spec.alphas)
                 : perturbed_gcm_position(array, spec.betas);
      } catch (const std::invalid_argument&) {
        ++table.discarded;
        continue;
      }
      ++valid;
      const PerturbationReport rep =
          wielandt_hoffman_check(pg, array.material);
      if (rep.bound_ok) ++passes;
      for (int m = 0; m < modes; ++m) {
        shift[m].add(std::abs(rep.omega_after[m] - rep.omega_before[m]));
      }
      try {
        const EigvecPerturbation ev =
            eigvec_first_order(pg.before.values, pg.correction);
        for (int m = 0; m < modes; ++m) vec_err[m].add(ev.errors[m]);
      } catch (const NumericalError&) {
        ++table.skipped_gap;
      }
    }
    for (int m = 0; m < modes; ++m) {
      MonteCarloRow row;
      row.sigma = sigmas[si];
      row.n = m + 1;
      row.mean_shift = shift[m].mean();
      row.std_shift = shift[m].stddev();
      row.wh_pass_rate = valid > 0 ? static_cast<double>(passes) / valid : 0.0;
      row.vec_err_mean = vec_err[m].mean();
      row.vec_err_max = vec_err[m].max;
      table.rows.push_back(row);
    }
  }
  return table;
}

}  // namespace subwave
