// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// Perturbed dilute capacitance matrices with exact and first-order
// corrections, Wielandt-Hoffman and frequency-stability checks, first-order
// eigenvector perturbation, removal/interlacing analysis, large-array
// Gershgorin bounds, and a Monte Carlo driver.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "subwave/capacitance.hpp"
#include "subwave/geometry.hpp"
#include "subwave/spectral.hpp"

namespace subwave {

struct PerturbedGcm {
  GeneralizedCapacitanceMatrix before;
  GeneralizedCapacitanceMatrix after;
  Eigen::MatrixXd correction;   // exact: after - before
  Eigen::MatrixXd first_order;  // first-order prediction of the correction
};

// Exact size scaling: diagonal Cap_i/((1+a_i)^2 |B_i|), off-diagonal scaled
// by ((1+a_i)(1+a_j))^(-1/2). First order: diagonal -2 a_i, off-diagonal
// -(a_i+a_j)/2 times the unperturbed entries.
PerturbedGcm perturbed_gcm_size(const ResonatorArray& array,
                                const std::vector<double>& alphas);

// Diagonal unchanged; off-diagonal recomputed at |z_i + b_i - z_j - b_j|.
PerturbedGcm perturbed_gcm_position(const ResonatorArray& array,
                                    const std::vector<Vec3>& betas);

struct PerturbationReport {
  Eigen::MatrixXd correction;
  Eigen::VectorXd lambda_before, lambda_after;  // paired ascending
  double frobenius = 0.0;                       // ||correction||_F
  double wh_lhs = 0.0;                          // sum (delta lambda)^2
  bool bound_ok = false;
  Eigen::VectorXcd omega_before, omega_after;
};

// Pairs ascending eigenvalues of before/after and checks
// sum (delta lambda)^2 <= ||after - before||_F^2 with floating-point slack.
PerturbationReport wielandt_hoffman_check(const PerturbedGcm& pg,
                                          const Material& material);
PerturbationReport wielandt_hoffman_check(const Eigen::MatrixXd& before,
                                          const Eigen::MatrixXd& after);

struct FrequencyShiftReport {
  Eigen::VectorXd shifts;  // |omega_n(D) - omega_n(D')|
  double scale;            // sqrt(delta*(alpha + epsilon^2))
  Eigen::VectorXd ratios;  // shifts / scale
};

FrequencyShiftReport frequency_shift_bound(const Spectrum& before,
                                           const Spectrum& after,
                                           double alpha_scale, double epsilon);

struct EigvecPerturbation {
  Eigen::MatrixXd approx;   // first-order vectors, not renormalized
  Eigen::MatrixXd exact;    // from decomposing before + correction
  Eigen::VectorXd errors;   // ||approx_n - exact_n||_2
};

inline constexpr double kGapTolFactor = 1e-8;  // of ||gcm||_2

// v_n + sum_{k != n} <G v_n, v_k>/(lambda_n - lambda_k) v_k. Throws
// NumericalError when the minimum eigenvalue gap of `before` is below
// kGapTolFactor*||before||_2 (near-degenerate spectrum).
EigvecPerturbation eigvec_first_order(const Eigen::MatrixXd& before,
                                      const Eigen::MatrixXd& correction);

struct InterlacingViolation {
  int step;      // which removal in the iterative chain, 0-based
  int j;         // eigenvalue index, 0-based
  double lower, mu, upper;
};

struct InterlacingReport {
  std::vector<int> removed;          // 1-based indices into the full matrix
  Eigen::VectorXd lambda_full;       // N values
  Eigen::VectorXd lambda_reduced;    // N-k values
  bool interlaced = false;
  std::vector<InterlacingViolation> violations;
  Eigen::VectorXd omega_real_full, omega_real_reduced;
  std::vector<int> surviving_labels;
};

// Reduced matrix = principal submatrix with `removed` rows/columns deleted.
// Multi-removal is verified iteratively: each single removal must interlace
// the previous spectrum, to 1e-12 relative slack.
InterlacingReport removal_analysis(const GeneralizedCapacitanceMatrix& full,
                                   const std::vector<int>& removed,
                                   const Material& material);

struct GershgorinReport {
  Eigen::VectorXd eigenvalues;
  double bound = 0.0;         // 2*Cap_B/|B|
  bool all_inside = false;    // all eigenvalues in (0, bound)
  double epsilon = 0.0;       // c/N
  double admissibility = 0.0; // eps*(N-1)*(Cap_B/(4*pi))/min|z_i-z_j|, < 1
};

// Builds the identical-resonator dilute matrix at eps = c/N and checks the
// open-interval eigenvalue bound. Throws std::invalid_argument when c
// violates the admissibility inequality (value included in the message).
GershgorinReport gershgorin_large_array_check(double base_radius,
                                              const std::vector<Vec3>& anchors,
                                              double c, int n);

struct MonteCarloRow {
  double sigma;
  int n;               // mode index, 1-based
  double mean_shift;   // |omega_n| shift, rad/s
  double std_shift;
  double wh_pass_rate;      // interlacing pass rate for removal trials
  double vec_err_mean;      // first-order eigenvector error
  double vec_err_max;
};

struct MonteCarloTable {
  PerturbationKind kind;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<MonteCarloRow> rows;  // one per (sigma, n)
  int discarded = 0;                // overlap-producing trials
  int skipped_gap = 0;              // eigenvector stats skipped, small gap
};

// Per-trial seeds derive deterministically from (seed, sigma index, trial).
MonteCarloTable monte_carlo_robustness(const ResonatorArray& array,
                                       PerturbationKind kind,
                                       const std::vector<double>& sigmas,
                                       int trials, std::uint64_t seed);

}  // namespace subwave
