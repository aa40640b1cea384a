// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// Eigendecomposition of the generalized capacitance matrix and conversion to
// complex subwavelength resonant frequencies omega_n = sqrt(delta v^2
// lambda_n) - i delta tau_n.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "subwave/capacitance.hpp"
#include "subwave/geometry.hpp"

namespace subwave {

struct Spectrum {
  Eigen::VectorXd lambdas;      // ascending, 1/m^2
  Eigen::MatrixXd vectors;      // orthonormal columns, sign convention
  Eigen::VectorXd taus;         // 1/s, all >= 0
  Eigen::VectorXcd omegas;      // rad/s
  Material material;
  double min_gap = 0.0;         // min adjacent eigenvalue gap
  std::vector<int> labels;
  Eigen::VectorXd vol_scaling;  // V diagonal, for mode weights

  int size() const { return static_cast<int>(lambdas.size()); }
};

// Ascending eigenvalues, orthonormal eigenvectors with a deterministic sign:
// the largest-magnitude component of each vector is positive, ties broken by
// lowest index.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> eigendecompose_sym(
    const Eigen::MatrixXd& m);

std::pair<Eigen::VectorXd, Eigen::MatrixXd> eigendecompose(
    const GeneralizedCapacitanceMatrix& gcm);

// Re(omega_n) = sqrt(delta*v^2*lambda_n);
// tau_n = v^2/(8*pi*v0) * (v_n^T (VCJCV) v_n)/||v_n||^2.
// Throws NumericalError when any lambda_n <= 0.
Spectrum resonant_frequencies(const Eigen::VectorXd& lambdas,
                              const Eigen::MatrixXd& vectors,
                              const Eigen::MatrixXd& cap,
                              const Eigen::VectorXd& vol_scaling,
                              const Material& material,
                              const std::vector<int>& labels);

Spectrum compute_spectrum(const GeneralizedCapacitanceMatrix& gcm,
                          const Material& material);

// V*v_n, the weights multiplying the per-resonator single layer potentials
// in the leading-order mode; n is 1-based.
Eigen::VectorXd mode_weights(const Spectrum& spectrum, int n);

}  // namespace subwave
