// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include "subwave/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "subwave/errors.hpp"

namespace subwave {
namespace {

// Largest-magnitude component of each column positive; ties break to the
// lowest index. Keeps CSV output and perturbation pairing reproducible.
void apply_sign_convention(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index pick = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double mag = std::abs(vectors(r, c));
      if (mag > best) {
        best = mag;
        pick = r;
      }
    }
    if (vectors(pick, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::MatrixXd> eigendecompose_sym(
    const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("eigendecompose: matrix must be square");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigendecomposition failed to converge");
  }
  Eigen::VectorXd lambdas = solver.eigenvalues();
  Eigen::MatrixXd vectors = solver.eigenvectors();
  apply_sign_convention(vectors);
  return {std::move(lambdas), std::move(vectors)};
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> eigendecompose(
    const GeneralizedCapacitanceMatrix& gcm) {
  return eigendecompose_sym(gcm.values);
}

Spectrum resonant_frequencies(const Eigen::VectorXd& lambdas,
                              const Eigen::MatrixXd& vectors,
                              const Eigen::MatrixXd& cap,
                              const Eigen::VectorXd& vol_scaling,
                              const Material& material,
                              const std::vector<int>& labels) {
  validate_material(material);
  const int n = static_cast<int>(lambdas.size());
  if (vectors.rows() != n || vectors.cols() != n) {
    throw std::invalid_argument("resonant_frequencies: eigenvector shape");
  }
  for (int i = 0; i < n; ++i) {
    if (!(lambdas[i] > 0.0)) {
      throw NumericalError(
          "resonant_frequencies: nonphysical capacitance eigenvalue " +
          std::to_string(lambdas[i]));
    }
  }

  Spectrum s;
  s.lambdas = lambdas;
  s.vectors = vectors;
  s.material = material;
  s.labels = labels;
  s.vol_scaling = vol_scaling;

  // The interaction matrix is w w^T, so the quadratic form is (w . v)^2;
  // squaring keeps tau >= 0 even when the exact value is zero.
  const Eigen::VectorXd w =
      vol_scaling.asDiagonal() * (cap * Eigen::VectorXd::Ones(n));
  const double tau_factor =
      material.v * material.v / (8.0 * std::numbers::pi * material.v0);
  s.taus.resize(n);
  s.omegas.resize(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd vn = vectors.col(i);
    const double proj = w.dot(vn);
    s.taus[i] = tau_factor * proj * proj / vn.squaredNorm();
    const double re =
        std::sqrt(material.delta * material.v * material.v * lambdas[i]);
    s.omegas[i] = std::complex<double>(re, -material.delta * s.taus[i]);
  }

  s.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < n; ++i) {
    s.min_gap = std::min(s.min_gap, lambdas[i + 1] - lambdas[i]);
  }
  return s;
}

Spectrum compute_spectrum(const GeneralizedCapacitanceMatrix& gcm,
                          const Material& material) {
  auto [lambdas, vectors] = eigendecompose(gcm);
  return resonant_frequencies(lambdas, vectors, gcm.cap, gcm.vol_scaling,
                              material, gcm.labels);
}

Eigen::VectorXd mode_weights(const Spectrum& spectrum, int n) {
  if (n < 1 || n > spectrum.size()) {
    throw std::invalid_argument("mode_weights: index out of range");
  }
  return spectrum.vol_scaling.asDiagonal() * spectrum.vectors.col(n - 1);
}

}  // namespace subwave
