// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include "subwave/capacitance.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "subwave/bem.hpp"
#include "subwave/errors.hpp"

namespace subwave {

double sphere_capacitance(double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("sphere_capacitance: radius must be > 0");
  }
  return 4.0 * std::numbers::pi * radius;
}

double sphere_volume(double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("sphere_volume: radius must be > 0");
  }
  return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
}

GeneralizedCapacitanceMatrix dilute_gcm(const ResonatorArray& array) {
  if (!array.is_dilute()) {
    throw std::invalid_argument(
        "dilute_gcm: array carries no epsilon/reference centers");
  }
  const int n = array.size();
  const double eps = *array.epsilon;
  const std::vector<Vec3>& z = *array.reference_centers;

  Eigen::VectorXd cap(n), vol(n);
  for (int i = 0; i < n; ++i) {
    cap[i] = sphere_capacitance(array.resonators[i].radius);
    vol[i] = sphere_volume(array.resonators[i].radius);
  }

  Eigen::MatrixXd C(n, n);
  for (int i = 0; i < n; ++i) {
    C(i, i) = cap[i];
    for (int j = i + 1; j < n; ++j) {
      const double dist = (z[i] - z[j]).norm();
      if (!(dist > 0.0)) {
        throw std::invalid_argument("dilute_gcm: coincident anchors " +
                                    std::to_string(i + 1) + " and " +
                                    std::to_string(j + 1));
      }
      const double off =
          -eps * cap[i] * cap[j] / (4.0 * std::numbers::pi * dist);
      C(i, j) = off;
      C(j, i) = off;
    }
  }

  GeneralizedCapacitanceMatrix gcm;
  gcm.source = GcmSource::dilute;
  gcm.epsilon = eps;
  gcm.labels = array.labels;
  gcm.cap = C;
  gcm.vol_scaling = vol.array().rsqrt().matrix();
  gcm.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gcm.values(i, j) = gcm.vol_scaling[i] * C(i, j) * gcm.vol_scaling[j];
    }
  }
  return gcm;
}

GeneralizedCapacitanceMatrix gcm_from_capacitance(
    const Eigen::MatrixXd& C, const ResonatorArray& array, GcmSource source,
    int refinement, double bem_asymmetry) {
  const int n = array.size();
  if (C.rows() != n || C.cols() != n) {
    throw std::invalid_argument("gcm_from_capacitance: size mismatch");
  }
  GeneralizedCapacitanceMatrix gcm;
  gcm.source = source;
  gcm.refinement = refinement;
  if (array.epsilon) gcm.epsilon = *array.epsilon;
  gcm.labels = array.labels;
  gcm.cap = 0.5 * (C + C.transpose());
  gcm.bem_asymmetry = bem_asymmetry;
  Eigen::VectorXd vol(n);
  for (int i = 0; i < n; ++i) {
    vol[i] = sphere_volume(array.resonators[i].radius);
  }
  gcm.vol_scaling = vol.array().rsqrt().matrix();
  gcm.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gcm.values(i, j) =
          gcm.vol_scaling[i] * gcm.cap(i, j) * gcm.vol_scaling[j];
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!(gcm.values(i, i) > 0.0)) {
      throw NumericalError(
          "generalized capacitance matrix: nonpositive diagonal at " +
          std::to_string(i + 1));
    }
  }
  return gcm;
}

GeneralizedCapacitanceMatrix gcm_from_bem(const ResonatorArray& array,
                                          int refinement) {
  const BemCapacitance bem = capacitance_matrix_bem(array, refinement);
  return gcm_from_capacitance(bem.C, array, GcmSource::bem, refinement,
                              bem.asymmetry);
}

Eigen::MatrixXd ones_interaction(const Eigen::MatrixXd& C,
                                 const Eigen::VectorXd& vol_scaling) {
  const int n = static_cast<int>(C.rows());
  if (C.cols() != n || vol_scaling.size() != n) {
    throw std::invalid_argument("ones_interaction: size mismatch");
  }
  // VCJCV = w w^T with w = V C 1; J is the all-ones matrix.
  const Eigen::VectorXd w =
      vol_scaling.asDiagonal() * (C * Eigen::VectorXd::Ones(n));
  return w * w.transpose();
}

}  // namespace subwave
