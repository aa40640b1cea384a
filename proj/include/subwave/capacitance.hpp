// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// Generalized capacitance matrix VCV, from the boundary-integral capacitance
// matrix or from the closed-form dilute approximation.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "subwave/geometry.hpp"

namespace subwave {

enum class GcmSource { bem, dilute };

struct GeneralizedCapacitanceMatrix {
  Eigen::MatrixXd values;  // symmetric, 1/m^2
  GcmSource source;
  int refinement = -1;     // set for bem
  double epsilon = 0.0;    // set for dilute
  std::vector<int> labels;
  // Companions kept because the damping coefficients need C and V
  // separately, not just their product.
  Eigen::MatrixXd cap;          // C, m
  Eigen::VectorXd vol_scaling;  // diagonal of V, m^(-3/2)
  double bem_asymmetry = 0.0;   // diagnostic, bem source only
};

double sphere_capacitance(double radius);  // 4*pi*r
double sphere_volume(double radius);       // (4/3)*pi*r^3

// Requires epsilon and reference centers on the array. Diagonal
// Cap_i/|B_i|; off-diagonal -eps*Cap_i*Cap_j/(4*pi*|z_i-z_j|*sqrt(|B_i||B_j|)).
GeneralizedCapacitanceMatrix dilute_gcm(const ResonatorArray& array);

GeneralizedCapacitanceMatrix gcm_from_bem(const ResonatorArray& array,
                                          int refinement);

// Wraps an externally computed capacitance matrix (used by removal analysis
// on reduced geometry and by tests).
GeneralizedCapacitanceMatrix gcm_from_capacitance(
    const Eigen::MatrixXd& C, const ResonatorArray& array, GcmSource source,
    int refinement, double bem_asymmetry);

// V*C*J*C*V with J the all-ones matrix; rank <= 1, PSD.
Eigen::MatrixXd ones_interaction(const Eigen::MatrixXd& C,
                                 const Eigen::VectorXd& vol_scaling);

}  // namespace subwave
