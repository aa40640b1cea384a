// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// Resonator array geometry: explicit sphere lists, graded rows, dilute
// families center_i = z_i / epsilon, and perturbed/reduced variants.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

namespace subwave {

using Vec3 = Eigen::Vector3d;

struct Material {
  double delta;  // density contrast rho/rho0, dimensionless
  double v;      // interior wave speed, m/s
  double v0;     // exterior wave speed, m/s
};

void validate_material(const Material& m);

struct Sphere {
  Vec3 center;    // m
  double radius;  // m
};

// Immutable after construction. When epsilon is set, center_i = z_i/epsilon
// holds exactly for the recorded reference centers z_i. Labels are original
// 1-based indices and survive removal.
struct ResonatorArray {
  std::vector<Sphere> resonators;
  std::optional<double> epsilon;
  std::optional<std::vector<Vec3>> reference_centers;
  Material material;
  std::vector<int> labels;

  int size() const { return static_cast<int>(resonators.size()); }
  bool is_dilute() const {
    return epsilon.has_value() && reference_centers.has_value();
  }
};

enum class PerturbationKind { size, position, removal };

// Exactly one payload is populated, matching kind.
struct PerturbationSpec {
  PerturbationKind kind;
  std::vector<double> alphas;  // size: radius_i *= 1 + alpha_i, alpha_i > -1
  std::vector<Vec3> betas;     // position: z_i += beta_i (units of z)
  std::vector<int> removed;    // removal: labels to delete, 1-based
};

ResonatorArray make_array(std::vector<Sphere> spheres, const Material& m);

// n collinear spheres on the x axis, radius r_i = first_radius*growth^(i-1),
// gap between consecutive spheres = spacing*r_i (i the left sphere).
ResonatorArray make_graded_array(int n, double first_radius, double growth,
                                 double spacing, const Material& m);

ResonatorArray make_dilute_array(const std::vector<Vec3>& anchors,
                                 const std::vector<double>& base_radii,
                                 double epsilon, const Material& m);

// Reinterprets an existing array as the dilute family member with the given
// epsilon: records z_i = epsilon*center_i so that center_i = z_i/epsilon.
ResonatorArray as_dilute(const ResonatorArray& array, double epsilon);

ResonatorArray apply_perturbation(const ResonatorArray& array,
                                  const PerturbationSpec& spec);

// Gaussian i.i.d. alphas (size) or betas (position, per component), sigma
// standard deviation; removal draws one uniform index in 1..n. Deterministic
// under (kind, n, sigma, seed).
PerturbationSpec random_perturbation(PerturbationKind kind, int n,
                                     double sigma, std::uint64_t seed);

// Throws std::invalid_argument when any two resonators touch or overlap.
void check_disjoint(const std::vector<Sphere>& spheres);

// Solves for the first radius that gives a graded row of total length
// `total_length` (leftmost surface to rightmost surface) with the given
// growth and spacing ratios.
double graded_first_radius_for_length(int n, double growth, double spacing,
                                      double total_length);

}  // namespace subwave
