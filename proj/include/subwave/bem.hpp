// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// Static single layer potential on triangulated resonator boundaries:
// piecewise-constant collocation with kernel -1/(4*pi*|x-y|), dense direct
// solve, capacitance extraction, and point evaluation of layer potentials.

#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "subwave/geometry.hpp"
#include "subwave/mesh.hpp"

namespace subwave {

// Exact potential integral of a unit constant density over a planar
// triangle: integral of 1/|p - y| dA(y). Exposed for oracle tests.
double triangle_inv_distance_integral(const Vec3& p, const Vec3& a,
                                      const Vec3& b, const Vec3& c);

// Collocation matrix: entry (p,q) = integral over triangle q of
// -1/(4*pi*|x_p - y|), x_p the centroid of triangle p. Self and near entries
// (centroid distance < 2 triangle diameters) use the analytic planar-triangle
// potential; far entries use one-point centroid quadrature.
Eigen::MatrixXd assemble_single_layer(const MeshCollection& meshes);

struct DensitySet {
  MeshCollection mesh;
  Eigen::MatrixXd psi;  // total_triangles x N, column j solves S psi_j = chi_j
};

// Dense LU with one factorization for all N right-hand sides. Throws
// NumericalError with the reciprocal condition estimate when the
// factorization is unusable.
DensitySet solve_densities(const Eigen::MatrixXd& S, MeshCollection meshes);

struct BemCapacitance {
  Eigen::MatrixXd C;       // symmetrized, units m
  double asymmetry;        // ||C - C^T||_F / ||C||_F before symmetrization
};

BemCapacitance capacitance_matrix_from_densities(const DensitySet& densities);
BemCapacitance capacitance_matrix_bem(const ResonatorArray& array,
                                      int refinement);

// Full pipeline keeping the densities for mode-field evaluation.
struct BemSolution {
  DensitySet densities;
  Eigen::MatrixXd C;
  double asymmetry;
};
BemSolution solve_bem(const ResonatorArray& array, int refinement);

struct PotentialSample {
  double value;
  bool near_surface;  // within one local triangle diameter: inaccurate
};

// Sum_i weights_i * Sum_t area(t) * (-1/(4*pi*|point - centroid_t|)) * psi_i(t).
PotentialSample evaluate_potential(const DensitySet& densities,
                                   const Eigen::VectorXd& weights,
                                   const Vec3& point);

}  // namespace subwave
