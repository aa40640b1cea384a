// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference implementations used to validate the library:
// image-charge capacitance series, quadrature for the triangle potential,
// and a closed-form symmetric 3x3 eigensolver. Deliberately share no code
// with the library.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace oracle {

// Capacitance coefficients of two spheres (radii r1, r2, center distance d)
// by the alternating image-charge series. Units: isolated sphere has C=4*pi*r.
struct TwoSphereCapacitance {
  double c11, c12;
};
TwoSphereCapacitance two_sphere_capacitance(double r1, double r2, double d,
                                            int terms = 200);

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w);

// integral of 1/|p - y| over triangle (a,b,c), p off the triangle:
// centroid rule on 4^levels congruent subtriangles.
double triangle_potential_subdivision(const Eigen::Vector3d& p,
                                      const Eigen::Vector3d& a,
                                      const Eigen::Vector3d& b,
                                      const Eigen::Vector3d& c, int levels);

// Same integral with p strictly inside the triangle: split at p into three
// triangles; the radial direction integrates exactly, leaving a smooth 1D
// integral done with n-point Gauss-Legendre.
double triangle_potential_singular(const Eigen::Vector3d& p,
                                   const Eigen::Vector3d& a,
                                   const Eigen::Vector3d& b,
                                   const Eigen::Vector3d& c, int n = 64);

// Ascending eigenvalues of a symmetric 3x3 matrix, trigonometric closed form.
std::array<double, 3> sym3_eigenvalues(const Eigen::Matrix3d& m);

}  // namespace oracle
