// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

TwoSphereCapacitance two_sphere_capacitance(double r1, double r2, double d,
                                            int terms) {
  // Unit potential on sphere 1, zero on sphere 2. Start with charge r1 at
  // the center of sphere 1; alternately reflect in sphere 2 (charge -q*r2/u
  // at distance d - r2^2/u from center 1, u the distance from the charge to
  // center 2) and in sphere 1. Charges landing inside sphere 1 sum to
  // C11/(4 pi), those inside sphere 2 to C12/(4 pi).
  double sum1 = 0.0, sum2 = 0.0;
  double q = r1;
  double s = 0.0;  // charge position, measured from center 1 along the axis
  sum1 += q;
  for (int k = 0; k < terms; ++k) {
    // Reflect in sphere 2.
    double u = d - s;
    q = -q * r2 / u;
    s = d - r2 * r2 / u;
    sum2 += q;
    // Reflect in sphere 1.
    q = -q * r1 / s;
    s = r1 * r1 / s;
    sum1 += q;
  }
  const double four_pi = 4.0 * std::numbers::pi;
  return {four_pi * sum1, four_pi * sum2};
}

void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev estimate for the i-th root of P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = 0.5 * (1.0 - z);
    x[n - 1 - i] = 0.5 * (1.0 + z);
    w[i] = w[n - 1 - i] = 1.0 / ((1.0 - z * z) * pp * pp);
  }
}

double triangle_potential_subdivision(const Eigen::Vector3d& p,
                                      const Eigen::Vector3d& a,
                                      const Eigen::Vector3d& b,
                                      const Eigen::Vector3d& c, int levels) {
  struct Tri {
    Eigen::Vector3d a, b, c;
  };
  std::vector<Tri> tris{{a, b, c}};
  for (int l = 0; l < levels; ++l) {
    std::vector<Tri> next;
    next.reserve(tris.size() * 4);
    for (const Tri& t : tris) {
      const Eigen::Vector3d ab = 0.5 * (t.a + t.b);
      const Eigen::Vector3d bc = 0.5 * (t.b + t.c);
      const Eigen::Vector3d ca = 0.5 * (t.c + t.a);
      next.push_back({t.a, ab, ca});
      next.push_back({ab, t.b, bc});
      next.push_back({ca, bc, t.c});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  double sum = 0.0;
  for (const Tri& t : tris) {
    const double area = 0.5 * (t.b - t.a).cross(t.c - t.a).norm();
    const Eigen::Vector3d centroid = (t.a + t.b + t.c) / 3.0;
    sum += area / (p - centroid).norm();
  }
  return sum;
}

namespace {

double panel_quadrature(const std::function<double(double)>& f, double lo,
                        double hi, const std::vector<double>& x,
                        const std::vector<double>& w) {
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sum += w[k] * f(lo + x[k] * (hi - lo));
  }
  return sum * (hi - lo);
}

// Adaptive bisection: accept a panel once splitting it stops changing the
// estimate. The integrands below are analytic but can have complex poles
// close to the interval, which plain fixed-order rules resolve poorly.
double adaptive_quadrature(const std::function<double(double)>& f, double lo,
                           double hi, const std::vector<double>& x,
                           const std::vector<double>& w, double whole,
                           double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = panel_quadrature(f, lo, mid, x, w);
  const double right = panel_quadrature(f, mid, hi, x, w);
  if (depth <= 0 || std::abs(left + right - whole) <= tol) {
    return left + right;
  }
  return adaptive_quadrature(f, lo, mid, x, w, left, 0.5 * tol, depth - 1) +
         adaptive_quadrature(f, mid, hi, x, w, right, 0.5 * tol, depth - 1);
}

// integral over triangle (p, A, B) of 1/|y - p|: with y = p + u(A - p) +
// u v (B - A), the Jacobian u|(A-p) x (B-A)| cancels the u in |y - p|, and
// the u integral is 1, leaving a smooth 1D integral in v.
double corner_potential(const Eigen::Vector3d& p, const Eigen::Vector3d& A,
                        const Eigen::Vector3d& B, const std::vector<double>& x,
                        const std::vector<double>& w) {
  const Eigen::Vector3d e0 = A - p;
  const Eigen::Vector3d e1 = B - A;
  const double twice_area = e0.cross(e1).norm();
  const auto f = [&](double t) {
    return twice_area / (e0 + t * e1).norm();
  };
  const double whole = panel_quadrature(f, 0.0, 1.0, x, w);
  return adaptive_quadrature(f, 0.0, 1.0, x, w, whole,
                             1e-15 * std::abs(whole), 48);
}

}  // namespace

double triangle_potential_singular(const Eigen::Vector3d& p,
                                   const Eigen::Vector3d& a,
                                   const Eigen::Vector3d& b,
                                   const Eigen::Vector3d& c, int n) {
  std::vector<double> x, w;
  gauss_legendre01(n, x, w);
  return corner_potential(p, a, b, x, w) + corner_potential(p, b, c, x, w) +
         corner_potential(p, c, a, x, w);
}

std::array<double, 3> sym3_eigenvalues(const Eigen::Matrix3d& m) {
  const double p1 = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
  std::array<double, 3> eig;
  if (p1 == 0.0) {
    eig = {m(0, 0), m(1, 1), m(2, 2)};
  } else {
    const double q = m.trace() / 3.0;
    const double p2 = (m(0, 0) - q) * (m(0, 0) - q) +
                      (m(1, 1) - q) * (m(1, 1) - q) +
                      (m(2, 2) - q) * (m(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Eigen::Matrix3d bmat = (m - q * Eigen::Matrix3d::Identity()) / p;
    double r = bmat.determinant() / 2.0;
    r = std::max(-1.0, std::min(1.0, r));
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 =
        q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    eig = {e3, 3.0 * q - e1 - e3, e1};
  }
  if (eig[0] > eig[1]) std::swap(eig[0], eig[1]);
  if (eig[1] > eig[2]) std::swap(eig[1], eig[2]);
  if (eig[0] > eig[1]) std::swap(eig[0], eig[1]);
  return eig;
}

}  // namespace oracle
