// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include "subwave/bem.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "subwave/errors.hpp"
#include "subwave/simd/dispatch.hpp"

namespace subwave {
namespace {

constexpr double kInv4Pi = 1.0 / (4.0 * std::numbers::pi);

// Reciprocal condition estimates below this are treated as singular.
constexpr double kRcondFloor = 1e-14;

struct PartBound {
  Vec3 center;
  double radius;  // encloses every vertex of the part
};

PartBound bounding_sphere(const SurfaceMesh& part) {
  Vec3 mean = Vec3::Zero();
  for (const Vec3& v : part.vertices) mean += v;
  mean /= static_cast<double>(part.vertices.size());
  double r = 0.0;
  for (const Vec3& v : part.vertices) r = std::max(r, (v - mean).norm());
  return {mean, r};
}

}  // namespace

double triangle_inv_distance_integral(const Vec3& p, const Vec3& a,
                                      const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 nvec = ab.cross(ac);
  const double two_area = nvec.norm();
  const double scale = std::max({ab.norm(), ac.norm(), (c - b).norm()});
  if (!(two_area > 1e-14 * scale * scale)) {
    throw std::invalid_argument("degenerate triangle in potential integral");
  }
  const Vec3 nh = nvec / two_area;
  const double d = (p - a).dot(nh);
  const double absd = std::abs(d);
  const Vec3 rho = p - d * nh;

  const Vec3 verts[4] = {a, b, c, a};
  double sum = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Vec3& v0 = verts[e];
    const Vec3& v1 = verts[e + 1];
    const Vec3 edge = v1 - v0;
    const double elen = edge.norm();
    const Vec3 sh = edge / elen;
    const Vec3 mh = sh.cross(nh);  // outward in-plane edge normal
    const double t0 = (v0 - rho).dot(mh);
    const double lm = (v0 - rho).dot(sh);
    const double lp = (v1 - rho).dot(sh);
    const double r0sq = t0 * t0 + d * d;
    // On the edge's supporting line but outside the segment (the segment
    // itself is excluded by the collocation layout): the limit is zero.
    if (r0sq < 1e-28 * scale * scale) continue;
    const double rm = std::sqrt(lm * lm + r0sq);
    const double rp = std::sqrt(lp * lp + r0sq);
    double logterm;
    if (lm >= 0.0) {
      logterm = std::log((rp + lp) / (rm + lm));
    } else if (lp <= 0.0) {
      // (R+l) is a cancelling difference for negative l; use R^2-l^2 = R0^2.
      logterm = std::log((rm - lm) / (rp - lp));
    } else {
      logterm = std::log(((rp + lp) * (rm - lm)) / r0sq);
    }
    sum += t0 * logterm;
    if (absd > 0.0) {
      sum -= absd * (std::atan2(t0 * lp, r0sq + absd * rp) -
                     std::atan2(t0 * lm, r0sq + absd * rm));
    }
  }
  return sum;
}

Eigen::MatrixXd assemble_single_layer(const MeshCollection& meshes) {
  const std::size_t n = meshes.total_triangles();
  if (n == 0) throw std::invalid_argument("assemble: empty mesh collection");
  for (std::size_t t = 0; t < n; ++t) {
    if (!(meshes.area[t] > 0.0) || !std::isfinite(meshes.area[t])) {
      throw std::invalid_argument("assemble: degenerate triangle " +
                                  std::to_string(t));
    }
  }

  Eigen::MatrixXd S(n, n);
  // Far-field pass: one-point centroid quadrature for every entry. Column q
  // is contiguous, and the distances are symmetric in (p, q), so filling by
  // source column keeps the kernel writes sequential.
  for (std::size_t q = 0; q < n; ++q) {
    simd::scaled_inv_distance_row(meshes.cx[q], meshes.cy[q], meshes.cz[q],
                                  meshes.cx.data(), meshes.cy.data(),
                                  meshes.cz.data(), n,
                                  -meshes.area[q] * kInv4Pi, S.col(q).data());
  }

  // Analytic overwrite for self and near entries (centroid distance below
  // two source-triangle diameters). Only part pairs that can come that close
  // are scanned.
  const std::size_t nparts = meshes.parts.size();
  std::vector<PartBound> bounds;
  bounds.reserve(nparts);
  for (const SurfaceMesh& part : meshes.parts) {
    bounds.push_back(bounding_sphere(part));
  }
  for (std::size_t j = 0; j < nparts; ++j) {
    const auto [jb, je] = meshes.part_range[j];
    const SurfaceMesh& src = meshes.parts[j];
    const double reach = 2.0 * src.max_diameter;
    for (std::size_t i = 0; i < nparts; ++i) {
      if (i != j) {
        const double gap = (bounds[i].center - bounds[j].center).norm() -
                           bounds[i].radius - bounds[j].radius;
        if (gap > reach) continue;
      }
      const auto [ib, ie] = meshes.part_range[i];
      for (std::size_t q = jb; q < je; ++q) {
        const double limit2 = 4.0 * meshes.diam[q] * meshes.diam[q];
        const auto& tri = src.triangles[q - jb];
        const Vec3& va = src.vertices[tri[0]];
        const Vec3& vb = src.vertices[tri[1]];
        const Vec3& vc = src.vertices[tri[2]];
        for (std::size_t p = ib; p < ie; ++p) {
          const double dx = meshes.cx[p] - meshes.cx[q];
          const double dy = meshes.cy[p] - meshes.cy[q];
          const double dz = meshes.cz[p] - meshes.cz[q];
          const double d2 = dx * dx + dy * dy + dz * dz;
          if (p != q && d2 >= limit2) continue;
          const Vec3 xp(meshes.cx[p], meshes.cy[p], meshes.cz[p]);
          S(p, q) = -kInv4Pi * triangle_inv_distance_integral(xp, va, vb, vc);
        }
      }
    }
  }
  return S;
}

DensitySet solve_densities(const Eigen::MatrixXd& S, MeshCollection meshes) {
  const std::size_t n = meshes.total_triangles();
  if (S.rows() != static_cast<Eigen::Index>(n) || S.cols() != S.rows()) {
    throw std::invalid_argument("solve_densities: matrix/mesh size mismatch");
  }
  const int ni = static_cast<int>(n);
  const int nres = static_cast<int>(meshes.parts.size());

  Eigen::MatrixXd lu = S;
  const double anorm =
      LAPACKE_dlange(LAPACK_COL_MAJOR, '1', ni, ni, lu.data(), ni);
  std::vector<lapack_int> ipiv(n);
  lapack_int info =
      LAPACKE_dgetrf(LAPACK_COL_MAJOR, ni, ni, lu.data(), ni, ipiv.data());
  if (info != 0) {
    throw NumericalError("single layer factorization failed: dgetrf info=" +
                         std::to_string(info));
  }
  double rcond = 0.0;
  info = LAPACKE_dgecon(LAPACK_COL_MAJOR, '1', ni, lu.data(), ni, anorm,
                        &rcond);
  if (info != 0 || rcond < kRcondFloor) {
    std::ostringstream msg;
    msg << "single layer system ill-conditioned: rcond estimate " << rcond;
    throw NumericalError(msg.str());
  }

  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(n, nres);
  for (int j = 0; j < nres; ++j) {
    const auto [b, e] = meshes.part_range[j];
    for (std::size_t t = b; t < e; ++t) psi(t, j) = 1.0;
  }
  info = LAPACKE_dgetrs(LAPACK_COL_MAJOR, 'N', ni, nres, lu.data(), ni,
                        ipiv.data(), psi.data(), ni);
  if (info != 0) {
    throw NumericalError("single layer solve failed: dgetrs info=" +
                         std::to_string(info));
  }
  return DensitySet{std::move(meshes), std::move(psi)};
}

BemCapacitance capacitance_matrix_from_densities(const DensitySet& densities) {
  const MeshCollection& mesh = densities.mesh;
  const int nres = static_cast<int>(mesh.parts.size());
  Eigen::MatrixXd raw(nres, nres);
  for (int i = 0; i < nres; ++i) {
    const auto [b, e] = mesh.part_range[i];
    for (int j = 0; j < nres; ++j) {
      double acc = 0.0;
      for (std::size_t t = b; t < e; ++t) {
        acc += mesh.area[t] * densities.psi(t, j);
      }
      raw(i, j) = -acc;
    }
  }
  const double denom = raw.norm();
  BemCapacitance result;
  result.asymmetry = denom > 0.0 ? (raw - raw.transpose()).norm() / denom : 0.0;
  result.C = 0.5 * (raw + raw.transpose());
  return result;
}

BemSolution solve_bem(const ResonatorArray& array, int refinement) {
  MeshCollection meshes = mesh_array(array, refinement);
  const Eigen::MatrixXd S = assemble_single_layer(meshes);
  DensitySet densities = solve_densities(S, std::move(meshes));
  BemCapacitance cap = capacitance_matrix_from_densities(densities);
  return BemSolution{std::move(densities), std::move(cap.C), cap.asymmetry};
}

BemCapacitance capacitance_matrix_bem(const ResonatorArray& array,
                                      int refinement) {
  BemSolution solution = solve_bem(array, refinement);
  return BemCapacitance{std::move(solution.C), solution.asymmetry};
}

PotentialSample evaluate_potential(const DensitySet& densities,
                                   const Eigen::VectorXd& weights,
                                   const Vec3& point) {
  const MeshCollection& mesh = densities.mesh;
  const std::size_t n = mesh.total_triangles();
  if (weights.size() != static_cast<Eigen::Index>(mesh.parts.size())) {
    throw std::invalid_argument("evaluate_potential: weights length != N");
  }
  const Eigen::VectorXd combined = densities.psi * weights;
  Eigen::VectorXd w(n);
  for (std::size_t t = 0; t < n; ++t) w[t] = mesh.area[t] * combined[t];

  const double sum = simd::weighted_inv_distance_sum(
      point.x(), point.y(), point.z(), mesh.cx.data(), mesh.cy.data(),
      mesh.cz.data(), w.data(), n);

  bool near = false;
  for (std::size_t t = 0; t < n; ++t) {
    const double dx = point.x() - mesh.cx[t];
    const double dy = point.y() - mesh.cy[t];
    const double dz = point.z() - mesh.cz[t];
    if (dx * dx + dy * dy + dz * dz < mesh.diam[t] * mesh.diam[t]) {
      near = true;
      break;
    }
  }
  return PotentialSample{-kInv4Pi * sum, near};
}

}  // namespace subwave
