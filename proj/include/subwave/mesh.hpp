// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// Icosphere triangulations of resonator boundaries. The collection keeps
// structure-of-arrays copies of centroids and areas for the assembly kernels.

#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "subwave/geometry.hpp"

namespace subwave {

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;  // outward-oriented
  int owner = 0;                              // resonator index, 0-based
  std::vector<Vec3> centroids;                // cached per triangle
  std::vector<double> areas;
  std::vector<double> diameters;              // longest edge per triangle
  double max_diameter = 0.0;  // longest triangle edge in the mesh

  std::size_t triangle_count() const { return triangles.size(); }
  double total_area() const;
};

// Icosahedron subdivided `refinement` times, vertices projected to the
// sphere; 20*4^refinement triangles.
SurfaceMesh mesh_sphere(const Vec3& center, double radius, int refinement);

struct MeshCollection {
  std::vector<SurfaceMesh> parts;  // one per resonator, array order
  // Flattened per-triangle data across all parts, in part order.
  std::vector<double> cx, cy, cz;  // centroids
  std::vector<double> area;
  std::vector<double> diam;
  std::vector<int> owner;                            // per global triangle
  std::vector<std::pair<std::size_t, std::size_t>> part_range;  // [begin,end)

  std::size_t total_triangles() const { return area.size(); }
};

MeshCollection mesh_array(const ResonatorArray& array, int refinement);

// OBJ-style text export for debugging; one object per resonator.
void write_obj(const MeshCollection& meshes, std::ostream& os);

}  // namespace subwave
