// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include "subwave/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace subwave {
namespace {

struct IcoData {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
};

IcoData icosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  IcoData ico;
  ico.vertices = {
      {-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t},   {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1},   {-t, 0, -1}, {-t, 0, 1},
  };
  ico.triangles = {
      {0, 11, 5}, {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  return ico;
}

int midpoint(int a, int b, IcoData& ico,
             std::map<std::pair<int, int>, int>& cache) {
  const auto key = std::minmax(a, b);
  const auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const Vec3 m = (ico.vertices[a] + ico.vertices[b]).normalized();
  ico.vertices.push_back(m);
  const int idx = static_cast<int>(ico.vertices.size()) - 1;
  cache.emplace(key, idx);
  return idx;
}

}  // namespace

double SurfaceMesh::total_area() const {
  double a = 0.0;
  for (double x : areas) a += x;
  return a;
}

SurfaceMesh mesh_sphere(const Vec3& center, double radius, int refinement) {
  if (refinement < 0) {
    throw std::invalid_argument("mesh_sphere: refinement must be >= 0");
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("mesh_sphere: radius must be > 0");
  }
  IcoData ico = icosahedron();
  for (Vec3& v : ico.vertices) v.normalize();
  for (int level = 0; level < refinement; ++level) {
    std::map<std::pair<int, int>, int> cache;
    std::vector<std::array<int, 3>> next;
    next.reserve(ico.triangles.size() * 4);
    for (const auto& tri : ico.triangles) {
      const int ab = midpoint(tri[0], tri[1], ico, cache);
      const int bc = midpoint(tri[1], tri[2], ico, cache);
      const int ca = midpoint(tri[2], tri[0], ico, cache);
      next.push_back({tri[0], ab, ca});
      next.push_back({tri[1], bc, ab});
      next.push_back({tri[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    ico.triangles = std::move(next);
  }

  SurfaceMesh mesh;
  mesh.vertices.reserve(ico.vertices.size());
  for (const Vec3& v : ico.vertices) mesh.vertices.push_back(center + radius * v);
  mesh.triangles = std::move(ico.triangles);

  mesh.centroids.reserve(mesh.triangles.size());
  mesh.areas.reserve(mesh.triangles.size());
  mesh.diameters.reserve(mesh.triangles.size());
  for (auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    const Vec3 centroid = (a + b + c) / 3.0;
    // Outward orientation: the normal must point away from the center.
    if ((b - a).cross(c - a).dot(centroid - center) < 0.0) {
      std::swap(tri[1], tri[2]);
    }
    mesh.centroids.push_back(centroid);
    const Vec3& a2 = mesh.vertices[tri[0]];
    const Vec3& b2 = mesh.vertices[tri[1]];
    const Vec3& c2 = mesh.vertices[tri[2]];
    mesh.areas.push_back(0.5 * (b2 - a2).cross(c2 - a2).norm());
    const double e0 = (b2 - a2).norm();
    const double e1 = (c2 - b2).norm();
    const double e2 = (a2 - c2).norm();
    const double diam = std::max({e0, e1, e2});
    mesh.diameters.push_back(diam);
    mesh.max_diameter = std::max(mesh.max_diameter, diam);
  }
  return mesh;
}

MeshCollection mesh_array(const ResonatorArray& array, int refinement) {
  MeshCollection collection;
  collection.parts.reserve(array.resonators.size());
  std::size_t begin = 0;
  for (int i = 0; i < array.size(); ++i) {
    SurfaceMesh part = mesh_sphere(array.resonators[i].center,
                                   array.resonators[i].radius, refinement);
    part.owner = i;
    const std::size_t count = part.triangle_count();
    for (std::size_t t = 0; t < count; ++t) {
      collection.cx.push_back(part.centroids[t].x());
      collection.cy.push_back(part.centroids[t].y());
      collection.cz.push_back(part.centroids[t].z());
      collection.area.push_back(part.areas[t]);
      collection.diam.push_back(part.diameters[t]);
      collection.owner.push_back(i);
    }
    collection.part_range.emplace_back(begin, begin + count);
    begin += count;
    collection.parts.push_back(std::move(part));
  }
  return collection;
}

void write_obj(const MeshCollection& meshes, std::ostream& os) {
  std::size_t vertex_offset = 1;  // OBJ indices are 1-based
  for (std::size_t i = 0; i < meshes.parts.size(); ++i) {
    const SurfaceMesh& part = meshes.parts[i];
    os << "o resonator_" << i + 1 << "\n";
    for (const Vec3& v : part.vertices) {
      os << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
    }
    for (const auto& tri : part.triangles) {
      os << "f " << tri[0] + vertex_offset << " " << tri[1] + vertex_offset
         << " " << tri[2] + vertex_offset << "\n";
    }
    vertex_offset += part.vertices.size();
  }
}

}  // namespace subwave
