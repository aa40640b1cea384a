// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include "subwave/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace subwave {
namespace {

std::vector<int> identity_labels(int n) {
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i + 1;
  return labels;
}

// (0, 1], so log is always finite.
double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
}

// Box-Muller, cosine branch only. std::normal_distribution is
// implementation-defined, which would break the cross-build determinism
// contract on seeds.
double gaussian(std::mt19937_64& rng) {
  const double u1 = uniform_open(rng);
  const double u2 = uniform_open(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

}  // namespace

void validate_material(const Material& m) {
  if (!(m.delta > 0.0) || !(m.v > 0.0) || !(m.v0 > 0.0)) {
    throw std::invalid_argument(
        "material: delta, v, v0 must all be positive");
  }
}

void check_disjoint(const std::vector<Sphere>& spheres) {
  const int n = static_cast<int>(spheres.size());
  for (int i = 0; i < n; ++i) {
    if (!(spheres[i].radius > 0.0)) {
      throw std::invalid_argument("resonator " + std::to_string(i + 1) +
                                  ": radius must be positive");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = (spheres[i].center - spheres[j].center).norm();
      if (!(d > spheres[i].radius + spheres[j].radius)) {
        std::ostringstream msg;
        msg << "resonators " << i + 1 << " and " << j + 1
            << " overlap: center distance " << d << " <= radius sum "
            << spheres[i].radius + spheres[j].radius;
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

ResonatorArray make_array(std::vector<Sphere> spheres, const Material& m) {
  validate_material(m);
  if (spheres.empty()) {
    throw std::invalid_argument("array must contain at least one resonator");
  }
  check_disjoint(spheres);
  ResonatorArray array;
  array.labels = identity_labels(static_cast<int>(spheres.size()));
  array.resonators = std::move(spheres);
  array.material = m;
  return array;
}

ResonatorArray make_graded_array(int n, double first_radius, double growth,
                                 double spacing, const Material& m) {
  if (n < 1) throw std::invalid_argument("graded array: n must be >= 1");
  if (!(first_radius > 0.0)) {
    throw std::invalid_argument("graded array: first_radius must be > 0");
  }
  if (!(growth >= 1.0)) {
    throw std::invalid_argument("graded array: growth must be >= 1");
  }
  if (!(spacing > 0.0)) {
    throw std::invalid_argument("graded array: spacing must be > 0");
  }
  std::vector<Sphere> spheres;
  spheres.reserve(n);
  double r = first_radius;
  double x = 0.0;
  for (int i = 0; i < n; ++i) {
    spheres.push_back({Vec3(x, 0.0, 0.0), r});
    const double next_r = r * growth;
    x += r + spacing * r + next_r;
    r = next_r;
  }
  return make_array(std::move(spheres), m);
}

double graded_first_radius_for_length(int n, double growth, double spacing,
                                      double total_length) {
  if (n < 1 || !(growth >= 1.0) || !(spacing > 0.0) || !(total_length > 0.0)) {
    throw std::invalid_argument("graded length solve: invalid parameters");
  }
  // Length in units of the first radius: 2*sum(g^i) + spacing*sum over gaps.
  double radii_sum = 0.0, gap_sum = 0.0;
  double g = 1.0;
  for (int i = 0; i < n; ++i) {
    radii_sum += g;
    if (i + 1 < n) gap_sum += g;
    g *= growth;
  }
  return total_length / (2.0 * radii_sum + spacing * gap_sum);
}

ResonatorArray make_dilute_array(const std::vector<Vec3>& anchors,
                                 const std::vector<double>& base_radii,
                                 double epsilon, const Material& m) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("dilute array: epsilon must be > 0");
  }
  if (anchors.empty()) {
    throw std::invalid_argument("dilute array: need at least one anchor");
  }
  if (base_radii.size() != anchors.size()) {
    throw std::invalid_argument(
        "dilute array: anchors and base_radii must have equal length");
  }
  std::vector<Sphere> spheres;
  spheres.reserve(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    spheres.push_back({anchors[i] / epsilon, base_radii[i]});
  }
  ResonatorArray array = make_array(std::move(spheres), m);
  array.epsilon = epsilon;
  array.reference_centers = anchors;
  return array;
}

ResonatorArray as_dilute(const ResonatorArray& array, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("as_dilute: epsilon must be > 0");
  }
  ResonatorArray out = array;
  out.epsilon = epsilon;
  std::vector<Vec3> anchors;
  anchors.reserve(array.resonators.size());
  for (const Sphere& s : array.resonators) anchors.push_back(epsilon * s.center);
  out.reference_centers = std::move(anchors);
  return out;
}

ResonatorArray apply_perturbation(const ResonatorArray& array,
                                  const PerturbationSpec& spec) {
  const int n = array.size();
  ResonatorArray out = array;
  switch (spec.kind) {
    case PerturbationKind::size: {
      if (static_cast<int>(spec.alphas.size()) != n) {
        throw std::invalid_argument("size perturbation: alphas length != N");
      }
      for (int i = 0; i < n; ++i) {
        if (!(spec.alphas[i] > -1.0)) {
          throw std::invalid_argument("size perturbation: alpha_" +
                                      std::to_string(i + 1) + " <= -1");
        }
        out.resonators[i].radius *= 1.0 + spec.alphas[i];
      }
      break;
    }
    case PerturbationKind::position: {
      if (static_cast<int>(spec.betas.size()) != n) {
        throw std::invalid_argument("position perturbation: betas length != N");
      }
      if (out.is_dilute()) {
        const double eps = *out.epsilon;
        for (int i = 0; i < n; ++i) {
          (*out.reference_centers)[i] += spec.betas[i];
          out.resonators[i].center = (*out.reference_centers)[i] / eps;
        }
      } else {
        // Without a dilute structure the betas act directly on the centers.
        for (int i = 0; i < n; ++i) out.resonators[i].center += spec.betas[i];
      }
      break;
    }
    case PerturbationKind::removal: {
      if (spec.removed.empty()) {
        throw std::invalid_argument("removal: index set must be nonempty");
      }
      ResonatorArray reduced;
      reduced.material = array.material;
      reduced.epsilon = array.epsilon;
      if (array.reference_centers) reduced.reference_centers.emplace();
      for (int i = 0; i < n; ++i) {
        const int label = array.labels[i];
        bool drop = false;
        for (int r : spec.removed) {
          if (r == label) {
            drop = true;
            break;
          }
        }
        if (drop) continue;
        reduced.resonators.push_back(array.resonators[i]);
        reduced.labels.push_back(label);
        if (array.reference_centers) {
          reduced.reference_centers->push_back((*array.reference_centers)[i]);
        }
      }
      if (reduced.resonators.empty()) {
        throw std::invalid_argument("removal: cannot remove all resonators");
      }
      if (reduced.size() != n - static_cast<int>(spec.removed.size())) {
        throw std::invalid_argument("removal: index not present in array");
      }
      return reduced;
    }
  }
  check_disjoint(out.resonators);
  return out;
}

PerturbationSpec random_perturbation(PerturbationKind kind, int n,
                                     double sigma, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random perturbation: n must be >= 1");
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("random perturbation: sigma must be >= 0");
  }
  std::mt19937_64 rng(seed);
  PerturbationSpec spec;
  spec.kind = kind;
  switch (kind) {
    case PerturbationKind::size:
      spec.alphas.resize(n);
      for (int i = 0; i < n; ++i) spec.alphas[i] = sigma * gaussian(rng);
      break;
    case PerturbationKind::position:
      spec.betas.resize(n);
      for (int i = 0; i < n; ++i) {
        const double x = sigma * gaussian(rng);
        const double y = sigma * gaussian(rng);
        const double z = sigma * gaussian(rng);
        spec.betas[i] = Vec3(x, y, z);
      }
      break;
    case PerturbationKind::removal:
      spec.removed.push_back(
          static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))) +
          1);
      break;
  }
  return spec;
}

}  // namespace subwave
