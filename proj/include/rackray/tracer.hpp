// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rackray/geom.hpp"
#include "rackray/scene.hpp"

namespace rackray {

enum class InteractionKind { Launch, Reflection, Diffraction, Arrival };

struct Interaction {
  InteractionKind kind = InteractionKind::Launch;
  Vec3 point;
  int id = -1;  // surface id (reflection) or edge id (diffraction)
  Vec3 axis;    // face normal (reflection) or edge direction (diffraction)
};

struct SignatureEntry {
  InteractionKind kind;
  int id;
  friend auto operator<=>(const SignatureEntry&, const SignatureEntry&) = default;
};

using Signature = std::vector<SignatureEntry>;

struct PropagationPath {
  std::vector<Interaction> interactions;  // Launch ... Arrival
  double total_length = 0.0;
  Signature signature;

  const Vec3& start() const { return interactions.front().point; }
  const Vec3& end() const { return interactions.back().point; }
  bool has_diffraction() const;
  int reflection_count() const;
};

struct TraceBudget {
  int max_reflections = 6;
  bool enable_diffraction = true;
  int launch_rays = 100000;
  /// Capture radius r = capture_alpha * L * spacing, L the unfolded length.
  double capture_alpha = 1.5;
  /// Point-to-point tracing also launches from the receiver and merges
  /// the discovered signatures, which makes the path set reciprocal.
  bool bidirectional = true;

  // Throws std::invalid_argument.
  void validate() const;
};

/// Geodesic icosphere directions: 10 f^2 + 2 unit vectors with f chosen so the
/// count is closest to min_count. Deterministic and symmetric.
std::vector<Vec3> geodesic_directions(int min_count);

/// Mean angular spacing sqrt(4 pi / count) of a lattice of `count` rays.
double lattice_spacing(std::size_t count);

/// True if the open segment a-b crosses no box interior and stays above the floor.
bool segment_clear(const Scene& scene, const Vec3& a, const Vec3& b);

std::optional<PropagationPath> find_los(const Scene& scene, const Vec3& tx, const Vec3& rx);

/// Image-method solve for an ordered list of reflecting surfaces. Returns the
/// path only if every reflection point lies on its face, on the lit side, and
/// every segment is unobstructed. An empty list reduces to find_los.
std::optional<PropagationPath> refine_specular_path(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                                    std::span<const int> surfaces);

/// Reflection-surface sequences whose launched rays pass within the capture
/// radius of `target`, from one source only. Sorted, unique, non-empty lists.
std::vector<std::vector<int>> discover_signatures(const Scene& scene, const Vec3& source, const Vec3& target,
                                                  const TraceBudget& budget);

/// Refined reflection paths (at least one bounce), one per unique signature.
std::vector<PropagationPath> enumerate_specular_paths(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                                      const TraceBudget& budget);

/// Fermat point on an edge for the pair, if it lies strictly inside the edge.
std::optional<Vec3> keller_point(const Edge& edge, const Vec3& tx, const Vec3& rx);

/// Single-edge diffraction path, subject to the silhouette and visibility rules.
std::optional<PropagationPath> diffraction_path(const Scene& scene, const Edge& edge, const Vec3& tx,
                                                const Vec3& rx);

std::vector<PropagationPath> find_diffraction_paths(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                                    const TraceBudget& budget);

/// Canonical order: by signature, then by total length.
void sort_canonical(std::vector<PropagationPath>& paths);

/// LOS + specular + diffraction, canonically sorted.
std::vector<PropagationPath> trace_paths(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                         const TraceBudget& budget);

/// Rays shot once from a fixed transmitter and indexed for capture queries at
/// many receivers inside `receiver_region`. Immutable after construction;
/// queries are safe from several threads.
class LaunchTree {
 public:
  LaunchTree(const Scene& scene, const Vec3& source, const TraceBudget& budget, const Aabb& receiver_region);

  std::vector<std::vector<int>> candidate_signatures(const Vec3& rx) const;

  /// All paths source -> rx using this tree for specular discovery.
  std::vector<PropagationPath> trace(const Vec3& rx) const;

  std::size_t segment_count() const { return segments_.size(); }

 private:
  struct Segment {
    Vec3 origin;
    Vec3 direction;
    double length;
    double start_length;  // unfolded length at origin
    std::int32_t node;
  };
  struct Node {
    std::int32_t parent;
    std::int32_t surface;
  };

  void insert(const Segment& seg, double t0, double t1, double radius);
  std::vector<int> signature_of(std::int32_t node) const;

  const Scene* scene_;
  Vec3 source_;
  TraceBudget budget_;
  Aabb region_;
  double spacing_ = 0.0;
  std::vector<Segment> segments_;
  std::vector<Node> nodes_;
  double bin_size_ = 0.5;
  int bins_x_ = 0;
  int bins_y_ = 0;
  std::vector<std::vector<std::uint32_t>> bins_;
};

}  // namespace rackray
