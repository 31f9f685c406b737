// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rackray/geom.hpp"

namespace rackray {

enum class MaterialKind { Pec, Dielectric };

struct Material {
  MaterialKind kind = MaterialKind::Pec;
  double eps_r = 1.0;         // dielectric only
  double sigma = 0.0;         // S/m, dielectric only
  double roughness_dh = 0.0;  // m, std. deviation of surface height

  static Material pec(double roughness_dh = 0.0) { return {MaterialKind::Pec, 1.0, 0.0, roughness_dh}; }
  static Material dielectric(double eps_r, double sigma, double roughness_dh = 0.0) {
    return {MaterialKind::Dielectric, eps_r, sigma, roughness_dh};
  }
  /// 30 cm warehouse floor slab.
  static Material concrete() { return dielectric(7.0, 0.015); }

  friend bool operator==(const Material&, const Material&) = default;
};

struct SceneBox {
  Box box;
  int material = 0;
};

struct FloorSlab {
  int material = 0;
  double thickness = 0.30;
};

/// One planar face. `axis` is the normal axis; the face occupies
/// [lo, hi] in the two remaining axes (unbounded for the floor).
struct Face {
  int surface_id = -1;
  int axis = 2;
  double coord = 0.0;
  Vec3 normal;
  Vec3 lo;
  Vec3 hi;
  int material = 0;
  bool bounded = true;

  /// In-face test for a point already on the plane, with tolerance tol.
  bool contains(const Vec3& p, double tol = 1e-9) const;
};

/// Straight box edge between two faces. Orientation is right-handed:
/// direction = cross(face0_normal, facen_normal), so that with
/// t0 = -facen_normal (along face 0, away from the edge) the exterior
/// angle runs from 0 on face 0 to 3π/2 on face n.
struct Edge {
  int id = -1;
  int box_index = -1;
  Vec3 origin;
  Vec3 direction;
  double length = 0.0;
  Vec3 face0_normal;
  Vec3 facen_normal;
  int face0_id = -1;
  int facen_id = -1;

  Vec3 point_at(double s) const { return origin + direction * s; }
};

inline constexpr int kFloorSurfaceId = 0;
inline constexpr int kEdgesPerBox = 12;

/// Immutable warehouse geometry. Surface ids are assigned at construction:
/// the floor is 0 and box i owns ids 1 + 6i ... 6 + 6i.
class Scene {
 public:
  Scene(std::vector<Material> materials, std::vector<SceneBox> boxes, std::optional<FloorSlab> floor,
        Aabb bounds);

  static Scene empty();
  static Scene floor_only(const Material& floor_material);

  const std::vector<Material>& materials() const { return materials_; }
  const std::vector<SceneBox>& boxes() const { return boxes_; }
  const std::optional<FloorSlab>& floor() const { return floor_; }
  const Aabb& bounds() const { return bounds_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_surface(int surface_id) const;
  Face face(int surface_id) const;
  const Material& surface_material(int surface_id) const;
  const Edge& edge(int edge_id) const;

  /// True if p is strictly inside a solid box (receivers there are excluded).
  bool inside_solid(const Vec3& p) const;

  /// Same scene with every box material's roughness set to dh.
  Scene with_box_roughness(double dh) const;

 private:
  std::vector<Material> materials_;
  std::vector<SceneBox> boxes_;
  std::optional<FloorSlab> floor_;
  Aabb bounds_;
  std::vector<Edge> edges_;
};

struct WarehouseParams {
  double rack_w = 1.3;  // along x
  double rack_d = 1.3;  // along y
  double rack_h = 2.0;
  double ground_clearance = 0.30;
  double intra_gap = 0.05;
  int cluster_rows = 2;  // racks along y
  int cluster_cols = 7;  // racks along x
  double corridor_w = 1.5;
  std::pair<int, int> cluster_grid{2, 2};  // clusters along (x, y)
  Material rack_material = Material::pec();
  Material floor = Material::concrete();
  double floor_thickness = 0.30;
  // Free border around the rack field; the defaults give a 22 m x 8 m area.
  double margin_x = 0.85;
  double margin_y = 0.60;

  double cluster_length_x() const { return cluster_cols * rack_w + (cluster_cols - 1) * intra_gap; }
  double cluster_length_y() const { return cluster_rows * rack_d + (cluster_rows - 1) * intra_gap; }

  // Throws std::invalid_argument on non-positive dimensions or counts.
  void validate() const;
};

Scene build_warehouse(const WarehouseParams& params);

/// Horizontal rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0, y0, x1, y1;
  bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

/// Footprints of the corridors between neighbouring clusters.
std::vector<Rect> corridor_regions(const WarehouseParams& params);
/// Footprints of whole clusters, ordered like the boxes of build_warehouse.
std::vector<Rect> cluster_footprints(const WarehouseParams& params);

struct SceneDiagnostic {
  enum class Kind { Overlap, BelowFloor, UnreferencedMaterial, InvalidMaterial, DegenerateBox };
  Kind kind;
  std::string message;
};

std::vector<SceneDiagnostic> validate_scene(const Scene& scene);

}  // namespace rackray
