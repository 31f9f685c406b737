// SPDX-License-Identifier: Apache-2.0
#include "rackray/scene.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rackray {

bool Face::contains(const Vec3& p, double tol) const {
  if (!bounded) {
    return true;
  }
  for (int a = 0; a < 3; ++a) {
    if (a == axis) {
      continue;
    }
    if (p[a] < lo[a] - tol || p[a] > hi[a] + tol) {
      return false;
    }
  }
  return true;
}

namespace {

Vec3 axis_unit(int axis, double sign) {
  Vec3 v;
  v[axis] = sign;
  return v;
}

void append_box_edges(const Box& box, int box_index, std::vector<Edge>& out) {
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    for (int sb = 0; sb < 2; ++sb) {
      for (int sc = 0; sc < 2; ++sc) {
        Edge e;
        e.id = box_index * kEdgesPerBox + a * 4 + sb * 2 + sc;
        e.box_index = box_index;
        e.origin = box.min_corner;
        e.origin[b] = sb ? box.max_corner[b] : box.min_corner[b];
        e.origin[c] = sc ? box.max_corner[c] : box.min_corner[c];
        e.direction = axis_unit(a, 1.0);
        e.length = box.max_corner[a] - box.min_corner[a];
        const Vec3 nb = axis_unit(b, sb ? 1.0 : -1.0);
        const Vec3 nc = axis_unit(c, sc ? 1.0 : -1.0);
        const int fb = box.surface_id_base + 2 * b + sb;
        const int fc = box.surface_id_base + 2 * c + sc;
        if (dot(cross(nb, nc), e.direction) > 0.0) {
          e.face0_normal = nb;
          e.facen_normal = nc;
          e.face0_id = fb;
          e.facen_id = fc;
        } else {
          e.face0_normal = nc;
          e.facen_normal = nb;
          e.face0_id = fc;
          e.facen_id = fb;
        }
        out.push_back(e);
      }
    }
  }
}

}  // namespace

Scene::Scene(std::vector<Material> materials, std::vector<SceneBox> boxes, std::optional<FloorSlab> floor,
             Aabb bounds)
    : materials_(std::move(materials)), boxes_(std::move(boxes)), floor_(floor), bounds_(bounds) {
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    boxes_[i].box.surface_id_base = 1 + Box::kFaceCount * static_cast<int>(i);
    append_box_edges(boxes_[i].box, static_cast<int>(i), edges_);
  }
}

Scene Scene::empty() {
  return Scene({}, {}, std::nullopt, Aabb{{-1, -1, -1}, {1, 1, 1}});
}

Scene Scene::floor_only(const Material& floor_material) {
  return Scene({floor_material}, {}, FloorSlab{0, 0.30}, Aabb{{-1, -1, -0.30}, {1, 1, 1}});
}

bool Scene::has_surface(int surface_id) const {
  if (surface_id == kFloorSurfaceId) {
    return floor_.has_value();
  }
  return surface_id >= 1 && surface_id <= Box::kFaceCount * static_cast<int>(boxes_.size());
}

Face Scene::face(int surface_id) const {
  if (!has_surface(surface_id)) {
    throw std::out_of_range("Scene::face: unknown surface id " + std::to_string(surface_id));
  }
  Face f;
  f.surface_id = surface_id;
  if (surface_id == kFloorSurfaceId) {
    f.axis = 2;
    f.coord = 0.0;
    f.normal = {0, 0, 1};
    f.material = floor_->material;
    f.bounded = false;
    return f;
  }
  const int box_index = (surface_id - 1) / Box::kFaceCount;
  const int local = (surface_id - 1) % Box::kFaceCount;
  const SceneBox& sb = boxes_[static_cast<std::size_t>(box_index)];
  f.axis = local / 2;
  f.coord = (local % 2 == 0) ? sb.box.min_corner[f.axis] : sb.box.max_corner[f.axis];
  f.normal = sb.box.face_normal(local);
  f.lo = sb.box.min_corner;
  f.hi = sb.box.max_corner;
  f.material = sb.material;
  return f;
}

const Material& Scene::surface_material(int surface_id) const {
  return materials_.at(static_cast<std::size_t>(face(surface_id).material));
}

const Edge& Scene::edge(int edge_id) const {
  return edges_.at(static_cast<std::size_t>(edge_id));
}

bool Scene::inside_solid(const Vec3& p) const {
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const SceneBox& b) { return b.box.contains_strictly(p); });
}

Scene Scene::with_box_roughness(double dh) const {
  std::vector<Material> mats = materials_;
  std::optional<FloorSlab> floor = floor_;
  for (const SceneBox& b : boxes_) {
    mats.at(static_cast<std::size_t>(b.material)).roughness_dh = dh;
    if (floor && floor->material == b.material && mats.size() == materials_.size()) {
      // Floor shares the rack material: keep the floor flat.
      mats.push_back(materials_[static_cast<std::size_t>(b.material)]);
      floor->material = static_cast<int>(mats.size()) - 1;
    }
  }
  return Scene(std::move(mats), boxes_, floor, bounds_);
}

void WarehouseParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) {
      throw std::invalid_argument(std::string("warehouse: ") + what);
    }
  };
  require(rack_w > 0 && rack_d > 0 && rack_h > 0, "rack dimensions must be positive");
  require(ground_clearance > 0, "ground_clearance must be positive");
  require(intra_gap > 0, "intra_gap must be positive");
  require(corridor_w > 0, "corridor_w must be positive");
  require(floor_thickness > 0, "floor_thickness must be positive");
  require(margin_x >= 0 && margin_y >= 0, "margins must be non-negative");
  require(cluster_rows >= 1 && cluster_cols >= 1, "cluster must hold at least one rack");
  require(cluster_grid.first >= 1 && cluster_grid.second >= 1, "cluster grid must be at least 1x1");
  for (const Material* m : {&rack_material, &floor}) {
    require(m->eps_r >= 1.0 && m->sigma >= 0.0 && m->roughness_dh >= 0.0, "invalid material parameters");
  }
}

std::vector<Rect> cluster_footprints(const WarehouseParams& p) {
  std::vector<Rect> out;
  const double lx = p.cluster_length_x();
  const double ly = p.cluster_length_y();
  for (int cy = 0; cy < p.cluster_grid.second; ++cy) {
    for (int cx = 0; cx < p.cluster_grid.first; ++cx) {
      const double x0 = p.margin_x + cx * (lx + p.corridor_w);
      const double y0 = p.margin_y + cy * (ly + p.corridor_w);
      out.push_back({x0, y0, x0 + lx, y0 + ly});
    }
  }
  return out;
}

std::vector<Rect> corridor_regions(const WarehouseParams& p) {
  std::vector<Rect> out;
  const double lx = p.cluster_length_x();
  const double ly = p.cluster_length_y();
  const double field_x = p.cluster_grid.first * lx + (p.cluster_grid.first - 1) * p.corridor_w;
  const double field_y = p.cluster_grid.second * ly + (p.cluster_grid.second - 1) * p.corridor_w;
  for (int cx = 1; cx < p.cluster_grid.first; ++cx) {
    const double x0 = p.margin_x + cx * lx + (cx - 1) * p.corridor_w;
    out.push_back({x0, p.margin_y, x0 + p.corridor_w, p.margin_y + field_y});
  }
  for (int cy = 1; cy < p.cluster_grid.second; ++cy) {
    const double y0 = p.margin_y + cy * ly + (cy - 1) * p.corridor_w;
    out.push_back({p.margin_x, y0, p.margin_x + field_x, y0 + p.corridor_w});
  }
  return out;
}

Scene build_warehouse(const WarehouseParams& p) {
  p.validate();
  std::vector<Material> materials{p.rack_material, p.floor};
  std::vector<SceneBox> boxes;
  const double z0 = p.ground_clearance;
  const double z1 = p.ground_clearance + p.rack_h;
  for (const Rect& c : cluster_footprints(p)) {
    for (int r = 0; r < p.cluster_rows; ++r) {
      for (int k = 0; k < p.cluster_cols; ++k) {
        const double x0 = c.x0 + k * (p.rack_w + p.intra_gap);
        const double y0 = c.y0 + r * (p.rack_d + p.intra_gap);
        boxes.push_back({Box{{x0, y0, z0}, {x0 + p.rack_w, y0 + p.rack_d, z1}, 0}, 0});
      }
    }
  }
  const double field_x = p.cluster_grid.first * p.cluster_length_x() + (p.cluster_grid.first - 1) * p.corridor_w;
  const double field_y = p.cluster_grid.second * p.cluster_length_y() + (p.cluster_grid.second - 1) * p.corridor_w;
  const Aabb bounds{{0.0, 0.0, -p.floor_thickness}, {field_x + 2 * p.margin_x, field_y + 2 * p.margin_y, z1}};
  return Scene(std::move(materials), std::move(boxes), FloorSlab{1, p.floor_thickness}, bounds);
}

std::vector<SceneDiagnostic> validate_scene(const Scene& scene) {
  std::vector<SceneDiagnostic> out;
  const auto& boxes = scene.boxes();
  const auto& materials = scene.materials();
  std::vector<bool> referenced(materials.size(), false);

  auto note_material = [&](int index, const std::string& owner) {
    if (index < 0 || static_cast<std::size_t>(index) >= materials.size()) {
      out.push_back({SceneDiagnostic::Kind::InvalidMaterial, owner + " references missing material " +
                                                                  std::to_string(index)});
    } else {
      referenced[static_cast<std::size_t>(index)] = true;
    }
  };

  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const Box& b = boxes[i].box;
    const std::string name = "box " + std::to_string(i);
    note_material(boxes[i].material, name);
    if (!(b.min_corner.x < b.max_corner.x && b.min_corner.y < b.max_corner.y && b.min_corner.z < b.max_corner.z)) {
      out.push_back({SceneDiagnostic::Kind::DegenerateBox, name + " has min_corner >= max_corner"});
    }
    if (b.min_corner.z < 0.0) {
      out.push_back({SceneDiagnostic::Kind::BelowFloor, name + " extends below the floor plane"});
    }
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      const Box& o = boxes[j].box;
      bool overlap = true;
      for (int a = 0; a < 3; ++a) {
        overlap = overlap && b.min_corner[a] < o.max_corner[a] && o.min_corner[a] < b.max_corner[a];
      }
      if (overlap) {
        out.push_back({SceneDiagnostic::Kind::Overlap, name + " overlaps box " + std::to_string(j)});
      }
    }
  }
  if (scene.floor()) {
    note_material(scene.floor()->material, "floor");
  }
  for (std::size_t m = 0; m < materials.size(); ++m) {
    const Material& mat = materials[m];
    if (!(mat.eps_r >= 1.0 && mat.sigma >= 0.0 && mat.roughness_dh >= 0.0)) {
      out.push_back({SceneDiagnostic::Kind::InvalidMaterial, "material " + std::to_string(m) + " out of range"});
    }
    if (!referenced[m]) {
      out.push_back({SceneDiagnostic::Kind::UnreferencedMaterial,
                     "material " + std::to_string(m) + " is not used by any surface"});
    }
  }
  return out;
}

}  // namespace rackray
