// SPDX-License-Identifier: Apache-2.0
#include "rackray/geom.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rackray {

Vec3 normalize(const Vec3& a) {
  const double n = norm(a);
  if (!(n > 0.0)) {
    throw std::domain_error("normalize: zero-length vector");
  }
  return a / n;
}

Ray::Ray(const Vec3& o, const Vec3& d) : origin(o), direction(normalize(d)) {}

bool Box::contains_strictly(const Vec3& p) const {
  for (int a = 0; a < 3; ++a) {
    if (!(p[a] > min_corner[a] && p[a] < max_corner[a])) {
      return false;
    }
  }
  return true;
}

Vec3 Box::face_normal(int face_index) const {
  Vec3 n;
  n[face_index / 2] = (face_index % 2 == 0) ? -1.0 : 1.0;
  return n;
}

bool Aabb::contains(const Vec3& p) const {
  for (int a = 0; a < 3; ++a) {
    if (p[a] < lo[a] || p[a] > hi[a]) {
      return false;
    }
  }
  return true;
}

Aabb Aabb::expanded(double margin) const {
  const Vec3 m{margin, margin, margin};
  return {lo - m, hi + m};
}

void Aabb::include(const Vec3& p) {
  for (int a = 0; a < 3; ++a) {
    lo[a] = std::min(lo[a], p[a]);
    hi[a] = std::max(hi[a], p[a]);
  }
}

std::optional<std::array<double, 2>> line_box_interval(const Vec3& origin, const Vec3& dir,
                                                       const Vec3& lo, const Vec3& hi) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double t0 = -inf;
  double t1 = inf;
  for (int a = 0; a < 3; ++a) {
    if (dir[a] == 0.0) {
      if (origin[a] < lo[a] || origin[a] > hi[a]) {
        return std::nullopt;
      }
      continue;
    }
    const double inv = 1.0 / dir[a];
    double ta = (lo[a] - origin[a]) * inv;
    double tb = (hi[a] - origin[a]) * inv;
    if (ta > tb) {
      std::swap(ta, tb);
    }
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) {
      return std::nullopt;
    }
  }
  return std::array<double, 2>{t0, t1};
}

std::optional<SurfaceHit> ray_box_intersect(const Ray& ray, const Box& box) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double t_enter = -inf;
  double t_exit = inf;
  int enter_face = -1;
  int exit_face = -1;
  for (int a = 0; a < 3; ++a) {
    const double o = ray.origin[a];
    const double d = ray.direction[a];
    if (d == 0.0) {
      if (o < box.min_corner[a] || o > box.max_corner[a]) {
        return std::nullopt;
      }
      continue;
    }
    const double t_min_side = (box.min_corner[a] - o) / d;
    const double t_max_side = (box.max_corner[a] - o) / d;
    // Entering through the min side when travelling +a.
    const int near_face = d > 0 ? 2 * a : 2 * a + 1;
    const int far_face = d > 0 ? 2 * a + 1 : 2 * a;
    const double t_near = d > 0 ? t_min_side : t_max_side;
    const double t_far = d > 0 ? t_max_side : t_min_side;
    if (t_near > t_enter) {
      t_enter = t_near;
      enter_face = near_face;
    }
    if (t_far < t_exit) {
      t_exit = t_far;
      exit_face = far_face;
    }
  }
  if (t_enter > t_exit) {
    return std::nullopt;
  }
  int face = -1;
  double t = 0.0;
  if (t_enter > kSurfaceEpsilon) {
    face = enter_face;
    t = t_enter;
  } else if (t_exit > kSurfaceEpsilon) {
    face = exit_face;
    t = t_exit;
  } else {
    return std::nullopt;
  }
  if (face < 0) {
    return std::nullopt;
  }

  SurfaceHit hit;
  hit.surface_id = box.surface_id_base + face;
  hit.distance = t;
  hit.point = ray.at(t);
  const int axis = face / 2;
  hit.point[axis] = (face % 2 == 0) ? box.min_corner[axis] : box.max_corner[axis];
  hit.normal = box.face_normal(face);
  return hit;
}

Vec3 reflect_direction(const Vec3& incident, const Vec3& normal) {
  const double c = dot(incident, normal);
  if (!(c < 0.0)) {
    throw std::invalid_argument("reflect_direction: ray is not approaching the surface");
  }
  return incident - normal * (2.0 * c);
}

Vec3 mirror_point(const Vec3& point, const Vec3& plane_point, const Vec3& plane_normal) {
  return point - plane_normal * (2.0 * dot(point - plane_point, plane_normal));
}

}  // namespace rackray
