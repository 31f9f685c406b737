// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace rackray {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  constexpr double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Throws std::domain_error for the zero vector.
Vec3 normalize(const Vec3& a);

/// Ray with unit direction. The constructor normalizes.
struct Ray {
  Vec3 origin;
  Vec3 direction;

  Ray(const Vec3& o, const Vec3& d);
  Vec3 at(double t) const { return origin + direction * t; }
};

/// Axis-aligned box. Faces carry the ids surface_id_base + face_index with
/// face_index = 2*axis + (0 for the min side, 1 for the max side).
struct Box {
  Vec3 min_corner;
  Vec3 max_corner;
  int surface_id_base = 0;

  static constexpr int kFaceCount = 6;

  bool contains_strictly(const Vec3& p) const;
  Vec3 face_normal(int face_index) const;
};

struct SurfaceHit {
  int surface_id = -1;
  Vec3 point;
  Vec3 normal;
  double distance = 0.0;
};

/// Axis-aligned bounding region, used for scene extents and receiver regions.
struct Aabb {
  Vec3 lo;
  Vec3 hi;

  bool contains(const Vec3& p) const;
  Aabb expanded(double margin) const;
  void include(const Vec3& p);
};

inline constexpr double kSurfaceEpsilon = 1e-9;

/// Nearest hit with distance > kSurfaceEpsilon, with the outward normal of the
/// face that was crossed. A ray starting inside the box reports its exit face.
std::optional<SurfaceHit> ray_box_intersect(const Ray& ray, const Box& box);

/// Parametric interval [t_enter, t_exit] of the line origin + t*dir inside the
/// closed box; nullopt when the line misses it. dir need not be unit.
std::optional<std::array<double, 2>> line_box_interval(const Vec3& origin, const Vec3& dir,
                                                       const Vec3& lo, const Vec3& hi);

// Specular reflection. Throws std::invalid_argument if incident·normal >= 0.
Vec3 reflect_direction(const Vec3& incident, const Vec3& normal);

Vec3 mirror_point(const Vec3& point, const Vec3& plane_point, const Vec3& plane_normal);

}  // namespace rackray
