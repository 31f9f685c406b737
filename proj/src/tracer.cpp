// SPDX-License-Identifier: Apache-2.0
#include "rackray/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

namespace rackray {

bool PropagationPath::has_diffraction() const {
  return std::any_of(interactions.begin(), interactions.end(),
                     [](const Interaction& i) { return i.kind == InteractionKind::Diffraction; });
}

int PropagationPath::reflection_count() const {
  return static_cast<int>(std::count_if(interactions.begin(), interactions.end(),
                                        [](const Interaction& i) { return i.kind == InteractionKind::Reflection; }));
}

void TraceBudget::validate() const {
  if (max_reflections < 0) {
    throw std::invalid_argument("max_reflections must be >= 0");
  }
  if (launch_rays < 12) {
    throw std::invalid_argument("launch_rays must be >= 12");
  }
  if (!(capture_alpha > 0.0)) {
    throw std::invalid_argument("capture_alpha must be positive");
  }
}

// ---------------------------------------------------------------------------
// Launch lattice
// ---------------------------------------------------------------------------

std::vector<Vec3> geodesic_directions(int min_count) {
  const int f = std::max(1, static_cast<int>(std::lround(std::sqrt(std::max(0, min_count - 2) / 10.0))));
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v;
  for (double s1 : {-1.0, 1.0}) {
    for (double s2 : {-1.0, 1.0}) {
      v.push_back({0.0, s1, s2 * phi});
      v.push_back({s1, s2 * phi, 0.0});
      v.push_back({s2 * phi, 0.0, s1});
    }
  }
  // Icosahedron edges have length 2 in these coordinates.
  auto adjacent = [&](std::size_t a, std::size_t b) { return std::abs(distance(v[a], v[b]) - 2.0) < 1e-9; };

  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(10 * f * f + 2));
  for (const Vec3& p : v) {
    out.push_back(normalize(p));
  }
  const double inv_f = 1.0 / f;
  for (std::size_t a = 0; a < v.size(); ++a) {
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      if (!adjacent(a, b)) continue;
      for (int t = 1; t < f; ++t) {
        out.push_back(normalize((v[a] * (f - t) + v[b] * t) * inv_f));
      }
    }
  }
  for (std::size_t a = 0; a < v.size(); ++a) {
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      if (!adjacent(a, b)) continue;
      for (std::size_t c = b + 1; c < v.size(); ++c) {
        if (!adjacent(a, c) || !adjacent(b, c)) continue;
        for (int i = 1; i < f; ++i) {
          for (int j = 1; i + j < f; ++j) {
            const int k = f - i - j;
            out.push_back(normalize((v[a] * i + v[b] * j + v[c] * k) * inv_f));
          }
        }
      }
    }
  }
  return out;
}

double lattice_spacing(std::size_t count) {
  return std::sqrt(4.0 * std::numbers::pi / static_cast<double>(count));
}

// ---------------------------------------------------------------------------
// Visibility
// ---------------------------------------------------------------------------

bool segment_clear(const Scene& scene, const Vec3& a, const Vec3& b) {
  if (scene.floor() && (a.z < -kSurfaceEpsilon || b.z < -kSurfaceEpsilon)) {
    return false;
  }
  const Vec3 d = b - a;
  const double len = norm(d);
  if (len <= 2 * kSurfaceEpsilon) {
    return true;
  }
  const Vec3 dir = d / len;
  Vec3 lo{std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
  Vec3 hi{std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
  for (const SceneBox& sb : scene.boxes()) {
    const Box& box = sb.box;
    if (box.max_corner.x < lo.x || box.min_corner.x > hi.x || box.max_corner.y < lo.y ||
        box.min_corner.y > hi.y || box.max_corner.z < lo.z || box.min_corner.z > hi.z) {
      continue;
    }
    const auto iv = line_box_interval(a, dir, box.min_corner, box.max_corner);
    if (!iv) continue;
    const double t0 = std::max((*iv)[0], kSurfaceEpsilon);
    const double t1 = std::min((*iv)[1], len - kSurfaceEpsilon);
    if (t0 < t1) {
      return false;
    }
  }
  return true;
}

namespace {

PropagationPath make_path(std::vector<Interaction> interactions) {
  PropagationPath p;
  p.interactions = std::move(interactions);
  for (std::size_t i = 1; i < p.interactions.size(); ++i) {
    p.total_length += distance(p.interactions[i - 1].point, p.interactions[i].point);
    const Interaction& it = p.interactions[i];
    if (it.kind == InteractionKind::Reflection || it.kind == InteractionKind::Diffraction) {
      p.signature.push_back({it.kind, it.id});
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Ray shooting
// ---------------------------------------------------------------------------

struct Shot {
  Vec3 origin;
  Vec3 direction;
  double length;
  double start_length;
};

Aabb trace_region(const Scene& scene, const Vec3& source, const Aabb& receivers) {
  Aabb r{source, source};
  r.include(receivers.lo);
  r.include(receivers.hi);
  for (const SceneBox& b : scene.boxes()) {
    r.include(b.box.min_corner);
    r.include(b.box.max_corner);
  }
  if (scene.floor()) {
    r.lo.z = std::min(r.lo.z, 0.0);
  }
  // Captured rays may pass just outside the hull of the endpoints.
  return r.expanded(1.0);
}

struct NearestHit {
  double distance = std::numeric_limits<double>::infinity();
  int surface = -1;
  Vec3 point;
  Vec3 normal;
};

NearestHit nearest_hit(const Scene& scene, const Ray& ray) {
  NearestHit best;
  if (scene.floor() && ray.direction.z < 0.0 && ray.origin.z > 0.0) {
    const double t = -ray.origin.z / ray.direction.z;
    if (t > kSurfaceEpsilon) {
      best.distance = t;
      best.surface = kFloorSurfaceId;
      best.point = ray.at(t);
      best.point.z = 0.0;
      best.normal = {0, 0, 1};
    }
  }
  for (const SceneBox& sb : scene.boxes()) {
    const auto hit = ray_box_intersect(ray, sb.box);
    if (hit && hit->distance < best.distance) {
      best.distance = hit->distance;
      best.surface = hit->surface_id;
      best.point = hit->point;
      best.normal = hit->normal;
    }
  }
  return best;
}

// Calls visit(shot, surfaces) for every straight segment of every launched
// ray; `surfaces` holds the reflections that precede the segment.
template <class Visit>
void shoot_rays(const Scene& scene, const Vec3& source, const TraceBudget& budget, const Aabb& region,
                const std::vector<Vec3>& directions, Visit&& visit) {
  std::vector<int> stack;
  stack.reserve(static_cast<std::size_t>(budget.max_reflections));
  for (const Vec3& d0 : directions) {
    stack.clear();
    Vec3 origin = source;
    Vec3 dir = d0;
    double unfolded = 0.0;
    for (int bounce = 0;; ++bounce) {
      const Ray ray{origin, dir};
      const NearestHit hit = nearest_hit(scene, ray);
      const auto iv = line_box_interval(origin, dir, region.lo, region.hi);
      const double exit = iv ? (*iv)[1] : 0.0;
      const bool hit_inside = hit.surface >= 0 && hit.distance <= exit;
      const double len = hit_inside ? hit.distance : exit;
      if (!(len > 0.0)) break;
      visit(Shot{origin, dir, len, unfolded}, std::span<const int>(stack));
      if (!hit_inside || bounce == budget.max_reflections) break;
      if (dot(dir, hit.normal) >= 0.0) break;
      stack.push_back(hit.surface);
      dir = reflect_direction(dir, hit.normal);
      origin = hit.point;
      unfolded += len;
    }
  }
}

bool captures(const Shot& s, const Vec3& p, double k) {
  const double t = std::clamp(dot(p - s.origin, s.direction), 0.0, s.length);
  const Vec3 c = s.origin + s.direction * t;
  const Vec3 d = c - p;
  const double r = k * (s.start_length + t);
  return dot(d, d) <= r * r;
}

std::vector<int> reversed(const std::vector<int>& v) { return {v.rbegin(), v.rend()}; }

}  // namespace

// ---------------------------------------------------------------------------
// Path construction
// ---------------------------------------------------------------------------

std::optional<PropagationPath> find_los(const Scene& scene, const Vec3& tx, const Vec3& rx) {
  if (distance(tx, rx) <= kSurfaceEpsilon || !segment_clear(scene, tx, rx)) {
    return std::nullopt;
  }
  return make_path({{InteractionKind::Launch, tx, -1, {}}, {InteractionKind::Arrival, rx, -1, {}}});
}

std::optional<PropagationPath> refine_specular_path(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                                    std::span<const int> surfaces) {
  if (surfaces.empty()) {
    return find_los(scene, tx, rx);
  }
  const std::size_t k = surfaces.size();
  std::vector<Face> faces;
  faces.reserve(k);
  for (int id : surfaces) {
    if (!scene.has_surface(id)) return std::nullopt;
    faces.push_back(scene.face(id));
  }

  // images[j] is tx mirrored across faces 0..j-1.
  std::vector<Vec3> images(k + 1);
  images[0] = tx;
  for (std::size_t j = 0; j < k; ++j) {
    Vec3 plane_point;
    plane_point[faces[j].axis] = faces[j].coord;
    images[j + 1] = mirror_point(images[j], plane_point, faces[j].normal);
  }

  std::vector<Vec3> pts(k + 2);
  pts[0] = tx;
  pts[k + 1] = rx;
  Vec3 target = rx;
  for (std::size_t jj = k; jj-- > 0;) {
    const Face& f = faces[jj];
    const Vec3& image = images[jj + 1];
    const double denom = image[f.axis] - target[f.axis];
    if (denom == 0.0) return std::nullopt;
    const double t = (f.coord - target[f.axis]) / denom;
    if (!(t > 0.0 && t < 1.0)) return std::nullopt;
    Vec3 p = target + (image - target) * t;
    p[f.axis] = f.coord;
    if (!f.contains(p)) return std::nullopt;
    pts[jj + 1] = p;
    target = p;
  }

  for (std::size_t j = 0; j < k; ++j) {
    const Vec3& p = pts[j + 1];
    if (dot(pts[j] - p, faces[j].normal) <= 0.0 || dot(pts[j + 2] - p, faces[j].normal) <= 0.0) {
      return std::nullopt;
    }
  }
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    if (distance(pts[j], pts[j + 1]) <= kSurfaceEpsilon || !segment_clear(scene, pts[j], pts[j + 1])) {
      return std::nullopt;
    }
  }

  std::vector<Interaction> it;
  it.reserve(k + 2);
  it.push_back({InteractionKind::Launch, tx, -1, {}});
  for (std::size_t j = 0; j < k; ++j) {
    it.push_back({InteractionKind::Reflection, pts[j + 1], faces[j].surface_id, faces[j].normal});
  }
  it.push_back({InteractionKind::Arrival, rx, -1, {}});
  return make_path(std::move(it));
}

std::vector<std::vector<int>> discover_signatures(const Scene& scene, const Vec3& source, const Vec3& target,
                                                  const TraceBudget& budget) {
  budget.validate();
  if (budget.max_reflections == 0) return {};
  const std::vector<Vec3> dirs = geodesic_directions(budget.launch_rays);
  const double k = budget.capture_alpha * lattice_spacing(dirs.size());
  const Aabb region = trace_region(scene, source, Aabb{target, target});
  std::set<std::vector<int>> found;
  shoot_rays(scene, source, budget, region, dirs, [&](const Shot& s, std::span<const int> stack) {
    if (!stack.empty() && captures(s, target, k)) {
      found.emplace(stack.begin(), stack.end());
    }
  });
  return {found.begin(), found.end()};
}

std::vector<PropagationPath> enumerate_specular_paths(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                                      const TraceBudget& budget) {
  budget.validate();
  if (budget.max_reflections == 0) return {};
  std::set<std::vector<int>> sigs;
  for (auto& s : discover_signatures(scene, tx, rx, budget)) sigs.insert(std::move(s));
  if (budget.bidirectional) {
    for (const auto& s : discover_signatures(scene, rx, tx, budget)) sigs.insert(reversed(s));
  }
  std::vector<PropagationPath> out;
  for (const auto& s : sigs) {
    if (auto p = refine_specular_path(scene, tx, rx, s)) {
      out.push_back(std::move(*p));
    }
  }
  sort_canonical(out);
  return out;
}

std::optional<Vec3> keller_point(const Edge& edge, const Vec3& tx, const Vec3& rx) {
  const Vec3 a = tx - edge.origin;
  const Vec3 b = rx - edge.origin;
  const double a_along = dot(a, edge.direction);
  const double b_along = dot(b, edge.direction);
  const double rho_a = norm(a - edge.direction * a_along);
  const double rho_b = norm(b - edge.direction * b_along);
  if (rho_a + rho_b <= kSurfaceEpsilon) return std::nullopt;
  const double s = a_along + (b_along - a_along) * rho_a / (rho_a + rho_b);
  if (!(s > kSurfaceEpsilon && s < edge.length - kSurfaceEpsilon)) return std::nullopt;
  return edge.point_at(s);
}

namespace {

// Number of the two wedge faces whose outer side contains p.
int faces_seen(const Edge& edge, const Vec3& p) {
  const Vec3 r = p - edge.origin;
  return (dot(r, edge.face0_normal) > 0.0 ? 1 : 0) + (dot(r, edge.facen_normal) > 0.0 ? 1 : 0);
}

}  // namespace

std::optional<PropagationPath> diffraction_path(const Scene& scene, const Edge& edge, const Vec3& tx,
                                                const Vec3& rx) {
  const int seen_tx = faces_seen(edge, tx);
  const int seen_rx = faces_seen(edge, rx);
  // Silhouette from at least one end; both ends outside the wedge.
  if (seen_tx == 0 || seen_rx == 0 || (seen_tx == 2 && seen_rx == 2)) return std::nullopt;
  const auto q = keller_point(edge, tx, rx);
  if (!q) return std::nullopt;
  if (!segment_clear(scene, tx, *q) || !segment_clear(scene, *q, rx)) return std::nullopt;
  return make_path({{InteractionKind::Launch, tx, -1, {}},
                    {InteractionKind::Diffraction, *q, edge.id, edge.direction},
                    {InteractionKind::Arrival, rx, -1, {}}});
}

std::vector<PropagationPath> find_diffraction_paths(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                                    const TraceBudget& budget) {
  std::vector<PropagationPath> out;
  if (!budget.enable_diffraction) return out;
  for (const Edge& e : scene.edges()) {
    if (auto p = diffraction_path(scene, e, tx, rx)) {
      out.push_back(std::move(*p));
    }
  }
  sort_canonical(out);
  return out;
}

void sort_canonical(std::vector<PropagationPath>& paths) {
  std::sort(paths.begin(), paths.end(), [](const PropagationPath& a, const PropagationPath& b) {
    if (a.signature != b.signature) return a.signature < b.signature;
    return a.total_length < b.total_length;
  });
}

std::vector<PropagationPath> trace_paths(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                         const TraceBudget& budget) {
  std::vector<PropagationPath> out;
  if (auto los = find_los(scene, tx, rx)) out.push_back(std::move(*los));
  for (auto& p : enumerate_specular_paths(scene, tx, rx, budget)) out.push_back(std::move(p));
  for (auto& p : find_diffraction_paths(scene, tx, rx, budget)) out.push_back(std::move(p));
  sort_canonical(out);
  return out;
}

// ---------------------------------------------------------------------------
// LaunchTree
// ---------------------------------------------------------------------------

LaunchTree::LaunchTree(const Scene& scene, const Vec3& source, const TraceBudget& budget,
                       const Aabb& receiver_region)
    : scene_(&scene), source_(source), budget_(budget), region_(receiver_region) {
  budget.validate();
  bins_x_ = std::max(1, static_cast<int>(std::ceil((region_.hi.x - region_.lo.x) / bin_size_)));
  bins_y_ = std::max(1, static_cast<int>(std::ceil((region_.hi.y - region_.lo.y) / bin_size_)));
  bins_.resize(static_cast<std::size_t>(bins_x_) * static_cast<std::size_t>(bins_y_));
  if (budget.max_reflections == 0) return;

  const std::vector<Vec3> dirs = geodesic_directions(budget.launch_rays);
  spacing_ = lattice_spacing(dirs.size());
  const double k = budget.capture_alpha * spacing_;
  const Aabb region = trace_region(scene, source, receiver_region);

  std::int32_t node = -1;
  shoot_rays(scene, source, budget, region, dirs, [&](const Shot& s, std::span<const int> stack) {
    if (stack.empty()) {
      node = -1;
      return;
    }
    nodes_.push_back({node, stack.back()});
    node = static_cast<std::int32_t>(nodes_.size()) - 1;
    const double r = k * (s.start_length + s.length) + kSurfaceEpsilon;
    const Aabb grown = region_.expanded(r);
    const auto iv = line_box_interval(s.origin, s.direction, grown.lo, grown.hi);
    if (!iv) return;
    const double t0 = std::max(0.0, (*iv)[0]);
    const double t1 = std::min(s.length, (*iv)[1]);
    if (t0 > t1) return;
    segments_.push_back({s.origin, s.direction, s.length, s.start_length, node});
    insert(segments_.back(), t0, t1, r);
  });
}

void LaunchTree::insert(const Segment& seg, double t0, double t1, double radius) {
  const auto index = static_cast<std::uint32_t>(segments_.size() - 1);
  const double step = 0.5 * bin_size_;
  const double half = radius + 0.5 * step;
  const int samples = 1 + static_cast<int>(std::ceil((t1 - t0) / step));
  for (int i = 0; i <= samples; ++i) {
    const double t = std::min(t1, t0 + i * step);
    const Vec3 p = seg.origin + seg.direction * t;
    const int ix0 = std::clamp(static_cast<int>(std::floor((p.x - half - region_.lo.x) / bin_size_)), 0, bins_x_ - 1);
    const int ix1 = std::clamp(static_cast<int>(std::floor((p.x + half - region_.lo.x) / bin_size_)), 0, bins_x_ - 1);
    const int iy0 = std::clamp(static_cast<int>(std::floor((p.y - half - region_.lo.y) / bin_size_)), 0, bins_y_ - 1);
    const int iy1 = std::clamp(static_cast<int>(std::floor((p.y + half - region_.lo.y) / bin_size_)), 0, bins_y_ - 1);
    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int ix = ix0; ix <= ix1; ++ix) {
        auto& bin = bins_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(bins_x_) + static_cast<std::size_t>(ix)];
        if (bin.empty() || bin.back() != index) bin.push_back(index);
      }
    }
  }
}

std::vector<int> LaunchTree::signature_of(std::int32_t node) const {
  std::vector<int> sig;
  for (std::int32_t n = node; n >= 0; n = nodes_[static_cast<std::size_t>(n)].parent) {
    sig.push_back(nodes_[static_cast<std::size_t>(n)].surface);
  }
  std::reverse(sig.begin(), sig.end());
  return sig;
}

std::vector<std::vector<int>> LaunchTree::candidate_signatures(const Vec3& rx) const {
  std::set<std::vector<int>> found;
  const double k = budget_.capture_alpha * spacing_;
  auto test = [&](const Segment& seg) {
    if (captures(Shot{seg.origin, seg.direction, seg.length, seg.start_length}, rx, k)) {
      found.insert(signature_of(seg.node));
    }
  };
  if (!region_.expanded(1e-6).contains(rx)) {
    throw std::out_of_range("LaunchTree: receiver outside the indexed region");
  }
  const int ix = std::clamp(static_cast<int>(std::floor((rx.x - region_.lo.x) / bin_size_)), 0, bins_x_ - 1);
  const int iy = std::clamp(static_cast<int>(std::floor((rx.y - region_.lo.y) / bin_size_)), 0, bins_y_ - 1);
  for (std::uint32_t i : bins_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(bins_x_) + static_cast<std::size_t>(ix)]) {
    test(segments_[i]);
  }
  return {found.begin(), found.end()};
}

std::vector<PropagationPath> LaunchTree::trace(const Vec3& rx) const {
  std::vector<PropagationPath> out;
  if (auto los = find_los(*scene_, source_, rx)) out.push_back(std::move(*los));
  for (const auto& sig : candidate_signatures(rx)) {
    if (auto p = refine_specular_path(*scene_, source_, rx, sig)) out.push_back(std::move(*p));
  }
  for (auto& p : find_diffraction_paths(*scene_, source_, rx, budget_)) out.push_back(std::move(p));
  sort_canonical(out);
  return out;
}

}  // namespace rackray
