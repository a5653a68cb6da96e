#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <vector>

#include "numrange_lab/theory.hpp"
#include "numrange_lab/types.hpp"

namespace numrange_lab {

enum class RegionShape { polygon, segment, point };

// Closed convex region as a counterclockwise vertex list. Degenerate
// regions (segment, point) are flagged rather than rejected.
template <typename Real = double>
struct ConvexRegion {
  std::vector<Vec2<Real>> vertices;
  RegionShape shape = RegionShape::polygon;

  Real scale() const {
    Real s = 0;
    for (const auto& v : vertices) s = std::max(s, v.template lpNorm<Eigen::Infinity>());
    return s;
  }

  Real area() const {
    if (vertices.size() < 3) return 0;
    Real twice = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& p = vertices[i];
      const auto& q = vertices[(i + 1) % vertices.size()];
      twice += p.x() * q.y() - q.x() * p.y();
    }
    return twice / Real(2);
  }
};

namespace detail {

template <typename Real>
Real cross2(const Vec2<Real>& a, const Vec2<Real>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Distance from p to the segment [a, b].
template <typename Real>
Real point_segment_distance(const Vec2<Real>& p, const Vec2<Real>& a,
                            const Vec2<Real>& b) {
  Vec2<Real> ab = b - a;
  Real len2 = ab.squaredNorm();
  if (len2 == Real(0)) return (p - a).norm();
  Real t = std::clamp((p - a).dot(ab) / len2, Real(0), Real(1));
  return (p - (a + t * ab)).norm();
}

}  // namespace detail

// True when the point lies in the region, allowing `slack` outward.
template <typename Real>
bool region_contains(const ConvexRegion<Real>& region, const Vec2<Real>& p,
                     Real slack = Real(0)) {
  const auto& v = region.vertices;
  if (v.empty()) return false;
  if (region.shape == RegionShape::point) return (p - v[0]).norm() <= slack;
  if (region.shape == RegionShape::segment)
    return detail::point_segment_distance(p, v.front(), v.back()) <= slack;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2<Real>& a = v[i];
    const Vec2<Real>& b = v[(i + 1) % v.size()];
    Vec2<Real> edge = b - a;
    Real edge_len = edge.norm();
    if (edge_len == Real(0)) continue;
    // signed distance to the left of edge; negative means outside (CCW hull)
    Real s = detail::cross2<Real>(edge, Vec2<Real>(p - a)) / edge_len;
    if (s < -slack) return false;
  }
  return true;
}

// Distance from a point to a convex region (0 inside).
template <typename Real>
Real region_distance(const ConvexRegion<Real>& region, const Vec2<Real>& p) {
  const auto& v = region.vertices;
  if (v.empty()) throw contract_error("region_distance: empty region");
  if (v.size() == 1) return (p - v[0]).norm();
  if (region.shape == RegionShape::segment)
    return detail::point_segment_distance(p, v.front(), v.back());
  if (region_contains(region, p)) return Real(0);
  Real best = std::numeric_limits<Real>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    best = std::min(best, detail::point_segment_distance(p, v[i], v[(i + 1) % v.size()]));
  return best;
}

// Symmetric Hausdorff distance between convex regions. For convex sets the
// directed supremum of d(x, other) is attained at a vertex, so scanning
// vertices against boundary segments is exact.
template <typename Real>
Real hausdorff(const ConvexRegion<Real>& p, const ConvexRegion<Real>& q) {
  if (p.vertices.empty() || q.vertices.empty())
    throw contract_error("hausdorff: empty region");
  Real worst = 0;
  for (const auto& v : p.vertices) worst = std::max(worst, region_distance(q, v));
  for (const auto& v : q.vertices) worst = std::max(worst, region_distance(p, v));
  return worst;
}

// Andrew monotone chain; collinear interior points are dropped. Degenerate
// inputs give flagged point/segment regions.
template <typename Real>
ConvexRegion<Real> convex_hull(std::vector<Vec2<Real>> points) {
  if (points.empty()) throw contract_error("convex_hull: no points");
  std::sort(points.begin(), points.end(), [](const Vec2<Real>& a, const Vec2<Real>& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Vec2<Real>& a, const Vec2<Real>& b) {
                             return a.x() == b.x() && a.y() == b.y();
                           }),
               points.end());
  ConvexRegion<Real> region;
  if (points.size() == 1) {
    region.vertices = points;
    region.shape = RegionShape::point;
    return region;
  }
  auto build = [&](auto begin, auto end, std::vector<Vec2<Real>>& out) {
    for (auto it = begin; it != end; ++it) {
      while (out.size() >= 2 &&
             detail::cross2<Real>(Vec2<Real>(out[out.size() - 1] - out[out.size() - 2]),
                                  Vec2<Real>(*it - out[out.size() - 1])) <= Real(0))
        out.pop_back();
      out.push_back(*it);
    }
  };
  std::vector<Vec2<Real>> lower, upper;
  build(points.begin(), points.end(), lower);
  build(points.rbegin(), points.rend(), upper);
  lower.pop_back();
  upper.pop_back();
  region.vertices = std::move(lower);
  region.vertices.insert(region.vertices.end(), upper.begin(), upper.end());
  if (region.vertices.size() == 2) region.shape = RegionShape::segment;
  return region;
}

namespace detail {

template <typename Real>
struct HalfPlane {
  Vec2<Real> normal;  // unit outward normal: constraint normal . p <= offset
  Real offset;
  Real angle;  // atan2 of the normal
};

template <typename Real>
std::optional<Vec2<Real>> line_intersection(const HalfPlane<Real>& a,
                                            const HalfPlane<Real>& b) {
  Real det = cross2(a.normal, b.normal);
  if (std::abs(det) < Real(1e-14)) return std::nullopt;
  return Vec2<Real>((a.offset * b.normal.y() - b.offset * a.normal.y()) / det,
                    (a.normal.x() * b.offset - b.normal.x() * a.offset) / det);
}

}  // namespace detail

// Intersection of the half-planes {p : cos(theta_k) x - sin(theta_k) y <=
// values[k]}. Requires the normal directions to span the plane (max angular
// gap below pi). An empty intersection raises; a segment or point is
// flagged. Every returned vertex is re-verified against all constraints.
template <typename Real>
ConvexRegion<Real> halfplane_intersection(const std::vector<Real>& thetas,
                                          const std::vector<Real>& values) {
  if (thetas.size() != values.size())
    throw contract_error("halfplane_intersection: angle/value size mismatch");
  if (thetas.size() < 3)
    throw contract_error("halfplane_intersection: need at least 3 half-planes");
  for (Real v : values)
    if (!std::isfinite(v))
      throw contract_error("halfplane_intersection: support values must be finite");

  using HP = detail::HalfPlane<Real>;
  std::vector<HP> planes;
  planes.reserve(thetas.size());
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    Vec2<Real> n(std::cos(thetas[k]), -std::sin(thetas[k]));
    planes.push_back({n, values[k], std::atan2(n.y(), n.x())});
  }
  std::sort(planes.begin(), planes.end(),
            [](const HP& a, const HP& b) { return a.angle < b.angle; });

  // Duplicate directions: keep the tightest constraint.
  std::vector<HP> unique;
  for (const HP& h : planes) {
    if (!unique.empty() && std::abs(h.angle - unique.back().angle) < Real(1e-12)) {
      if (h.offset < unique.back().offset) unique.back() = h;
      continue;
    }
    unique.push_back(h);
  }
  Real max_gap = 0;
  for (std::size_t k = 0; k < unique.size(); ++k) {
    Real next = (k + 1 < unique.size()) ? unique[k + 1].angle
                                        : unique[0].angle + Real(2) * pi_v<Real>;
    max_gap = std::max(max_gap, next - unique[k].angle);
  }
  if (max_gap >= pi_v<Real>)
    throw contract_error("halfplane_intersection: directions must span the plane");

  Real scale = Real(1);
  for (const HP& h : unique) scale = std::max(scale, std::abs(h.offset));
  const Real eps = Real(1e-9) * scale;

  // Incremental deque over angle-sorted half-planes.
  auto outside = [&](const HP& h, const Vec2<Real>& p) {
    return h.normal.dot(p) > h.offset + eps;
  };
  std::deque<HP> deque_planes;
  std::deque<Vec2<Real>> deque_points;  // intersection of consecutive planes
  for (const HP& h : unique) {
    while (deque_planes.size() >= 2 && outside(h, deque_points.back())) {
      deque_planes.pop_back();
      deque_points.pop_back();
    }
    while (deque_planes.size() >= 2 && outside(h, deque_points.front())) {
      deque_planes.pop_front();
      deque_points.pop_front();
    }
    if (!deque_planes.empty()) {
      auto p = detail::line_intersection(deque_planes.back(), h);
      if (!p) {
        // Antiparallel normals with nothing between them: empty region.
        if (deque_planes.back().normal.dot(h.normal) < Real(0) &&
            -deque_planes.back().offset > h.offset + eps)
          throw geometry_error("halfplane_intersection: empty intersection");
        continue;  // parallel same-direction, looser: skip
      }
      deque_points.push_back(*p);
    }
    deque_planes.push_back(h);
  }
  // Wrap-around cleanup.
  for (;;) {
    bool changed = false;
    if (deque_planes.size() >= 3) {
      auto wrap = detail::line_intersection(deque_planes.back(), deque_planes.front());
      if (wrap) {
        if (outside(deque_planes.front(), deque_points.back())) {
          deque_planes.pop_back();
          deque_points.pop_back();
          changed = true;
        } else if (outside(deque_planes.back(), deque_points.front())) {
          deque_planes.pop_front();
          deque_points.pop_front();
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  if (deque_planes.size() < 3)
    throw geometry_error("halfplane_intersection: empty intersection");
  std::vector<Vec2<Real>> vertices(deque_points.begin(), deque_points.end());
  auto wrap = detail::line_intersection(deque_planes.back(), deque_planes.front());
  if (!wrap) throw geometry_error("halfplane_intersection: empty intersection");
  vertices.push_back(*wrap);

  // Verification pass: every vertex obeys every constraint.
  for (const auto& v : vertices)
    for (const HP& h : unique)
      if (h.normal.dot(v) > h.offset + Real(10) * eps)
        throw geometry_error("halfplane_intersection: inconsistent support values");

  // Collapse numerically coincident vertices; classify degeneracies.
  std::vector<Vec2<Real>> distinct;
  for (const auto& v : vertices) {
    bool dup = false;
    for (const auto& u : distinct)
      if ((u - v).norm() <= Real(1e-9) * scale) dup = true;
    if (!dup) distinct.push_back(v);
  }
  ConvexRegion<Real> region;
  if (distinct.size() <= 2 ||
      convex_hull(distinct).area() <= Real(1e-12) * scale * scale) {
    // Segment or point: report extreme points.
    auto hull = convex_hull(distinct);
    if (hull.vertices.size() <= 1) {
      region.vertices = hull.vertices;
      region.shape = RegionShape::point;
    } else {
      auto [lo, hi] = std::minmax_element(
          distinct.begin(), distinct.end(), [](const Vec2<Real>& a, const Vec2<Real>& b) {
            return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
          });
      region.vertices = {*lo, *hi};
      region.shape = (*lo - *hi).norm() <= Real(1e-9) * scale ? RegionShape::point
                                                              : RegionShape::segment;
      if (region.shape == RegionShape::point) region.vertices = {*lo};
    }
    return region;
  }
  region.vertices = std::move(distinct);
  region.shape = RegionShape::polygon;
  return region;
}

// Points on the droplet boundary via radial bisection from interior
// anchors. The two-component chiral droplet gets per-component anchors at
// (+-x0, 0); everything else is star-shaped about its center.
template <typename Real>
std::vector<Vec2<Real>> sample_droplet_boundary(const Droplet<Real>& droplet,
                                                std::size_t count) {
  if (count < 8) throw parameter_error("sample_droplet_boundary: count must be >= 8");

  std::vector<std::pair<Vec2<Real>, std::size_t>> anchors;
  // At the pinch threshold the origin lies on the boundary itself, so lobes
  // need their own anchors even while the droplet still counts as connected.
  if (droplet.kind == DropletKind::chiral_quartic &&
      !(droplet.evaluate(Real(0), Real(0)) < Real(0))) {
    auto [inner, outer] = chiral_real_crossings(droplet.tau, droplet.alpha);
    Real x0 = (inner + outer) / Real(2);
    anchors.push_back({Vec2<Real>(x0, 0), (count + 1) / 2});
    anchors.push_back({Vec2<Real>(-x0, 0), count / 2});
  } else {
    Vec2<Real> center(0, 0);
    if (droplet.kind == DropletKind::shifted_ellipse)
      center.x() = droplet.tau * (Real(2) + droplet.alpha);
    anchors.push_back({center, count});
  }

  std::vector<Vec2<Real>> points;
  points.reserve(count);
  for (const auto& [anchor, anchor_count] : anchors) {
    if (!(droplet.evaluate(anchor.x(), anchor.y()) < Real(0)))
      throw geometry_error("sample_droplet_boundary: anchor not interior");
    for (std::size_t k = 0; k < anchor_count; ++k) {
      Real phi = Real(2) * pi_v<Real> * Real(k) / Real(anchor_count);
      Vec2<Real> dir(std::cos(phi), std::sin(phi));
      // Bracket the boundary along the ray, then bisect the radius.
      Real lo = 0, hi = Real(0.5);
      int grow = 0;
      while (droplet.evaluate(anchor.x() + hi * dir.x(), anchor.y() + hi * dir.y()) <
             Real(0)) {
        lo = hi;
        hi *= Real(1.7);
        if (++grow > 80)
          throw geometry_error("sample_droplet_boundary: could not bracket boundary");
      }
      while (hi - lo > Real(1e-10)) {
        Real mid = (lo + hi) / Real(2);
        if (droplet.evaluate(anchor.x() + mid * dir.x(), anchor.y() + mid * dir.y()) <
            Real(0))
          lo = mid;
        else
          hi = mid;
      }
      Real r = (lo + hi) / Real(2);
      points.emplace_back(anchor.x() + r * dir.x(), anchor.y() + r * dir.y());
    }
  }
  return points;
}

// Width of the region along the real axis.
template <typename Real>
Real real_diameter(const ConvexRegion<Real>& region) {
  if (region.vertices.empty()) throw contract_error("real_diameter: empty region");
  Real lo = std::numeric_limits<Real>::infinity(), hi = -lo;
  for (const auto& v : region.vertices) {
    lo = std::min(lo, v.x());
    hi = std::max(hi, v.x());
  }
  return hi - lo;
}

}  // namespace numrange_lab
