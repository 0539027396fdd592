#include "courtmotion/geometry.hpp"

#include "courtmotion/errors.hpp"

#include <algorithm>
#include <cmath>

namespace courtmotion {

namespace {

constexpr double kOrientationEps = 1e-12;

// Cross product of (a - o) x (b - o) together with the scale used for the
// relative zero test.
double cross(const Vec2& o, const Vec2& a, const Vec2& b, double& scale) {
  const Vec2 u = a - o;
  const Vec2 v = b - o;
  scale = u.norm() * v.norm();
  return u.x() * v.y() - u.y() * v.x();
}

bool lex_less(const Vec2& a, const Vec2& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  return a.y() < b.y();
}

}  // namespace

int orientation(const Vec2& o, const Vec2& a, const Vec2& b) {
  double scale = 0.0;
  const double c = cross(o, a, b, scale);
  if (std::abs(c) <= kOrientationEps * scale) return 0;
  return c > 0.0 ? 1 : -1;
}

DistanceVector pairwise_distances(const Frame& frame) {
  if (frame.positions.size() < 2) {
    throw TooFewPlayers();
  }
  DistanceVector dv;
  dv.t_ms = frame.t_ms;
  dv.pairs.reserve(frame.positions.size() * (frame.positions.size() - 1) / 2);
  for (auto it = frame.positions.begin(); it != frame.positions.end(); ++it) {
    for (auto jt = std::next(it); jt != frame.positions.end(); ++jt) {
      dv.pairs.push_back({it->first, jt->first, (jt->second - it->second).norm()});
    }
  }
  return dv;
}

double mean_distance(const DistanceVector& dv) {
  if (dv.pairs.empty()) {
    throw EmptyVector();
  }
  double sum = 0.0;
  for (const auto& p : dv.pairs) sum += p.distance_m;
  return sum / static_cast<double>(dv.pairs.size());
}

std::vector<Vec2> convex_hull(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) {
                          return a.x() == b.x() && a.y() == b.y();
                        }),
            pts.end());

  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  std::vector<Vec2> hull(2 * n);
  std::size_t h = 0;
  // Lower chain, then upper; strict left turns only, so collinear boundary
  // points drop out.
  for (std::size_t i = 0; i < n; ++i) {
    while (h >= 2 && orientation(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
    hull[h++] = pts[i];
  }
  const std::size_t lower = h + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (h >= lower && orientation(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
    hull[h++] = pts[i];
  }
  hull.resize(h - 1);  // last point repeats the first
  return hull;
}

double polygon_area(std::span<const Vec2> vertices) {
  if (vertices.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % vertices.size()];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return std::abs(twice) / 2.0;
}

bool point_in_convex_polygon(const Vec2& p, std::span<const Vec2> hull) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return (p - hull[0]).norm() <= 1e-9;
  if (hull.size() == 2) {
    // On-segment test for the degenerate hull.
    if (orientation(hull[0], hull[1], p) != 0) return false;
    const double t = (p - hull[0]).dot(hull[1] - hull[0]);
    return t >= 0.0 && t <= (hull[1] - hull[0]).squaredNorm();
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (orientation(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
  }
  return true;
}

std::vector<HullMetrics> hull_series(std::span<const Frame> frames) {
  std::vector<HullMetrics> series;
  series.reserve(frames.size());
  for (const Frame& frame : frames) {
    std::vector<Vec2> points;
    points.reserve(frame.positions.size());
    for (const auto& [tag, pos] : frame.positions) points.push_back(pos);
    HullMetrics m;
    m.t_ms = frame.t_ms;
    m.hull_vertices = convex_hull(points);
    m.area_m2 = polygon_area(m.hull_vertices);
    m.centroid = frame_centroid(frame);
    series.push_back(std::move(m));
  }
  return series;
}

}  // namespace courtmotion
