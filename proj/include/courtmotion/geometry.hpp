#pragma once

#include "courtmotion/types.hpp"

#include <span>
#include <vector>

namespace courtmotion {

struct DistancePair {
  TagId a;
  TagId b;
  double distance_m = 0.0;
};

// All unordered player pairs of one frame, a < b, ordered by (a, b).
struct DistanceVector {
  std::int64_t t_ms = 0;
  std::vector<DistancePair> pairs;
};

struct HullMetrics {
  std::int64_t t_ms = 0;
  std::vector<Vec2> hull_vertices;  // counter-clockwise, strict corners only
  double area_m2 = 0.0;
  Vec2 centroid{0.0, 0.0};  // mean of player positions, not of hull vertices
};

// Sign of the turn o->a->b: +1 left, -1 right, 0 when the cross product is
// within a 1e-12 relative epsilon of zero.
int orientation(const Vec2& o, const Vec2& a, const Vec2& b);

// Euclidean distance for every unordered pair in canonical tag order.
// Throws TooFewPlayers for frames with fewer than two players.
DistanceVector pairwise_distances(const Frame& frame);

double mean_distance(const DistanceVector& dv);

// Andrew's monotone chain, counter-clockwise output. Collinear boundary
// points are excluded; degenerate inputs yield the point or the two segment
// endpoints.
std::vector<Vec2> convex_hull(std::span<const Vec2> points);

// Shoelace formula, absolute value; fewer than three vertices give 0.
double polygon_area(std::span<const Vec2> vertices);

// Inside-or-on test against a counter-clockwise convex polygon.
bool point_in_convex_polygon(const Vec2& p, std::span<const Vec2> hull);

std::vector<HullMetrics> hull_series(std::span<const Frame> frames);

}  // namespace courtmotion
