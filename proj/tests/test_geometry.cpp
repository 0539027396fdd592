#include "courtmotion/geometry.hpp"

#include "courtmotion/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace courtmotion;
using courtmotion::testing::TestRng;

namespace {

Frame make_frame(std::initializer_list<std::pair<const char*, Vec2>> entries,
                 std::int64_t t_ms = 0) {
  Frame f;
  f.t_ms = t_ms;
  for (const auto& [tag, pos] : entries) f.positions.emplace(TagId(tag), pos);
  return f;
}

}  // namespace

TEST_CASE("pairwise distances: 3-4-5 pair") {
  const Frame f = make_frame({{"1", {0.0, 0.0}}, {"2", {3.0, 4.0}}});
  const DistanceVector dv = pairwise_distances(f);
  REQUIRE(dv.pairs.size() == 1);
  CHECK(dv.pairs[0].distance_m == doctest::Approx(5.0));
}

TEST_CASE("pairwise distances: five players give ten pairs in canonical order") {
  const Frame f = make_frame({{"7", {1.0, 1.0}},
                              {"11", {2.0, 1.0}},
                              {"2", {3.0, 2.0}},
                              {"23", {4.0, 3.0}},
                              {"5", {5.0, 5.0}}});
  const DistanceVector dv = pairwise_distances(f);
  REQUIRE(dv.pairs.size() == 10);
  for (const auto& p : dv.pairs) {
    CHECK(p.a < p.b);
  }
  CHECK(std::is_sorted(dv.pairs.begin(), dv.pairs.end(), [](const auto& x, const auto& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }));
}

TEST_CASE("pairwise distances: unit square corners plus center vs hand-computed multiset") {
  const Frame f = make_frame({{"1", {0.0, 0.0}},
                              {"2", {1.0, 0.0}},
                              {"3", {1.0, 1.0}},
                              {"4", {0.0, 1.0}},
                              {"5", {0.5, 0.5}}});
  std::vector<double> got;
  for (const auto& p : pairwise_distances(f).pairs) got.push_back(p.distance_m);
  std::sort(got.begin(), got.end());

  // Brute-force double loop over the same positions.
  std::vector<Vec2> pts;
  for (const auto& [tag, pos] : f.positions) pts.push_back(pos);
  std::vector<double> expect;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      expect.push_back((pts[j] - pts[i]).norm());
    }
  }
  std::sort(expect.begin(), expect.end());
  REQUIRE(got.size() == expect.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  }
  // Hand check: four sides, two diagonals, four half-diagonals.
  const double s2 = std::sqrt(2.0);
  const std::vector<double> known = {s2 / 2, s2 / 2, s2 / 2, s2 / 2, 1, 1, 1, 1, s2, s2};
  std::vector<double> known_sorted = known;
  std::sort(known_sorted.begin(), known_sorted.end());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i] == doctest::Approx(known_sorted[i]).epsilon(1e-12));
  }
}

TEST_CASE("pairwise distances: single player is too few") {
  CHECK_THROWS_AS(pairwise_distances(make_frame({{"1", {0.0, 0.0}}})), TooFewPlayers);
}

TEST_CASE("mean distance") {
  DistanceVector dv;
  dv.pairs = {{TagId("1"), TagId("2"), 5.0}};
  CHECK(mean_distance(dv) == doctest::Approx(5.0));
  dv.pairs = {{TagId("1"), TagId("2"), 3.0},
              {TagId("1"), TagId("3"), 4.0},
              {TagId("2"), TagId("3"), 5.0}};
  CHECK(mean_distance(dv) == doctest::Approx(4.0));
  dv.pairs.clear();
  CHECK_THROWS_AS(mean_distance(dv), EmptyVector);
}

TEST_CASE("convex hull: square with interior point") {
  const std::vector<Vec2> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  const std::vector<Vec2> hull = convex_hull(pts);
  REQUIRE(hull.size() == 4);
  for (const Vec2& v : hull) {
    CHECK((std::abs(v.x() - 0.5) + std::abs(v.y() - 0.5)) > 0.9);  // no interior point
  }
}

TEST_CASE("convex hull: collinear points degenerate to endpoints") {
  const std::vector<Vec2> pts = {{0, 0}, {1, 1}, {2, 2}};
  const std::vector<Vec2> hull = convex_hull(pts);
  REQUIRE(hull.size() == 2);
  CHECK(hull[0].x() == 0.0);
  CHECK(hull[1].x() == 2.0);
}

TEST_CASE("convex hull: matches brute-force oracle on random discs") {
  TestRng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec2> pts;
    while (pts.size() < 100) {
      const Vec2 p(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      if (p.norm() <= 1.0) pts.push_back(p);
    }
    const auto got = testing::normalize_cycle(convex_hull(pts));
    const auto expect = testing::normalize_cycle(testing::brute_force_hull(pts));
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].x() == expect[i].x());
      CHECK(got[i].y() == expect[i].y());
    }
  }
}

TEST_CASE("polygon area: unit square, degenerate sets, right triangle") {
  const std::vector<Vec2> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(polygon_area(square) == doctest::Approx(1.0));
  const std::vector<Vec2> segment = {{0, 0}, {2, 2}};
  CHECK(polygon_area(segment) == 0.0);
  const std::vector<Vec2> point = {{1, 1}};
  CHECK(polygon_area(point) == 0.0);
  const std::vector<Vec2> triangle = {{0, 0}, {4, 0}, {0, 3}};
  CHECK(polygon_area(triangle) == doctest::Approx(6.0));
}

TEST_CASE("hull series: empty, constant, scaled") {
  CHECK(hull_series({}).empty());

  const Frame unit = make_frame(
      {{"1", {0, 0}}, {"2", {1, 0}}, {"3", {1, 1}}, {"4", {0, 1}}, {"5", {0.5, 0.5}}});
  std::vector<Frame> frames(10, unit);
  const auto series = hull_series(frames);
  REQUIRE(series.size() == 10);
  for (const auto& m : series) {
    CHECK(m.area_m2 == doctest::Approx(1.0));
    CHECK(m.centroid.x() == doctest::Approx(0.5));
  }

  Frame scaled = unit;
  for (auto& [tag, pos] : scaled.positions) pos *= 2.0;
  const auto two = hull_series(std::vector<Frame>{unit, scaled});
  CHECK(two[0].area_m2 == doctest::Approx(1.0));
  CHECK(two[1].area_m2 == doctest::Approx(4.0));
}

TEST_CASE("hull area: translation invariant, scales quadratically") {
  TestRng rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = testing::random_points(rng, 8, 0.0, 28.0, 0.0, 15.0);
    const double base = polygon_area(convex_hull(pts));

    const Vec2 shift(rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0));
    const double s = rng.uniform(0.1, 3.0);
    std::vector<Vec2> moved;
    std::vector<Vec2> scaled;
    for (const Vec2& p : pts) {
      moved.push_back(p + shift);
      scaled.push_back(s * p);
    }
    CHECK(polygon_area(convex_hull(moved)) == doctest::Approx(base).epsilon(1e-9));
    CHECK(polygon_area(convex_hull(scaled)) == doctest::Approx(s * s * base).epsilon(1e-9));
  }
}

TEST_CASE("hull area is bounded by the court when points are inside it") {
  TestRng rng(77);
  const CourtSpec court;
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = testing::random_points(rng, 5, 0.0, court.length_m, 0.0, court.width_m);
    CHECK(polygon_area(convex_hull(pts)) <= court.length_m * court.width_m);
  }
}

TEST_CASE("hull monotonicity: adding points never shrinks the hull") {
  TestRng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto all = testing::random_points(rng, 12, 0.0, 10.0, 0.0, 10.0);
    const std::vector<Vec2> subset(all.begin(), all.begin() + 6);
    CHECK(polygon_area(convex_hull(all)) >=
          polygon_area(convex_hull(subset)) - 1e-12);
  }
}

TEST_CASE("every point lies inside or on its hull") {
  TestRng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = testing::random_points(rng, 5, 0.0, 28.0, 0.0, 15.0);
    const auto hull = convex_hull(pts);
    for (const Vec2& p : pts) {
      CHECK(point_in_convex_polygon(p, hull));
    }
  }
}

TEST_CASE("mean distance is invariant to player relabeling") {
  const Frame a = make_frame(
      {{"1", {0, 0}}, {"2", {3, 1}}, {"3", {5, 5}}, {"4", {8, 2}}, {"5", {2, 7}}});
  Frame b;
  b.t_ms = a.t_ms;
  const char* renames[] = {"9", "42", "3", "101", "x"};
  std::size_t i = 0;
  for (const auto& [tag, pos] : a.positions) b.positions.emplace(TagId(renames[i++]), pos);
  CHECK(mean_distance(pairwise_distances(a)) ==
        doctest::Approx(mean_distance(pairwise_distances(b))).epsilon(1e-12));
}
