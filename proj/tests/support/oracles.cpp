#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>

namespace courtmotion::testing {

namespace {

bool lex_less(const Vec2& a, const Vec2& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  return a.y() < b.y();
}

// Same geometric definition as the library's orientation test, written from
// the edge-test point of view.
int side_of(const Vec2& from, const Vec2& to, const Vec2& p) {
  const double ux = to.x() - from.x();
  const double uy = to.y() - from.y();
  const double vx = p.x() - from.x();
  const double vy = p.y() - from.y();
  const double c = ux * vy - uy * vx;
  const double scale = std::hypot(ux, uy) * std::hypot(vx, vy);
  if (std::abs(c) <= 1e-12 * scale) return 0;
  return c > 0.0 ? 1 : -1;
}

bool strictly_between(const Vec2& a, const Vec2& b, const Vec2& p) {
  const double t = (p - a).dot(b - a);
  return t > 0.0 && t < (b - a).squaredNorm();
}

}  // namespace

std::vector<Vec2> brute_force_hull(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) {
                          return a.x() == b.x() && a.y() == b.y();
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  // Edge (i, j) keeps the interior on its left.
  std::map<std::size_t, std::size_t> next;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool is_edge = true;
      for (std::size_t k = 0; k < n && is_edge; ++k) {
        if (k == i || k == j) continue;
        const int side = side_of(pts[i], pts[j], pts[k]);
        if (side < 0 || (side == 0 && !strictly_between(pts[i], pts[j], pts[k]))) {
          is_edge = false;
        }
      }
      if (is_edge) next[i] = j;
    }
  }
  if (next.empty()) return {};

  std::vector<Vec2> hull;
  const std::size_t start = next.begin()->first;  // smallest index = lexicographic minimum
  std::size_t at = start;
  do {
    hull.push_back(pts[at]);
    at = next.at(at);
  } while (at != start && hull.size() <= n);
  return hull;
}

double fan_triangulation_area(std::span<const Vec2> polygon) {
  if (polygon.size() < 3) return 0.0;
  double area = 0.0;
  for (std::size_t i = 1; i + 1 < polygon.size(); ++i) {
    const Vec2 u = polygon[i] - polygon[0];
    const Vec2 v = polygon[i + 1] - polygon[0];
    area += (u.x() * v.y() - u.y() * v.x()) / 2.0;
  }
  return std::abs(area);
}

std::vector<Vec2> normalize_cycle(std::vector<Vec2> cycle) {
  if (cycle.empty()) return cycle;
  std::size_t min_at = 0;
  for (std::size_t i = 1; i < cycle.size(); ++i) {
    if (lex_less(cycle[i], cycle[min_at])) min_at = i;
  }
  std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(min_at), cycle.end());
  return cycle;
}

std::pair<double, std::vector<int>> optimal_two_partition(const Eigen::MatrixXd& rows) {
  const std::size_t n = static_cast<std::size_t>(rows.rows());
  const Eigen::VectorXd total_sum = rows.colwise().sum();
  double total_sq = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) total_sq += rows.row(i).squaredNorm();

  // Point n-1 is pinned to side B, which kills the label-swap symmetry; the
  // remaining n-1 memberships are scanned in Gray-code order so each step
  // flips a single point.
  Eigen::VectorXd sum_a = Eigen::VectorXd::Zero(rows.cols());
  double sq_a = 0.0;
  std::size_t cnt_a = 0;
  std::uint64_t gray = 0;

  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  const std::uint64_t limit = 1ULL << (n - 1);
  for (std::uint64_t i = 1; i < limit; ++i) {
    const std::uint64_t next_gray = i ^ (i >> 1);
    const std::uint64_t flipped = gray ^ next_gray;
    const auto bit = static_cast<Eigen::Index>(__builtin_ctzll(flipped));
    if (next_gray & flipped) {
      sum_a += rows.row(bit).transpose();
      sq_a += rows.row(bit).squaredNorm();
      ++cnt_a;
    } else {
      sum_a -= rows.row(bit).transpose();
      sq_a -= rows.row(bit).squaredNorm();
      --cnt_a;
    }
    gray = next_gray;
    if (cnt_a == 0) continue;

    const std::size_t cnt_b = n - cnt_a;
    const Eigen::VectorXd sum_b = total_sum - sum_a;
    const double sq_b = total_sq - sq_a;
    const double wd = (sq_a - sum_a.squaredNorm() / static_cast<double>(cnt_a)) +
                      (sq_b - sum_b.squaredNorm() / static_cast<double>(cnt_b));
    if (wd < best) {
      best = wd;
      best_mask = gray;
    }
  }

  // Gray bit i set means point i sits on side A (0); point n-1 stays on B.
  std::vector<int> side(n, 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (best_mask & (1ULL << i)) side[i] = 0;
  }
  return {best, side};
}

std::vector<std::ptrdiff_t> brute_force_join(std::span<const Frame> frames,
                                             std::span<const GameEvent> events,
                                             std::int64_t window_ms) {
  std::vector<std::ptrdiff_t> attach;
  attach.reserve(events.size());
  for (const GameEvent& e : events) {
    std::ptrdiff_t best = -1;
    std::int64_t best_dt = 0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const std::int64_t dt = std::llabs(frames[i].t_ms - e.t_ms);
      if (best < 0 || dt < best_dt) {
        best = static_cast<std::ptrdiff_t>(i);
        best_dt = dt;
      }
    }
    if (best < 0 || best_dt > window_ms) {
      attach.push_back(-1);
    } else {
      attach.push_back(best);
    }
  }
  return attach;
}

}  // namespace courtmotion::testing
