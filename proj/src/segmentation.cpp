#include "courtmotion/segmentation.hpp"

#include "courtmotion/errors.hpp"
#include "courtmotion/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace courtmotion {

const char* to_string(Play play) {
  return play == Play::Offense ? "offense" : "defense";
}

std::vector<PlayLabel> label_frames(std::span<const Frame> frames, const CourtSpec& court,
                                    const std::function<int(std::int64_t)>& period_of) {
  std::vector<PlayLabel> labels;
  labels.reserve(frames.size());
  const double mid_x = court.length_m / 2.0;
  for (const Frame& frame : frames) {
    const int period = period_of(frame.t_ms);
    const AttackDirection dir = court.attack_in(period);
    const double cx = frame_centroid(frame).x();
    // Strict inequality: a centroid exactly on the mid-line is Defense.
    const bool offense =
        dir == AttackDirection::TowardPositiveX ? cx > mid_x : cx < mid_x;
    labels.push_back({frame.t_ms, offense ? Play::Offense : Play::Defense});
  }
  return labels;
}

std::vector<PlayInterval> segment_plays(std::span<const PlayLabel> labels,
                                        std::int64_t min_duration_ms) {
  std::vector<PlayInterval> runs;
  if (labels.empty()) return runs;

  // Maximal runs; each ends where the next begins, the last at the final label.
  for (const PlayLabel& l : labels) {
    if (runs.empty() || runs.back().label != l.label) {
      if (!runs.empty()) runs.back().end_ms = l.t_ms;
      runs.push_back({l.t_ms, l.t_ms, l.label});
    }
  }
  runs.back().end_ms = labels.back().t_ms;

  // A short leading run has no preceding interval; give it to the following one.
  while (runs.size() > 1 && runs.front().end_ms - runs.front().start_ms < min_duration_ms) {
    runs[1].start_ms = runs[0].start_ms;
    runs.erase(runs.begin());
  }

  std::vector<PlayInterval> out;
  out.reserve(runs.size());
  out.push_back(runs.front());
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const PlayInterval& run = runs[i];
    const bool short_run = run.end_ms - run.start_ms < min_duration_ms;
    if (short_run || run.label == out.back().label) {
      out.back().end_ms = run.end_ms;  // absorb, keeping the preceding label
    } else {
      out.push_back(run);
    }
  }
  return out;
}

namespace {

// Type-7 quantile: linear interpolation between closest ranks.
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.size() == 1) return sorted.front();
  const double h = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double frame_metric(const Frame& frame, SpacingMetric metric) {
  if (metric == SpacingMetric::MeanDistance) {
    return mean_distance(pairwise_distances(frame));
  }
  std::vector<Vec2> points;
  points.reserve(frame.positions.size());
  for (const auto& [tag, pos] : frame.positions) points.push_back(pos);
  return polygon_area(convex_hull(points));
}

}  // namespace

std::map<Play, SpacingSummary> spacing_summary(std::span<const Frame> frames,
                                               std::span<const PlayLabel> labels,
                                               SpacingMetric metric) {
  if (frames.size() != labels.size()) {
    throw Misaligned("frames and labels differ in length");
  }
  std::map<Play, std::vector<double>> values;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].t_ms != labels[i].t_ms) {
      throw Misaligned("frame at " + std::to_string(frames[i].t_ms) +
                       " ms labeled at " + std::to_string(labels[i].t_ms) + " ms");
    }
    values[labels[i].label].push_back(frame_metric(frames[i], metric));
  }

  std::map<Play, SpacingSummary> out;
  for (auto& [play, v] : values) {
    std::sort(v.begin(), v.end());
    SpacingSummary s;
    s.label = play;
    s.metric = metric;
    s.min = v.front();
    s.q1 = quantile(v, 0.25);
    s.median = quantile(v, 0.5);
    s.q3 = quantile(v, 0.75);
    s.max = v.back();
    double sum = 0.0;
    for (double x : v) sum += x;
    s.mean = sum / static_cast<double>(v.size());
    out.emplace(play, s);
  }
  return out;
}

}  // namespace courtmotion
