#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace courtmotion::testing {

double TestRng::gauss(double sigma) {
  if (have_spare_) {
    have_spare_ = false;
    return sigma * spare_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
  have_spare_ = true;
  return sigma * mag * std::cos(2.0 * std::numbers::pi * u2);
}

const std::array<Vec2, 5>& pentagon_offsets() {
  // cos/sin of 90 + 72k degrees, written out so the fixture never touches
  // transcendentals.
  static const std::array<Vec2, 5> offsets = {
      Vec2(0.0, 1.0),
      Vec2(-0.9510565162951535, 0.3090169943749474),
      Vec2(-0.5877852522924731, -0.8090169943749475),
      Vec2(0.5877852522924731, -0.8090169943749475),
      Vec2(0.9510565162951535, 0.3090169943749474),
  };
  return offsets;
}

double pentagon_unit_mean_distance() {
  const auto& p = pentagon_offsets();
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      sum += (p[j] - p[i]).norm();
      ++count;
    }
  }
  return sum / count;
}

namespace {

Vec2 play_center(const MatchScript& script, int play) {
  const bool offense = play % 2 == 0;
  const double x = offense ? script.court.length_m * 0.75 : script.court.length_m * 0.25;
  return {x, script.court.width_m / 2.0};
}

double play_radius(const MatchScript& script, int play) {
  const double target =
      play % 2 == 0 ? script.offense_mean_distance : script.defense_mean_distance;
  return target / pentagon_unit_mean_distance();
}

}  // namespace

FormationState formation_at(const MatchScript& script, std::int64_t t_ms) {
  const std::int64_t total = script.total_ms();
  t_ms = std::clamp<std::int64_t>(t_ms, 0, total - 1);
  const int play = static_cast<int>(t_ms / script.play_ms);
  const std::int64_t within = t_ms - static_cast<std::int64_t>(play) * script.play_ms;
  const std::int64_t hold = script.play_ms - script.transition_ms;

  FormationState state{play_center(script, play), play_radius(script, play)};
  if (play + 1 < script.plays && within > hold && script.transition_ms > 0) {
    const double alpha =
        static_cast<double>(within - hold) / static_cast<double>(script.transition_ms);
    state.center += alpha * (play_center(script, play + 1) - state.center);
    state.radius += alpha * (play_radius(script, play + 1) - state.radius);
  }
  return state;
}

std::vector<SensorSample> scripted_match_samples(const MatchScript& script) {
  std::vector<SensorSample> samples;
  const std::int64_t total = script.total_ms();
  for (std::size_t i = 0; i < script.roster.size(); ++i) {
    TestRng rng(script.seed * 1000003 + i);
    for (std::int64_t t = static_cast<std::int64_t>(i) * 27; t < total;
         t += script.sample_period_ms) {
      const FormationState f = formation_at(script, t);
      const Vec2 pos = f.center + f.radius * pentagon_offsets()[i];
      samples.push_back({script.roster[i], t,
                         pos.x() + rng.uniform(-script.jitter, script.jitter),
                         pos.y() + rng.uniform(-script.jitter, script.jitter)});
    }
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const SensorSample& a, const SensorSample& b) {
                     return a.timestamp_ms < b.timestamp_ms;
                   });
  return samples;
}

std::vector<Frame> scripted_match_frames(const MatchScript& script, double grid_hz) {
  std::vector<Frame> frames;
  const std::int64_t total = script.total_ms();
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t t = std::llround(static_cast<double>(k) * 1000.0 / grid_hz);
    if (t >= total) break;
    const FormationState f = formation_at(script, t);
    Frame frame;
    frame.t_ms = t;
    for (std::size_t i = 0; i < script.roster.size(); ++i) {
      frame.positions.emplace(script.roster[i], f.center + f.radius * pentagon_offsets()[i]);
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

void write_sensor_csv(const std::vector<SensorSample>& samples,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << "tagid,timestamp_ms,klm_x,klm_y\n";
  char buf[128];
  for (const SensorSample& s : samples) {
    std::snprintf(buf, sizeof buf, "%s,%lld,%.17g,%.17g\n", s.tag.str().c_str(),
                  static_cast<long long>(s.timestamp_ms), s.x, s.y);
    out << buf;
  }
}

Eigen::MatrixXd gaussian_blobs(const std::vector<Eigen::VectorXd>& centers, int per_blob,
                               double sigma, std::uint64_t seed, std::vector<int>* truth) {
  const Eigen::Index dim = centers.front().size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(centers.size()) * per_blob, dim);
  if (truth != nullptr) truth->clear();
  TestRng rng(seed);
  Eigen::Index row = 0;
  for (std::size_t b = 0; b < centers.size(); ++b) {
    for (int i = 0; i < per_blob; ++i, ++row) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        out(row, c) = centers[b](c) + rng.gauss(sigma);
      }
      if (truth != nullptr) truth->push_back(static_cast<int>(b));
    }
  }
  return out;
}

FeatureMatrix features_from_matrix(const Eigen::MatrixXd& values) {
  FeatureMatrix fm;
  fm.values = values;
  fm.frame_ts.reserve(static_cast<std::size_t>(values.rows()));
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    fm.frame_ts.push_back(i * 200);
  }
  return fm;
}

std::vector<Frame> crosstab_frames(int per_cluster, double offense_fraction_a,
                                   double offense_fraction_b) {
  const CourtSpec court;
  const std::vector<TagId> roster = {TagId("1"), TagId("2"), TagId("3"), TagId("4"),
                                     TagId("5")};
  const Vec2 offense_center(court.length_m * 0.75, court.width_m / 2.0);
  const Vec2 defense_center(court.length_m * 0.25, court.width_m / 2.0);

  std::vector<Frame> frames;
  std::int64_t t = 0;
  const auto emit = [&](double radius, bool offense, int idx) {
    Frame frame;
    frame.t_ms = t;
    t += 200;
    // Small deterministic wobble keeps rows within a blob distinct.
    const double r = radius + 0.01 * static_cast<double>((idx * 37) % 100) / 100.0;
    const Vec2& center = offense ? offense_center : defense_center;
    for (std::size_t i = 0; i < roster.size(); ++i) {
      frame.positions.emplace(roster[i], center + r * pentagon_offsets()[i]);
    }
    frames.push_back(std::move(frame));
  };

  const int offense_a = static_cast<int>(std::lround(offense_fraction_a * per_cluster));
  for (int i = 0; i < per_cluster; ++i) emit(4.0, i < offense_a, i);
  const int offense_b = static_cast<int>(std::lround(offense_fraction_b * per_cluster));
  for (int i = 0; i < per_cluster; ++i) emit(2.0, i < offense_b, i);
  return frames;
}

std::vector<Vec2> random_points(TestRng& rng, int n, double lo_x, double hi_x, double lo_y,
                                double hi_y) {
  std::vector<Vec2> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    points.emplace_back(rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y));
  }
  return points;
}

CvTrack constant_velocity_track(std::uint64_t seed, int steps, double sigma) {
  CvTrack track;
  track.noisy.tag = TagId("1");
  TestRng rng(seed);
  for (int i = 0; i < steps; ++i) {
    const double t_s = i * 0.1;
    const Vec2 truth(2.0 + t_s, 7.5);
    track.truth.push_back(truth);
    // Draw in a pinned order; an argument list would leave it unspecified.
    const double nx = rng.gauss(sigma);
    const double ny = rng.gauss(sigma);
    track.noisy.samples.push_back({static_cast<std::int64_t>(i) * 100, truth + Vec2(nx, ny)});
  }
  return track;
}

}  // namespace courtmotion::testing
