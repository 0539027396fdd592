#pragma once

#include "courtmotion/phases.hpp"
#include "courtmotion/types.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

namespace courtmotion::testing {

// mt19937_64 with hand-scaled draws so fixtures are bit-stable; std::
// distributions are implementation-defined.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform01() * static_cast<double>(n)));
  }
  double gauss(double sigma);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Regular pentagon around the origin, radius 1, first vertex on +y.
const std::array<Vec2, 5>& pentagon_offsets();

// Mean pairwise distance of the unit-radius regular pentagon (~1.5388).
double pentagon_unit_mean_distance();

// Scripted match: alternating offense/defense plays of a five-player pentagon
// formation whose radius is calibrated so the mean pairwise distance hits the
// requested targets. The formation holds its center for most of each play and
// runs to the next center during the final transition_ms.
struct MatchScript {
  CourtSpec court;
  std::vector<TagId> roster = {TagId("5"), TagId("7"), TagId("9"), TagId("11"), TagId("23")};
  double offense_mean_distance = 7.25;
  double defense_mean_distance = 5.68;
  double jitter = 0.25;  // uniform +/- jitter per coordinate, sensor samples only
  std::int64_t play_ms = 20000;
  int plays = 8;  // offense first, then alternating
  std::int64_t transition_ms = 2000;
  std::int64_t sample_period_ms = 162;
  std::uint64_t seed = 7;

  std::int64_t total_ms() const { return static_cast<std::int64_t>(plays) * play_ms; }
};

struct FormationState {
  Vec2 center;
  double radius = 0.0;
};

FormationState formation_at(const MatchScript& script, std::int64_t t_ms);

// Asynchronous per-player sensor samples (one stream per roster tag, offset
// by 27 ms each) with jitter.
std::vector<SensorSample> scripted_match_samples(const MatchScript& script);

// Jitter-free frames straight from the script at the given grid frequency.
std::vector<Frame> scripted_match_frames(const MatchScript& script, double grid_hz);

void write_sensor_csv(const std::vector<SensorSample>& samples,
                      const std::filesystem::path& path);

// Row-major blob sample matrix, blob-major order; truth gets the blob index
// per row when non-null.
Eigen::MatrixXd gaussian_blobs(const std::vector<Eigen::VectorXd>& centers, int per_blob,
                               double sigma, std::uint64_t seed, std::vector<int>* truth);

// Wraps a raw matrix as a FeatureMatrix with synthetic timestamps.
FeatureMatrix features_from_matrix(const Eigen::MatrixXd& values);

// Frames for the crosstab fixture: two radii (so two feature blobs), each
// placed in the attacking half for the given fraction of its frames.
std::vector<Frame> crosstab_frames(int per_cluster, double offense_fraction_a,
                                   double offense_fraction_b);

std::vector<Vec2> random_points(TestRng& rng, int n, double lo_x, double hi_x, double lo_y,
                                double hi_y);

// Constant-velocity ground truth (1 m/s along x at 10 Hz) with additive
// Gaussian position noise.
struct CvTrack {
  Trajectory noisy;
  std::vector<Vec2> truth;
};

CvTrack constant_velocity_track(std::uint64_t seed, int steps = 200, double sigma = 0.3);

}  // namespace courtmotion::testing
