#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace courtmotion {

using Vec2 = Eigen::Vector2d;

// Player tag identifier, kept as the raw token from the sensor feed.
// Ordering is numeric-aware: pure digit ids compare by value ("7" < "10"),
// anything else falls back to lexicographic order. This ordering defines the
// canonical pair order used throughout the feature pipeline.
class TagId {
 public:
  TagId() = default;
  explicit TagId(std::string id) : id_(std::move(id)) {}
  explicit TagId(std::int64_t n) : id_(std::to_string(n)) {}

  const std::string& str() const { return id_; }
  bool empty() const { return id_.empty(); }

  friend bool operator==(const TagId& a, const TagId& b) { return a.id_ == b.id_; }
  friend bool operator!=(const TagId& a, const TagId& b) { return a.id_ != b.id_; }

 private:
  std::string id_;
};

bool operator<(const TagId& a, const TagId& b);

// One raw tag reading: who, when (ms since stream epoch), where (meters).
struct SensorSample {
  TagId tag;
  std::int64_t timestamp_ms = 0;
  double x = 0.0;
  double y = 0.0;
};

struct TrajectoryPoint {
  std::int64_t t_ms = 0;
  Vec2 pos{0.0, 0.0};
};

// Time-ordered samples of one player; timestamps strictly increasing.
struct Trajectory {
  TagId tag;
  std::vector<TrajectoryPoint> samples;
};

struct StreamStats {
  std::size_t total_samples = 0;
  std::map<TagId, std::size_t> per_player_counts;
  // Mean inter-sample interval; only players with >= 2 samples have an entry.
  std::map<TagId, double> mean_interval_ms;
  // Pooled mean over all consecutive same-player intervals.
  double overall_mean_interval_ms = 0.0;
  // total_samples / union time span in seconds; 0 when the span is empty.
  double observed_rate_hz = 0.0;
};

// One synchronized instant with positions of all on-court players.
struct Frame {
  std::int64_t t_ms = 0;
  std::map<TagId, Vec2> positions;
};

enum class AttackDirection { TowardPositiveX, TowardNegativeX };

struct CourtSpec {
  double length_m = 28.0;
  double width_m = 15.0;
  // Attack direction per period (1-based); periods beyond the list cycle
  // through it, so a single entry means the team always attacks the same way.
  std::vector<AttackDirection> attack_by_period{AttackDirection::TowardPositiveX};

  AttackDirection attack_in(int period) const;
};

// Arithmetic mean of the player positions of one frame.
Vec2 frame_centroid(const Frame& frame);

}  // namespace courtmotion
