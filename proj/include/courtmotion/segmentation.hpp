#pragma once

#include "courtmotion/types.hpp"

#include <functional>
#include <map>
#include <span>
#include <vector>

namespace courtmotion {

enum class Play { Offense, Defense };

const char* to_string(Play play);

struct PlayLabel {
  std::int64_t t_ms = 0;
  Play label = Play::Defense;
};

// Half-open in spirit: an interval ends where the next one starts; the last
// one ends at the final label timestamp.
struct PlayInterval {
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  Play label = Play::Defense;
};

enum class SpacingMetric { MeanDistance, HullArea };

struct SpacingSummary {
  Play label = Play::Defense;
  SpacingMetric metric = SpacingMetric::MeanDistance;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Offense when the team centroid's x lies in the half attacked during that
// period; a centroid exactly on the midline counts as Defense. period_of must
// yield a period >= 1 for every frame timestamp (MissingPeriod otherwise).
std::vector<PlayLabel> label_frames(std::span<const Frame> frames, const CourtSpec& court,
                                    const std::function<int(std::int64_t)>& period_of);

// Maximal runs of equal label; interior runs shorter than min_duration_ms are
// absorbed into the preceding interval (a short leading run joins the
// following one), then adjacent equal labels coalesce.
std::vector<PlayInterval> segment_plays(std::span<const PlayLabel> labels,
                                        std::int64_t min_duration_ms);

// Six order statistics of the chosen metric per label. Quantiles use linear
// interpolation between closest ranks (type 7). Throws Misaligned when frames
// and labels disagree on timestamps.
std::map<Play, SpacingSummary> spacing_summary(std::span<const Frame> frames,
                                               std::span<const PlayLabel> labels,
                                               SpacingMetric metric);

}  // namespace courtmotion
