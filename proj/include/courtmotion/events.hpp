#pragma once

#include "courtmotion/types.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace courtmotion {

enum class EventKind {
  MadeShot,
  MissedShot,
  Rebound,
  Foul,
  Pass,
  Timeout,
  PeriodStart,
  PeriodEnd,
  Other,
};

struct GameEvent {
  std::int64_t t_ms = 0;
  EventKind kind = EventKind::Other;
  std::string kind_text;  // raw kind token; the label for Other
  std::vector<TagId> players;
  std::map<std::string, std::string> payload;
};

struct AnnotatedFrame {
  Frame frame;
  std::vector<GameEvent> events;
};

struct JoinResult {
  std::vector<AnnotatedFrame> frames;
  std::vector<GameEvent> unattached;
};

enum class EventFormat { Csv, Json };

// CSV schema: header with t_ms, kind, optional players (ids joined by ';'),
// extra columns land in payload. JSON: array of objects with the same keys.
// Unknown kinds are preserved as Other. Output is time-sorted.
std::vector<GameEvent> parse_events(std::istream& in, EventFormat format);

// Attaches each event to the nearest frame within window_ms (ties prefer the
// earlier frame); events farther than the window from every frame are
// returned unattached. Linear two-pointer merge.
JoinResult join_events(std::span<const Frame> frames, std::span<const GameEvent> events,
                       std::int64_t window_ms);

// Step function from PeriodStart events: period(t) = number of starts at or
// before t, clamped to at least 1, so a game without period events is a
// single period. The stretch between a PeriodEnd and the next PeriodStart
// belongs to the period just ended.
class PeriodMap {
 public:
  PeriodMap() = default;
  explicit PeriodMap(std::vector<std::int64_t> starts) : starts_(std::move(starts)) {}

  int period_of(std::int64_t t_ms) const;
  std::size_t period_count() const { return starts_.empty() ? 1 : starts_.size(); }

 private:
  std::vector<std::int64_t> starts_;  // sorted
};

// Validates PeriodStart/PeriodEnd nesting; throws UnbalancedPeriods on a
// start inside an open period or an end without one.
PeriodMap period_map(std::span<const GameEvent> events);

}  // namespace courtmotion
