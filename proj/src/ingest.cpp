#include "courtmotion/ingest.hpp"

#include "courtmotion/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

namespace courtmotion {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool parse_double(std::string_view s, double& out) {
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

bool parse_int(std::string_view s, std::int64_t& out) {
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::size_t column_index(const std::vector<std::string_view>& header, const std::string& name,
                         std::size_t header_line) {
  const auto it = std::find(header.begin(), header.end(), std::string_view(name));
  if (it == header.end()) {
    throw MalformedRow(header_line, "header has no column '" + name + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

std::vector<SensorSample> parse_sensor_log(std::istream& in, const CsvColumns& columns) {
  std::string line;
  std::size_t line_no = 0;

  // Header (skip a UTF-8 BOM if the feed wrote one).
  if (!std::getline(in, line)) {
    throw EmptyInput();
  }
  ++line_no;
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  const std::vector<std::string_view> header = split_csv(line);
  const std::size_t tag_col = column_index(header, columns.tag, line_no);
  const std::size_t ts_col = column_index(header, columns.timestamp, line_no);
  const std::size_t x_col = column_index(header, columns.x, line_no);
  const std::size_t y_col = column_index(header, columns.y, line_no);
  const std::size_t need = std::max({tag_col, ts_col, x_col, y_col}) + 1;

  std::vector<SensorSample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string_view> fields = split_csv(line);
    if (fields.size() < need) {
      throw MalformedRow(line_no, "expected at least " + std::to_string(need) + " fields");
    }
    SensorSample s;
    if (fields[tag_col].empty()) {
      throw MalformedRow(line_no, "empty tag id");
    }
    s.tag = TagId(std::string(fields[tag_col]));
    if (!parse_int(fields[ts_col], s.timestamp_ms) || s.timestamp_ms < 0) {
      throw MalformedRow(line_no, "bad timestamp '" + std::string(fields[ts_col]) + "'");
    }
    if (!parse_double(fields[x_col], s.x) || !parse_double(fields[y_col], s.y)) {
      throw MalformedRow(line_no, "non-numeric coordinates");
    }
    samples.push_back(std::move(s));
  }
  if (samples.empty()) {
    throw EmptyInput();
  }
  return samples;
}

std::map<TagId, Trajectory> build_trajectories(const std::vector<SensorSample>& samples) {
  std::map<TagId, Trajectory> out;
  for (const SensorSample& s : samples) {
    Trajectory& traj = out[s.tag];
    traj.tag = s.tag;
    traj.samples.push_back({s.timestamp_ms, Vec2(s.x, s.y)});
  }
  for (auto& [tag, traj] : out) {
    // stable_sort keeps input order within equal timestamps, so "last wins"
    // is the last element of each equal run.
    std::stable_sort(traj.samples.begin(), traj.samples.end(),
                     [](const TrajectoryPoint& a, const TrajectoryPoint& b) {
                       return a.t_ms < b.t_ms;
                     });
    std::vector<TrajectoryPoint> dedup;
    dedup.reserve(traj.samples.size());
    for (const TrajectoryPoint& p : traj.samples) {
      if (!dedup.empty() && dedup.back().t_ms == p.t_ms) {
        dedup.back() = p;
      } else {
        dedup.push_back(p);
      }
    }
    traj.samples = std::move(dedup);
  }
  return out;
}

StreamStats stream_stats(const std::map<TagId, Trajectory>& trajectories) {
  StreamStats stats;
  std::int64_t t_min = 0;
  std::int64_t t_max = 0;
  bool any = false;
  double interval_sum = 0.0;
  std::size_t interval_count = 0;

  for (const auto& [tag, traj] : trajectories) {
    const auto& s = traj.samples;
    stats.total_samples += s.size();
    stats.per_player_counts[tag] = s.size();
    if (!s.empty()) {
      if (!any) {
        t_min = s.front().t_ms;
        t_max = s.back().t_ms;
        any = true;
      } else {
        t_min = std::min(t_min, s.front().t_ms);
        t_max = std::max(t_max, s.back().t_ms);
      }
    }
    if (s.size() >= 2) {
      const double span = static_cast<double>(s.back().t_ms - s.front().t_ms);
      stats.mean_interval_ms[tag] = span / static_cast<double>(s.size() - 1);
      interval_sum += span;
      interval_count += s.size() - 1;
    }
  }

  if (interval_count > 0) {
    stats.overall_mean_interval_ms = interval_sum / static_cast<double>(interval_count);
  }
  const double span_s = static_cast<double>(t_max - t_min) / 1000.0;
  if (any && span_s > 0.0) {
    stats.observed_rate_hz = static_cast<double>(stats.total_samples) / span_s;
  }
  return stats;
}

std::vector<TagId> pick_roster(const std::map<TagId, Trajectory>& trajectories,
                               std::size_t count) {
  std::vector<std::pair<TagId, std::size_t>> by_count;
  by_count.reserve(trajectories.size());
  for (const auto& [tag, traj] : trajectories) {
    by_count.emplace_back(tag, traj.samples.size());
  }
  std::stable_sort(by_count.begin(), by_count.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (by_count.size() > count) by_count.resize(count);
  std::vector<TagId> roster;
  roster.reserve(by_count.size());
  for (const auto& [tag, n] : by_count) roster.push_back(tag);
  std::sort(roster.begin(), roster.end());
  return roster;
}

std::vector<Frame> resample_to_grid(const std::map<TagId, Trajectory>& trajectories,
                                    double grid_hz, std::int64_t max_gap_ms,
                                    const std::vector<TagId>& roster) {
  if (grid_hz <= 0.0) {
    throw InputError("grid_hz must be positive");
  }
  if (grid_hz > 1000.0) {
    throw InputError("grid_hz above 1000 Hz would need a sub-millisecond grid");
  }
  if (roster.empty()) {
    throw InputError("roster is empty");
  }

  std::vector<const Trajectory*> trajs;
  trajs.reserve(roster.size());
  for (const TagId& tag : roster) {
    const auto it = trajectories.find(tag);
    if (it == trajectories.end() || it->second.samples.empty()) {
      throw UnknownTag(tag.str());
    }
    trajs.push_back(&it->second);
  }

  // Common coverage window across the roster.
  std::int64_t t_start = trajs.front()->samples.front().t_ms;
  std::int64_t t_end = trajs.front()->samples.back().t_ms;
  for (const Trajectory* traj : trajs) {
    t_start = std::max(t_start, traj->samples.front().t_ms);
    t_end = std::min(t_end, traj->samples.back().t_ms);
  }

  std::vector<Frame> frames;
  if (t_start > t_end) return frames;

  std::vector<std::size_t> cursor(trajs.size(), 0);  // last sample with t <= grid instant
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t t = t_start + std::llround(static_cast<double>(k) * 1000.0 / grid_hz);
    if (t > t_end) break;

    Frame frame;
    frame.t_ms = t;
    bool covered = true;
    for (std::size_t i = 0; i < trajs.size(); ++i) {
      const auto& s = trajs[i]->samples;
      std::size_t& c = cursor[i];
      while (c + 1 < s.size() && s[c + 1].t_ms <= t) ++c;
      // s[c].t_ms <= t by the coverage window; the bracketing sample on the
      // right is s[c] itself on an exact hit, s[c + 1] otherwise.
      const TrajectoryPoint& prev = s[c];
      const TrajectoryPoint& next = (s[c].t_ms == t || c + 1 >= s.size()) ? s[c] : s[c + 1];
      if (t - prev.t_ms > max_gap_ms || next.t_ms - t > max_gap_ms) {
        covered = false;
        break;
      }
      Vec2 pos = prev.pos;
      if (next.t_ms > prev.t_ms) {
        const double alpha =
            static_cast<double>(t - prev.t_ms) / static_cast<double>(next.t_ms - prev.t_ms);
        pos = prev.pos + alpha * (next.pos - prev.pos);
      }
      frame.positions.emplace(roster[i], pos);
    }
    if (covered) frames.push_back(std::move(frame));
  }
  return frames;
}

}  // namespace courtmotion
