#include "courtmotion/events.hpp"

#include "courtmotion/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
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

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.emplace_back(trim(line.substr(start)));
      break;
    }
    fields.emplace_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

EventKind kind_from_text(const std::string& text) {
  if (text == "made_shot") return EventKind::MadeShot;
  if (text == "missed_shot") return EventKind::MissedShot;
  if (text == "rebound") return EventKind::Rebound;
  if (text == "foul") return EventKind::Foul;
  if (text == "pass") return EventKind::Pass;
  if (text == "timeout") return EventKind::Timeout;
  if (text == "period_start") return EventKind::PeriodStart;
  if (text == "period_end") return EventKind::PeriodEnd;
  return EventKind::Other;
}

std::vector<TagId> parse_players(const std::string& field) {
  std::vector<TagId> players;
  if (trim(field).empty()) return players;
  for (const std::string& token : split(field, ';')) {
    if (!token.empty()) players.emplace_back(token);
  }
  return players;
}

std::vector<GameEvent> parse_events_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) return {};
  ++line_no;

  const std::vector<std::string> header = split(line, ',');
  const auto col_of = [&](std::string_view name) -> std::ptrdiff_t {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : it - header.begin();
  };
  const std::ptrdiff_t t_col = col_of("t_ms");
  const std::ptrdiff_t kind_col = col_of("kind");
  const std::ptrdiff_t players_col = col_of("players");
  if (t_col < 0 || kind_col < 0) {
    throw MalformedEvent(line_no, "header must name t_ms and kind");
  }

  std::vector<GameEvent> events;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split(line, ',');
    const std::size_t need = static_cast<std::size_t>(std::max(t_col, kind_col)) + 1;
    if (fields.size() < need) {
      throw MalformedEvent(line_no, "missing fields");
    }
    GameEvent e;
    const std::string& ts = fields[static_cast<std::size_t>(t_col)];
    const auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), e.t_ms);
    if (ec != std::errc{} || ptr != ts.data() + ts.size() || e.t_ms < 0) {
      throw MalformedEvent(line_no, "bad t_ms '" + ts + "'");
    }
    e.kind_text = fields[static_cast<std::size_t>(kind_col)];
    e.kind = kind_from_text(e.kind_text);
    if (players_col >= 0 && static_cast<std::size_t>(players_col) < fields.size()) {
      e.players = parse_players(fields[static_cast<std::size_t>(players_col)]);
    }
    for (std::size_t c = 0; c < fields.size() && c < header.size(); ++c) {
      if (static_cast<std::ptrdiff_t>(c) == t_col || static_cast<std::ptrdiff_t>(c) == kind_col ||
          static_cast<std::ptrdiff_t>(c) == players_col) {
        continue;
      }
      if (!fields[c].empty()) e.payload[header[c]] = fields[c];
    }
    events.push_back(std::move(e));
  }
  return events;
}

std::vector<GameEvent> parse_events_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedEvent(0, e.what());
  }
  if (!doc.is_array()) {
    throw MalformedEvent(0, "expected a JSON array of events");
  }

  std::vector<GameEvent> events;
  std::size_t idx = 0;
  for (const auto& item : doc) {
    ++idx;
    if (!item.is_object() || !item.contains("t_ms") || !item.contains("kind")) {
      throw MalformedEvent(idx, "event needs t_ms and kind");
    }
    GameEvent e;
    if (!item["t_ms"].is_number_integer() || item["t_ms"].get<std::int64_t>() < 0) {
      throw MalformedEvent(idx, "bad t_ms");
    }
    e.t_ms = item["t_ms"].get<std::int64_t>();
    e.kind_text = item["kind"].is_string() ? item["kind"].get<std::string>() : item["kind"].dump();
    e.kind = kind_from_text(e.kind_text);
    if (item.contains("players")) {
      for (const auto& p : item["players"]) {
        e.players.emplace_back(p.is_string() ? p.get<std::string>() : p.dump());
      }
    }
    for (const auto& [key, value] : item.items()) {
      if (key == "t_ms" || key == "kind" || key == "players") continue;
      e.payload[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
    events.push_back(std::move(e));
  }
  return events;
}

}  // namespace

std::vector<GameEvent> parse_events(std::istream& in, EventFormat format) {
  std::vector<GameEvent> events =
      format == EventFormat::Csv ? parse_events_csv(in) : parse_events_json(in);
  std::stable_sort(events.begin(), events.end(),
                   [](const GameEvent& a, const GameEvent& b) { return a.t_ms < b.t_ms; });
  return events;
}

JoinResult join_events(std::span<const Frame> frames, std::span<const GameEvent> events,
                       std::int64_t window_ms) {
  JoinResult result;
  result.frames.reserve(frames.size());
  for (const Frame& f : frames) result.frames.push_back({f, {}});

  std::size_t j = 0;
  for (const GameEvent& e : events) {
    if (frames.empty()) {
      result.unattached.push_back(e);
      continue;
    }
    // Nearest frame; on a tie the earlier frame wins, so only advance while
    // the next one is strictly closer.
    while (j + 1 < frames.size() &&
           std::llabs(frames[j + 1].t_ms - e.t_ms) < std::llabs(frames[j].t_ms - e.t_ms)) {
      ++j;
    }
    if (std::llabs(frames[j].t_ms - e.t_ms) <= window_ms) {
      result.frames[j].events.push_back(e);
    } else {
      result.unattached.push_back(e);
    }
  }
  return result;
}

int PeriodMap::period_of(std::int64_t t_ms) const {
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), t_ms);
  const auto n = it - starts_.begin();
  return std::max<std::ptrdiff_t>(1, n);
}

PeriodMap period_map(std::span<const GameEvent> events) {
  std::vector<std::int64_t> starts;
  bool open = false;
  for (const GameEvent& e : events) {
    if (e.kind == EventKind::PeriodStart) {
      if (open) {
        throw UnbalancedPeriods("period_start at " + std::to_string(e.t_ms) +
                                " ms inside an open period");
      }
      starts.push_back(e.t_ms);
      open = true;
    } else if (e.kind == EventKind::PeriodEnd) {
      if (!open) {
        throw UnbalancedPeriods("period_end at " + std::to_string(e.t_ms) +
                                " ms without a period_start");
      }
      open = false;
    }
  }
  return PeriodMap(std::move(starts));
}

}  // namespace courtmotion
