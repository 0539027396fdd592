#pragma once

#include "courtmotion/ingest.hpp"
#include "courtmotion/kinematics.hpp"
#include "courtmotion/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace courtmotion {

// Everything one run needs. Values come from a key-value config file (see
// docs/config reference in the README); CLI flags override file values.
struct RunConfig {
  std::filesystem::path input;
  std::optional<std::filesystem::path> events;
  std::filesystem::path out = "out";

  CourtSpec court;
  std::vector<TagId> roster;  // empty: the roster_size tags with most samples
  std::size_t roster_size = 5;

  double grid_hz = 5.0;
  std::int64_t max_gap_ms = 1000;

  KalmanParams kalman;
  bool skip_kalman = false;  // the feed may already carry filtered coordinates

  int k = 0;  // 0 selects k from the BD/TD curve
  int k_min = 1;
  int k_max = 12;
  double min_gain = 0.05;
  std::uint64_t seed = 1;
  int restarts = 10;
  int max_iter = 100;

  std::int64_t min_play_ms = 2000;
  std::int64_t join_window_ms = 1000;

  CsvColumns csv;
};

// Parses `key = value` lines; '#' starts a full-line comment. Unknown keys
// are rejected. Paths are taken as given (resolved against the working
// directory).
RunConfig load_config(const std::filesystem::path& path);

// Applies one key-value pair; shared by the file loader and flag overrides.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// Echo of the effective configuration in file syntax, fixed key order.
void write_effective_config(const RunConfig& cfg, std::ostream& out);

}  // namespace courtmotion
