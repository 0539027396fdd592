#pragma once

#include "courtmotion/types.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace courtmotion {

// CSV column names of the sensor log header. Defaults match the usual
// tracking feed layout.
struct CsvColumns {
  std::string tag = "tagid";
  std::string timestamp = "timestamp_ms";
  std::string x = "klm_x";
  std::string y = "klm_y";
};

// Parses a UTF-8 CSV sensor log with a header row. One SensorSample per
// well-formed row, input order preserved. Throws MalformedRow on missing or
// non-numeric fields, EmptyInput when there are no data rows.
std::vector<SensorSample> parse_sensor_log(std::istream& in, const CsvColumns& columns = {});

// Groups samples by tag and sorts by timestamp. Duplicate (tag, timestamp)
// pairs keep the last occurrence in input order.
std::map<TagId, Trajectory> build_trajectories(const std::vector<SensorSample>& samples);

StreamStats stream_stats(const std::map<TagId, Trajectory>& trajectories);

// The `count` tags with the most samples (ties prefer the smaller tag id).
std::vector<TagId> pick_roster(const std::map<TagId, Trajectory>& trajectories,
                               std::size_t count = 5);

// Resamples asynchronous per-player streams onto a shared grid. Grid instants
// are epoch + round(k * 1000 / grid_hz) ms where the epoch is the start of
// the common coverage window. A frame is emitted only when every roster
// player has bracketing samples within max_gap_ms of the instant; positions
// are linearly interpolated. Throws UnknownTag for roster tags without data.
std::vector<Frame> resample_to_grid(const std::map<TagId, Trajectory>& trajectories,
                                    double grid_hz, std::int64_t max_gap_ms,
                                    const std::vector<TagId>& roster);

}  // namespace courtmotion
