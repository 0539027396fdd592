#include "courtmotion/config.hpp"
#include "courtmotion/embedding.hpp"
#include "courtmotion/errors.hpp"
#include "courtmotion/events.hpp"
#include "courtmotion/exporter.hpp"
#include "courtmotion/geometry.hpp"
#include "courtmotion/ingest.hpp"
#include "courtmotion/kinematics.hpp"
#include "courtmotion/phases.hpp"
#include "courtmotion/segmentation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace fs = std::filesystem;
using namespace courtmotion;

namespace {

// Tags every pipeline error with the stage it came from while keeping the
// input/numeric split that drives the exit code.
template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const NumericError& e) {
    throw NumericError(std::string("[") + name + "] " + e.what());
  } catch (const Error& e) {
    throw InputError(std::string("[") + name + "] " + e.what());
  }
}

// Stages all files in <out>.tmp and swaps it in at commit time, so a failed
// run never leaves a half-written output directory behind.
class OutputStager {
 public:
  explicit OutputStager(fs::path out) : final_(std::move(out)) {
    if (!final_.parent_path().empty()) {
      fs::create_directories(final_.parent_path());
    }
    tmp_ = final_;
    tmp_ += ".tmp";
    fs::remove_all(tmp_);
    fs::create_directories(tmp_);
  }

  OutputStager(const OutputStager&) = delete;
  OutputStager& operator=(const OutputStager&) = delete;

  ~OutputStager() {
    std::error_code ec;
    fs::remove_all(tmp_, ec);
  }

  const fs::path& dir() const { return tmp_; }

  void commit() {
    fs::path old = final_;
    old += ".old";
    fs::remove_all(old);
    if (fs::exists(final_)) fs::rename(final_, old);
    fs::rename(tmp_, final_);
    fs::remove_all(old);
  }

 private:
  fs::path final_;
  fs::path tmp_;
};

struct CliArgs {
  std::string config_path;
  // Flag overrides in the order given, expressed as config entries.
  std::vector<std::pair<std::string, std::string>> overrides;
  int snapshots = 4;
};

void add_common_options(CLI::App* cmd, CliArgs& args) {
  cmd->add_option("--config", args.config_path, "Config file (key = value lines)");
  const auto opt = [cmd, &args](const std::string& flag, std::string key,
                                const std::string& desc) {
    cmd->add_option_function<std::string>(
        flag,
        [&args, key = std::move(key)](const std::string& v) { args.overrides.emplace_back(key, v); },
        desc);
  };
  opt("--input", "input", "Sensor log CSV");
  opt("--events", "events", "Play-by-play file (CSV or JSON by extension)");
  opt("--out", "out", "Output directory");
  opt("--seed", "seed", "RNG seed");
  opt("--grid-hz", "grid_hz", "Resampling grid frequency");
  opt("--max-gap-ms", "max_gap_ms", "Largest bridgeable sample gap");
  opt("--roster", "roster", "Comma-separated tag ids");
  opt("--k", "k", "Force the cluster count");
  opt("--k-range", "k_range", "BD/TD scan range, e.g. 1..12");
  opt("--min-gain", "min_gain", "BD/TD marginal gain cutoff");
  opt("--min-play-ms", "min_play_ms", "Play debounce duration");
  opt("--kf-accel-var", "kf.accel_var", "Kalman process noise (m^2/s^4)");
  opt("--kf-meas-var", "kf.meas_var", "Kalman measurement noise (m^2)");
  cmd->add_flag_callback(
      "--skip-kalman",
      [&args] { args.overrides.emplace_back("skip_kalman", "true"); },
      "Input positions are already filtered");
}

RunConfig resolve_config(const CliArgs& args) {
  RunConfig cfg;
  if (!args.config_path.empty()) {
    cfg = load_config(args.config_path);
  }
  for (const auto& [key, value] : args.overrides) {
    apply_config_entry(cfg, key, value);
  }
  return cfg;
}

// Every subcommand leaves the effective configuration next to its outputs.
void echo_config(const RunConfig& cfg, const fs::path& dir) {
  std::ofstream out(dir / "config_used.cfg", std::ios::binary);
  write_effective_config(cfg, out);
}

std::vector<SensorSample> read_sensor_log(const RunConfig& cfg) {
  return stage("ingest", [&] {
    if (cfg.input.empty()) {
      throw InputError("no input file configured");
    }
    std::ifstream in(cfg.input, std::ios::binary);
    if (!in) {
      throw InputError("cannot open '" + cfg.input.string() + "'");
    }
    return parse_sensor_log(in, cfg.csv);
  });
}

struct FramePipeline {
  std::map<TagId, Trajectory> trajectories;
  std::vector<TagId> roster;
  std::vector<Frame> frames;
};

FramePipeline build_frames(const RunConfig& cfg) {
  FramePipeline p;
  const std::vector<SensorSample> samples = read_sensor_log(cfg);
  p.trajectories = stage("ingest", [&] { return build_trajectories(samples); });
  if (!cfg.skip_kalman) {
    p.trajectories = stage("kalman", [&] { return smooth_trajectories(p.trajectories, cfg.kalman); });
  }
  p.roster = cfg.roster.empty() ? pick_roster(p.trajectories, cfg.roster_size) : cfg.roster;
  p.frames = stage("resample", [&] {
    return resample_to_grid(p.trajectories, cfg.grid_hz, cfg.max_gap_ms, p.roster);
  });
  if (p.frames.empty()) {
    throw InputError("[resample] no frames on the grid (check coverage and max_gap_ms)");
  }
  return p;
}

struct EventData {
  std::vector<GameEvent> events;
  PeriodMap periods;
};

EventData load_events(const RunConfig& cfg) {
  EventData data;
  if (!cfg.events) return data;
  data.events = stage("events", [&] {
    std::ifstream in(*cfg.events, std::ios::binary);
    if (!in) {
      throw InputError("cannot open '" + cfg.events->string() + "'");
    }
    const EventFormat format =
        cfg.events->extension() == ".json" ? EventFormat::Json : EventFormat::Csv;
    return parse_events(in, format);
  });
  data.periods = stage("events", [&] { return period_map(data.events); });
  return data;
}

std::string format_stream_stats(const StreamStats& stats) {
  std::ostringstream out;
  out << "total samples: " << stats.total_samples << "\n";
  out << "players: " << stats.per_player_counts.size() << "\n";
  for (const auto& [tag, count] : stats.per_player_counts) {
    out << "  tag " << tag.str() << ": " << count << " samples";
    const auto it = stats.mean_interval_ms.find(tag);
    if (it != stats.mean_interval_ms.end()) {
      out << ", mean interval " << fixed2(it->second) << " ms";
    }
    out << "\n";
  }
  out << "overall mean interval: " << fixed2(stats.overall_mean_interval_ms) << " ms\n";
  out << "observed rate: " << fixed2(stats.observed_rate_hz) << " samples/s\n";
  return out.str();
}

int cmd_summarize(const CliArgs& args) {
  const RunConfig cfg = resolve_config(args);
  const std::vector<SensorSample> samples = read_sensor_log(cfg);
  const auto trajectories = stage("ingest", [&] { return build_trajectories(samples); });
  const std::string summary = format_stream_stats(stream_stats(trajectories));
  std::cout << summary;

  OutputStager stager(cfg.out);
  std::ofstream out(stager.dir() / "summary.txt", std::ios::binary);
  out << summary;
  out.close();
  echo_config(cfg, stager.dir());
  stager.commit();
  return 0;
}

struct AnalysisResult {
  std::vector<PlayLabel> labels;
  std::vector<PlayInterval> intervals;
  std::vector<SpacingSummary> summaries;
  FeatureMatrix features;
  std::vector<std::pair<int, double>> curve;
  PhaseModel model;
  PhaseCrosstab table;
  std::vector<PhaseLayout> layouts;
};

AnalysisResult analyze_frames(const RunConfig& cfg, const FramePipeline& p,
                              const EventData& events) {
  AnalysisResult r;
  const auto period_of = [&events](std::int64_t t) { return events.periods.period_of(t); };
  r.labels = stage("segmentation", [&] { return label_frames(p.frames, cfg.court, period_of); });
  r.intervals = segment_plays(r.labels, cfg.min_play_ms);
  r.summaries = stage("segmentation", [&] {
    std::vector<SpacingSummary> out;
    for (const SpacingMetric metric : {SpacingMetric::MeanDistance, SpacingMetric::HullArea}) {
      for (const auto& [play, summary] : spacing_summary(p.frames, r.labels, metric)) {
        out.push_back(summary);
      }
    }
    return out;
  });

  r.features = stage("phases", [&] { return build_features(p.frames); });
  const int rows = static_cast<int>(r.features.values.rows());
  stage("phases", [&] {
    if (cfg.k > 0) {
      r.model = kmeans(r.features, cfg.k, cfg.seed, cfg.max_iter, cfg.restarts);
      r.curve = {{cfg.k, r.model.bd_td}};
    } else {
      const int k_max = std::min(cfg.k_max, rows);
      r.curve = bd_td_curve(r.features, cfg.k_min, k_max, cfg.seed, cfg.max_iter, cfg.restarts);
      const int k = select_k(r.curve, cfg.min_gain);
      r.model = kmeans(r.features, k, cfg.seed, cfg.max_iter, cfg.restarts);
    }
    return 0;
  });
  r.table = stage("phases", [&] { return crosstab(r.model, r.labels); });

  stage("embedding", [&] {
    for (int cluster = 1; cluster <= r.model.k; ++cluster) {
      std::vector<Frame> members;
      for (std::size_t i = 0; i < p.frames.size(); ++i) {
        if (r.model.assignments[i] == cluster) members.push_back(p.frames[i]);
      }
      if (members.empty()) continue;
      r.layouts.push_back(
          canonicalize_layout(classical_mds(avg_distance_matrix(members, cluster))));
    }
    return 0;
  });
  return r;
}

// Snapshot frame indices spread evenly over one play interval.
std::vector<std::size_t> snapshot_indices(const std::vector<Frame>& frames,
                                          const PlayInterval& interval, int count) {
  std::size_t lo = frames.size();
  std::size_t hi = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].t_ms >= interval.start_ms && frames[i].t_ms <= interval.end_ms) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  std::vector<std::size_t> picks;
  if (lo > hi) return picks;
  for (int j = 0; j < count; ++j) {
    const double alpha = count > 1 ? static_cast<double>(j) / (count - 1) : 0.0;
    const std::size_t idx = lo + static_cast<std::size_t>(
                                     std::llround(alpha * static_cast<double>(hi - lo)));
    if (picks.empty() || picks.back() != idx) picks.push_back(idx);
  }
  return picks;
}

void write_hull_snapshots(const std::vector<Frame>& frames,
                          const std::vector<PlayInterval>& intervals, const RenderSpec& spec,
                          int count, const fs::path& dir) {
  for (const Play play : {Play::Offense, Play::Defense}) {
    const auto it = std::find_if(intervals.begin(), intervals.end(),
                                 [play](const PlayInterval& i) { return i.label == play; });
    if (it == intervals.end()) continue;
    const std::vector<std::size_t> picks = snapshot_indices(frames, *it, count);
    int n = 0;
    for (const std::size_t idx : picks) {
      const Frame& frame = frames[idx];
      std::vector<Vec2> points;
      for (const auto& [tag, pos] : frame.positions) points.push_back(pos);
      HullMetrics hull;
      hull.t_ms = frame.t_ms;
      hull.hull_vertices = convex_hull(points);
      hull.area_m2 = polygon_area(hull.hull_vertices);
      hull.centroid = frame_centroid(frame);
      ++n;
      const std::string name =
          std::string("hull_") + to_string(play) + "_" + std::to_string(n) + ".svg";
      render_hull_svg(frame, hull, spec, dir / name);
    }
  }
}

int cmd_analyze(const CliArgs& args) {
  const RunConfig cfg = resolve_config(args);
  const FramePipeline p = build_frames(cfg);
  const EventData events = load_events(cfg);
  const AnalysisResult r = analyze_frames(cfg, p, events);

  OutputStager stager(cfg.out);
  stage("export", [&] {
    RenderSpec spec;
    spec.court = cfg.court;
    write_report(r.summaries, r.table, r.curve, stager.dir() / "report.md");
    write_phase_model(r.model, r.features.columns, r.curve, r.layouts, r.table,
                      stager.dir() / "phase_model.json");
    render_mds_svg(r.layouts, r.table, spec, stager.dir() / "mds.svg");
    export_motion_frames(p.frames, stager.dir() / "motion_frames.json");
    write_hull_snapshots(p.frames, r.intervals, spec, args.snapshots, stager.dir());
    if (cfg.events) {
      const JoinResult joined = join_events(p.frames, events.events, cfg.join_window_ms);
      write_unattached_events(joined.unattached, stager.dir() / "unattached_events.csv");
    }
    echo_config(cfg, stager.dir());
    return 0;
  });
  stager.commit();
  return 0;
}

int cmd_phases(const CliArgs& args) {
  const RunConfig cfg = resolve_config(args);
  const FramePipeline p = build_frames(cfg);

  const FeatureMatrix features = stage("phases", [&] { return build_features(p.frames); });
  std::vector<std::pair<int, double>> curve;
  PhaseModel model;
  stage("phases", [&] {
    if (cfg.k > 0) {
      model = kmeans(features, cfg.k, cfg.seed, cfg.max_iter, cfg.restarts);
      curve = {{cfg.k, model.bd_td}};
    } else {
      curve = bd_td_curve(features, cfg.k_min, cfg.k_max, cfg.seed, cfg.max_iter, cfg.restarts);
      model = kmeans(features, select_k(curve, cfg.min_gain), cfg.seed, cfg.max_iter,
                     cfg.restarts);
    }
    return 0;
  });

  std::cout << " k  BD/TD\n";
  for (const auto& [k, ratio] : curve) {
    std::printf("%2d  %s\n", k, fixed3(ratio).c_str());
  }
  std::cout << "chosen k = " << model.k << "\n";

  OutputStager stager(cfg.out);
  write_phase_model(model, features.columns, curve, {}, {}, stager.dir() / "phase_model.json");
  echo_config(cfg, stager.dir());
  stager.commit();
  return 0;
}

int cmd_hulls(const CliArgs& args) {
  const RunConfig cfg = resolve_config(args);
  const FramePipeline p = build_frames(cfg);
  const EventData events = load_events(cfg);
  const auto period_of = [&events](std::int64_t t) { return events.periods.period_of(t); };
  const auto labels =
      stage("segmentation", [&] { return label_frames(p.frames, cfg.court, period_of); });
  const auto intervals = segment_plays(labels, cfg.min_play_ms);

  OutputStager stager(cfg.out);
  stage("export", [&] {
    RenderSpec spec;
    spec.court = cfg.court;
    write_hull_snapshots(p.frames, intervals, spec, args.snapshots, stager.dir());
    return 0;
  });
  echo_config(cfg, stager.dir());
  stager.commit();
  return 0;
}

int cmd_export_frames(const CliArgs& args) {
  const RunConfig cfg = resolve_config(args);
  const FramePipeline p = build_frames(cfg);
  OutputStager stager(cfg.out);
  stage("export", [&] {
    export_motion_frames(p.frames, stager.dir() / "motion_frames.json");
    return 0;
  });
  echo_config(cfg, stager.dir());
  stager.commit();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Player-tracking spacing and game-phase analytics"};
  app.require_subcommand(1);

  CliArgs summarize_args;
  CliArgs analyze_args;
  CliArgs phases_args;
  CliArgs hulls_args;
  CliArgs export_args;

  CLI::App* summarize = app.add_subcommand("summarize", "Stream statistics of a sensor log");
  add_common_options(summarize, summarize_args);

  CLI::App* analyze = app.add_subcommand("analyze", "Full pipeline: report, phases, MDS, exports");
  add_common_options(analyze, analyze_args);
  analyze->add_option("--snapshots", analyze_args.snapshots, "Hull snapshots per play");

  CLI::App* phases = app.add_subcommand("phases", "BD/TD curve and phase model");
  add_common_options(phases, phases_args);

  CLI::App* hulls = app.add_subcommand("hulls", "Hull snapshots of the first plays");
  add_common_options(hulls, hulls_args);
  hulls->add_option("--snapshots", hulls_args.snapshots, "Hull snapshots per play");

  CLI::App* export_frames = app.add_subcommand("export-frames", "Motion-chart frame file");
  add_common_options(export_frames, export_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (summarize->parsed()) return cmd_summarize(summarize_args);
    if (analyze->parsed()) return cmd_analyze(analyze_args);
    if (phases->parsed()) return cmd_phases(phases_args);
    if (hulls->parsed()) return cmd_hulls(hulls_args);
    if (export_frames->parsed()) return cmd_export_frames(export_args);
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
