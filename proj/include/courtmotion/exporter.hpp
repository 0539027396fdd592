#pragma once

#include "courtmotion/embedding.hpp"
#include "courtmotion/events.hpp"
#include "courtmotion/geometry.hpp"
#include "courtmotion/phases.hpp"
#include "courtmotion/segmentation.hpp"
#include "courtmotion/types.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace courtmotion {

struct RenderSpec {
  CourtSpec court;
  double pixels_per_meter = 20.0;
  bool show_hull = true;
  bool show_ids = true;
  std::map<TagId, std::string> palette;  // overrides the built-in color cycle
};

// Rounds to 3 decimals (half to even) and formats with a fixed number of
// digits, so exports are byte-stable.
std::string fixed3(double v);
std::string fixed2(double v);

// JSON array of {t_ms, positions:{tag:[x, y]}} with 3-decimal coordinates,
// one frame per line. Throws InputError when frames is empty, IoFailure on
// write errors.
void export_motion_frames(std::span<const Frame> frames, const std::filesystem::path& path);

// Court rectangle, mid-line, filled hull polygon (polyline when degenerate)
// and player markers. Canvas size is court dimensions times pixels_per_meter.
void render_hull_svg(const Frame& frame, const HullMetrics& hull, const RenderSpec& spec,
                     const std::filesystem::path& path);

// One panel per cluster, titled with the cluster name and its share of
// frames; player points are annotated by tag. Layouts must be canonicalized.
void render_mds_svg(std::span<const PhaseLayout> layouts, const PhaseCrosstab& shares,
                    const RenderSpec& spec, const std::filesystem::path& path);

// Markdown report: spacing grid (attack/defence x distance/hull area with
// rows Min, 1st Qu., Median, Mean, 3rd Qu., Max), BD/TD curve table and the
// cluster crosstab. Empty sections are replaced by a short note.
void write_report(std::span<const SpacingSummary> summaries, const PhaseCrosstab& crosstab,
                  std::span<const std::pair<int, double>> curve,
                  const std::filesystem::path& path);

// Documented phase-model JSON: k, seed, bd_td, feature columns, centroids,
// assignments by timestamp, the BD/TD curve, plus crosstab and one layout
// entry per cluster when those were computed.
void write_phase_model(const PhaseModel& model,
                       std::span<const std::pair<TagId, TagId>> columns,
                       std::span<const std::pair<int, double>> curve,
                       std::span<const PhaseLayout> layouts, const PhaseCrosstab& crosstab,
                       const std::filesystem::path& path);

// Sidecar CSV of events that no frame claimed.
void write_unattached_events(std::span<const GameEvent> events,
                             const std::filesystem::path& path);

}  // namespace courtmotion
