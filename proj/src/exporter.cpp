#include "courtmotion/exporter.hpp"

#include "courtmotion/errors.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace courtmotion {

namespace {

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

std::string fixed(double v, int digits) {
  const double pow10 = digits == 2 ? 100.0 : 1000.0;
  double r = std::nearbyint(v * pow10) / pow10;  // default mode: half to even
  if (r == 0.0) r = 0.0;                         // never print -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, r);
  return buf;
}

void write_file(const std::string& body, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure(path.string());
  out << body;
  out.close();
  if (!out) throw IoFailure(path.string());
}

std::string color_for(const TagId& tag, std::size_t idx, const RenderSpec& spec) {
  const auto it = spec.palette.find(tag);
  if (it != spec.palette.end()) return it->second;
  return kPalette[idx % kPalette.size()];
}

// Tag ids are arbitrary feed tokens; keep hand-built documents well-formed.
std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string fixed3(double v) { return fixed(v, 3); }
std::string fixed2(double v) { return fixed(v, 2); }

void export_motion_frames(std::span<const Frame> frames, const std::filesystem::path& path) {
  if (frames.empty()) {
    throw InputError("no frames to export");
  }
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Frame& f = frames[i];
    out << "{\"t_ms\":" << f.t_ms << ",\"positions\":{";
    bool first = true;
    for (const auto& [tag, pos] : f.positions) {
      if (!first) out << ",";
      first = false;
      out << "\"" << json_escape(tag.str()) << "\":[" << fixed3(pos.x()) << ","
          << fixed3(pos.y()) << "]";
    }
    out << "}}" << (i + 1 < frames.size() ? "," : "") << "\n";
  }
  out << "]\n";
  write_file(out.str(), path);
}

void render_hull_svg(const Frame& frame, const HullMetrics& hull, const RenderSpec& spec,
                     const std::filesystem::path& path) {
  const double ppm = spec.pixels_per_meter;
  const double w = spec.court.length_m * ppm;
  const double h = spec.court.width_m * ppm;
  const auto px = [&](double x) { return fixed2(x * ppm); };
  const auto py = [&](double y) { return fixed2((spec.court.width_m - y) * ppm); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed2(w)
      << "\" height=\"" << fixed2(h) << "\" viewBox=\"0 0 " << fixed2(w) << " " << fixed2(h)
      << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << fixed2(w) << "\" height=\"" << fixed2(h)
      << "\" fill=\"#fffdf5\" stroke=\"#444444\" stroke-width=\"2\"/>\n"
      << "<line x1=\"" << fixed2(w / 2.0) << "\" y1=\"0\" x2=\"" << fixed2(w / 2.0)
      << "\" y2=\"" << fixed2(h) << "\" stroke=\"#bbbbbb\" stroke-width=\"1.5\"/>\n";

  if (spec.show_hull && hull.hull_vertices.size() >= 2) {
    std::ostringstream points;
    for (std::size_t i = 0; i < hull.hull_vertices.size(); ++i) {
      if (i > 0) points << " ";
      points << px(hull.hull_vertices[i].x()) << "," << py(hull.hull_vertices[i].y());
    }
    if (hull.hull_vertices.size() >= 3) {
      svg << "<polygon points=\"" << points.str()
          << "\" fill=\"#1f77b4\" fill-opacity=\"0.2\" stroke=\"#1f77b4\" "
             "stroke-width=\"2\"/>\n";
    } else {
      svg << "<polyline points=\"" << points.str()
          << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
    }
  }

  std::size_t idx = 0;
  for (const auto& [tag, pos] : frame.positions) {
    svg << "<circle cx=\"" << px(pos.x()) << "\" cy=\"" << py(pos.y())
        << "\" r=\"6\" fill=\"" << color_for(tag, idx, spec) << "\" stroke=\"#222222\"/>\n";
    if (spec.show_ids) {
      svg << "<text x=\"" << fixed2(pos.x() * ppm + 9.0) << "\" y=\""
          << fixed2((spec.court.width_m - pos.y()) * ppm - 9.0)
          << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222222\">"
          << xml_escape(tag.str()) << "</text>\n";
    }
    ++idx;
  }

  svg << "<text x=\"8\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\" "
         "fill=\"#444444\">t = "
      << hull.t_ms << " ms, hull " << fixed2(hull.area_m2) << " m2</text>\n"
      << "</svg>\n";
  write_file(svg.str(), path);
}

void render_mds_svg(std::span<const PhaseLayout> layouts, const PhaseCrosstab& shares,
                    const RenderSpec& spec, const std::filesystem::path& path) {
  const int cols = layouts.size() < 4 ? static_cast<int>(layouts.size()) : 4;
  const int rows = cols > 0 ? (static_cast<int>(layouts.size()) + cols - 1) / cols : 0;
  const double panel = 220.0;
  const double title_h = 26.0;
  const double gap = 12.0;
  const double pad = 26.0;
  const double w = cols * panel + (cols + 1) * gap;
  const double h = rows * (panel + title_h) + (rows + 1) * gap;

  double range = 1.0;
  for (const PhaseLayout& l : layouts) {
    for (Eigen::Index i = 0; i < l.coords.rows(); ++i) {
      range = std::max({range, std::abs(l.coords(i, 0)), std::abs(l.coords(i, 1))});
    }
  }
  const double scale = (panel / 2.0 - pad) / range;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed2(w)
      << "\" height=\"" << fixed2(h) << "\" viewBox=\"0 0 " << fixed2(w) << " " << fixed2(h)
      << "\">\n";

  for (std::size_t p = 0; p < layouts.size(); ++p) {
    const PhaseLayout& layout = layouts[p];
    const int row = static_cast<int>(p) / cols;
    const int col = static_cast<int>(p) % cols;
    const double x0 = gap + col * (panel + gap);
    const double y0 = gap + row * (panel + title_h + gap);

    std::optional<double> share;
    for (const ClusterShare& s : shares.rows) {
      if (s.cluster == layout.cluster_id) share = s.share_pct;
    }
    svg << "<text x=\"" << fixed2(x0 + panel / 2.0) << "\" y=\"" << fixed2(y0 + 17.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\" "
           "fill=\"#222222\">C"
        << layout.cluster_id;
    if (share) svg << " (" << fixed2(*share) << "%)";
    svg << "</text>\n";

    const double cy0 = y0 + title_h;
    svg << "<rect x=\"" << fixed2(x0) << "\" y=\"" << fixed2(cy0) << "\" width=\""
        << fixed2(panel) << "\" height=\"" << fixed2(panel)
        << "\" fill=\"#ffffff\" stroke=\"#888888\"/>\n";

    const double cx = x0 + panel / 2.0;
    const double cy = cy0 + panel / 2.0;
    for (Eigen::Index i = 0; i < layout.coords.rows(); ++i) {
      const double u = cx + layout.coords(i, 0) * scale;
      const double v = cy - layout.coords(i, 1) * scale;
      const TagId& tag = layout.labels[static_cast<std::size_t>(i)];
      svg << "<circle cx=\"" << fixed2(u) << "\" cy=\"" << fixed2(v) << "\" r=\"5\" fill=\""
          << color_for(tag, static_cast<std::size_t>(i), spec) << "\" stroke=\"#222222\"/>\n";
      if (spec.show_ids) {
        svg << "<text x=\"" << fixed2(u + 8.0) << "\" y=\"" << fixed2(v - 8.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">"
            << xml_escape(tag.str()) << "</text>\n";
      }
    }
  }
  svg << "</svg>\n";
  write_file(svg.str(), path);
}

namespace {

const SpacingSummary* find_summary(std::span<const SpacingSummary> summaries, Play play,
                                   SpacingMetric metric) {
  for (const SpacingSummary& s : summaries) {
    if (s.label == play && s.metric == metric) return &s;
  }
  return nullptr;
}

void report_stat_row(std::ostringstream& out, const char* name,
                     const std::array<const SpacingSummary*, 4>& cells,
                     double SpacingSummary::*field) {
  out << "| " << name << " |";
  for (const SpacingSummary* s : cells) {
    if (s != nullptr) {
      out << " " << fixed3(s->*field) << " |";
    } else {
      out << " n/a |";
    }
  }
  out << "\n";
}

}  // namespace

void write_report(std::span<const SpacingSummary> summaries, const PhaseCrosstab& crosstab,
                  std::span<const std::pair<int, double>> curve,
                  const std::filesystem::path& path) {
  std::ostringstream out;
  out << "# Match report\n\n";

  out << "## Player spacing\n\n";
  if (summaries.empty()) {
    out << "_No spacing statistics available._\n\n";
  } else {
    const std::array<const SpacingSummary*, 4> cells = {
        find_summary(summaries, Play::Offense, SpacingMetric::MeanDistance),
        find_summary(summaries, Play::Defense, SpacingMetric::MeanDistance),
        find_summary(summaries, Play::Offense, SpacingMetric::HullArea),
        find_summary(summaries, Play::Defense, SpacingMetric::HullArea),
    };
    out << "| Statistic | Avg distance (m), attack | Avg distance (m), defence | "
           "Hull area (m2), attack | Hull area (m2), defence |\n";
    out << "|---|---|---|---|---|\n";
    report_stat_row(out, "Min", cells, &SpacingSummary::min);
    report_stat_row(out, "1st Qu.", cells, &SpacingSummary::q1);
    report_stat_row(out, "Median", cells, &SpacingSummary::median);
    report_stat_row(out, "Mean", cells, &SpacingSummary::mean);
    report_stat_row(out, "3rd Qu.", cells, &SpacingSummary::q3);
    report_stat_row(out, "Max", cells, &SpacingSummary::max);
    out << "\n";
  }

  out << "## BD/TD by number of clusters\n\n";
  if (curve.empty()) {
    out << "_No BD/TD curve available._\n\n";
  } else {
    out << "| k | BD/TD |\n|---|---|\n";
    for (const auto& [k, ratio] : curve) {
      out << "| " << k << " | " << fixed3(ratio) << " |\n";
    }
    out << "\n";
  }

  out << "## Phase clusters\n\n";
  if (crosstab.rows.empty()) {
    out << "_No clustering available._\n";
  } else {
    out << "Clusters: k = " << crosstab.rows.size() << ".\n\n";
    out << "| Cluster | Frames | Share (%) | Offense (%) | Defense (%) |\n";
    out << "|---|---|---|---|---|\n";
    for (const ClusterShare& row : crosstab.rows) {
      out << "| C" << row.cluster << " | " << row.n_frames << " | " << fixed2(row.share_pct)
          << " | " << fixed2(row.offense_pct) << " | " << fixed2(row.defense_pct) << " |\n";
    }
  }
  write_file(out.str(), path);
}

void write_phase_model(const PhaseModel& model,
                       std::span<const std::pair<TagId, TagId>> columns,
                       std::span<const std::pair<int, double>> curve,
                       std::span<const PhaseLayout> layouts, const PhaseCrosstab& crosstab,
                       const std::filesystem::path& path) {
  nlohmann::ordered_json doc;
  doc["k"] = model.k;
  doc["seed"] = model.seed;
  doc["bd_td"] = model.bd_td;
  doc["iterations"] = model.iterations;

  auto cols = nlohmann::ordered_json::array();
  for (const auto& [a, b] : columns) {
    cols.push_back({a.str(), b.str()});
  }
  doc["columns"] = std::move(cols);

  auto centroids = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < model.centroids.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < model.centroids.cols(); ++c) {
      row.push_back(model.centroids(i, c));
    }
    centroids.push_back(std::move(row));
  }
  doc["centroids"] = std::move(centroids);

  auto assignments = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < model.assignments.size(); ++i) {
    assignments.push_back({{"t_ms", model.frame_ts[i]}, {"cluster", model.assignments[i]}});
  }
  doc["assignments"] = std::move(assignments);

  auto curve_json = nlohmann::ordered_json::array();
  for (const auto& [k, ratio] : curve) {
    curve_json.push_back({k, ratio});
  }
  doc["curve"] = std::move(curve_json);

  if (!crosstab.rows.empty()) {
    auto rows = nlohmann::ordered_json::array();
    for (const ClusterShare& s : crosstab.rows) {
      rows.push_back({{"cluster", s.cluster},
                      {"n_frames", s.n_frames},
                      {"share_pct", s.share_pct},
                      {"offense_pct", s.offense_pct},
                      {"defense_pct", s.defense_pct}});
    }
    doc["crosstab"] = std::move(rows);
  }

  if (!layouts.empty()) {
    auto panels = nlohmann::ordered_json::array();
    for (const PhaseLayout& layout : layouts) {
      nlohmann::ordered_json panel;
      panel["cluster"] = layout.cluster_id;
      nlohmann::ordered_json players;
      for (Eigen::Index i = 0; i < layout.coords.rows(); ++i) {
        players[layout.labels[static_cast<std::size_t>(i)].str()] = {layout.coords(i, 0),
                                                                     layout.coords(i, 1)};
      }
      panel["players"] = std::move(players);
      auto eig = nlohmann::ordered_json::array();
      for (Eigen::Index i = 0; i < layout.eigvals.size(); ++i) {
        eig.push_back(layout.eigvals(i));
      }
      panel["eigvals"] = std::move(eig);
      panel["stress"] = layout.stress;
      panels.push_back(std::move(panel));
    }
    doc["layouts"] = std::move(panels);
  }
  write_file(doc.dump(2) + "\n", path);
}

void write_unattached_events(std::span<const GameEvent> events,
                             const std::filesystem::path& path) {
  std::ostringstream out;
  out << "t_ms,kind,players\n";
  for (const GameEvent& e : events) {
    out << e.t_ms << "," << e.kind_text << ",";
    for (std::size_t i = 0; i < e.players.size(); ++i) {
      if (i > 0) out << ";";
      out << e.players[i].str();
    }
    out << "\n";
  }
  write_file(out.str(), path);
}

}  // namespace courtmotion
