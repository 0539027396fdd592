#include "courtmotion/config.hpp"

#include "courtmotion/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
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

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out)) {
    throw InputError("config key '" + key + "': bad number '" + value + "'");
  }
  return out;
}

std::int64_t to_int(const std::string& key, const std::string& value) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw InputError("config key '" + key + "': bad integer '" + value + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw InputError("config key '" + key + "': bad boolean '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(value);
  while (std::getline(in, token, ',')) {
    const std::string_view t = trim(token);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

AttackDirection parse_direction(const std::string& key, const std::string& token) {
  if (token == "+x" || token == "toward_positive_x") return AttackDirection::TowardPositiveX;
  if (token == "-x" || token == "toward_negative_x") return AttackDirection::TowardNegativeX;
  throw InputError("config key '" + key + "': bad direction '" + token + "' (use +x or -x)");
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "input") {
    cfg.input = value;
  } else if (key == "events") {
    cfg.events = value;
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "court.length_m") {
    cfg.court.length_m = to_double(key, value);
    if (cfg.court.length_m <= 0.0) throw InputError("court.length_m must be positive");
  } else if (key == "court.width_m") {
    cfg.court.width_m = to_double(key, value);
    if (cfg.court.width_m <= 0.0) throw InputError("court.width_m must be positive");
  } else if (key == "court.attack") {
    cfg.court.attack_by_period.clear();
    for (const std::string& token : split_list(value)) {
      cfg.court.attack_by_period.push_back(parse_direction(key, token));
    }
    if (cfg.court.attack_by_period.empty()) {
      throw InputError("court.attack needs at least one direction");
    }
  } else if (key == "roster") {
    cfg.roster.clear();
    for (const std::string& token : split_list(value)) cfg.roster.emplace_back(token);
  } else if (key == "roster_size") {
    cfg.roster_size = static_cast<std::size_t>(to_int(key, value));
  } else if (key == "grid_hz") {
    cfg.grid_hz = to_double(key, value);
    if (cfg.grid_hz <= 0.0) throw InputError("grid_hz must be positive");
  } else if (key == "max_gap_ms") {
    cfg.max_gap_ms = to_int(key, value);
  } else if (key == "skip_kalman") {
    cfg.skip_kalman = to_bool(key, value);
  } else if (key == "kf.accel_var") {
    cfg.kalman.process_noise_accel = to_double(key, value);
  } else if (key == "kf.meas_var") {
    cfg.kalman.measurement_noise = to_double(key, value);
  } else if (key == "kf.init_pos_var") {
    cfg.kalman.initial_position_var = to_double(key, value);
  } else if (key == "kf.init_vel_var") {
    cfg.kalman.initial_velocity_var = to_double(key, value);
  } else if (key == "k") {
    cfg.k = static_cast<int>(to_int(key, value));
  } else if (key == "k_range") {
    const std::size_t dots = value.find("..");
    if (dots == std::string::npos) {
      throw InputError("config key 'k_range': expected form a..b");
    }
    cfg.k_min = static_cast<int>(to_int(key, std::string(trim(value.substr(0, dots)))));
    cfg.k_max = static_cast<int>(to_int(key, std::string(trim(value.substr(dots + 2)))));
    if (cfg.k_min < 1 || cfg.k_min > cfg.k_max) {
      throw InputError("config key 'k_range': bad range");
    }
  } else if (key == "min_gain") {
    cfg.min_gain = to_double(key, value);
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
  } else if (key == "restarts") {
    cfg.restarts = static_cast<int>(to_int(key, value));
  } else if (key == "max_iter") {
    cfg.max_iter = static_cast<int>(to_int(key, value));
  } else if (key == "min_play_ms") {
    cfg.min_play_ms = to_int(key, value);
  } else if (key == "join_window_ms") {
    cfg.join_window_ms = to_int(key, value);
  } else if (key == "csv.tag") {
    cfg.csv.tag = value;
  } else if (key == "csv.timestamp") {
    cfg.csv.timestamp = value;
  } else if (key == "csv.x") {
    cfg.csv.x = value;
  } else if (key == "csv.y") {
    cfg.csv.y = value;
  } else {
    throw InputError("unknown config key '" + key + "'");
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open config '" + path.string() + "'");
  }
  RunConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key{trim(stripped.substr(0, eq))};
    const std::string value{trim(stripped.substr(eq + 1))};
    if (key.empty()) {
      throw InputError("config line " + std::to_string(line_no) + ": empty key");
    }
    apply_config_entry(cfg, key, value);
  }
  return cfg;
}

void write_effective_config(const RunConfig& cfg, std::ostream& out) {
  const auto num = [](double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  };
  out << "input = " << cfg.input.string() << "\n";
  if (cfg.events) out << "events = " << cfg.events->string() << "\n";
  out << "out = " << cfg.out.string() << "\n";
  out << "court.length_m = " << num(cfg.court.length_m) << "\n";
  out << "court.width_m = " << num(cfg.court.width_m) << "\n";
  out << "court.attack = ";
  for (std::size_t i = 0; i < cfg.court.attack_by_period.size(); ++i) {
    if (i > 0) out << ",";
    out << (cfg.court.attack_by_period[i] == AttackDirection::TowardPositiveX ? "+x" : "-x");
  }
  out << "\n";
  if (!cfg.roster.empty()) {
    out << "roster = ";
    for (std::size_t i = 0; i < cfg.roster.size(); ++i) {
      if (i > 0) out << ",";
      out << cfg.roster[i].str();
    }
    out << "\n";
  }
  out << "roster_size = " << cfg.roster_size << "\n";
  out << "grid_hz = " << num(cfg.grid_hz) << "\n";
  out << "max_gap_ms = " << cfg.max_gap_ms << "\n";
  out << "skip_kalman = " << (cfg.skip_kalman ? "true" : "false") << "\n";
  out << "kf.accel_var = " << num(cfg.kalman.process_noise_accel) << "\n";
  out << "kf.meas_var = " << num(cfg.kalman.measurement_noise) << "\n";
  out << "kf.init_pos_var = " << num(cfg.kalman.initial_position_var) << "\n";
  out << "kf.init_vel_var = " << num(cfg.kalman.initial_velocity_var) << "\n";
  out << "k = " << cfg.k << "\n";
  out << "k_range = " << cfg.k_min << ".." << cfg.k_max << "\n";
  out << "min_gain = " << num(cfg.min_gain) << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "restarts = " << cfg.restarts << "\n";
  out << "max_iter = " << cfg.max_iter << "\n";
  out << "min_play_ms = " << cfg.min_play_ms << "\n";
  out << "join_window_ms = " << cfg.join_window_ms << "\n";
  out << "csv.tag = " << cfg.csv.tag << "\n";
  out << "csv.timestamp = " << cfg.csv.timestamp << "\n";
  out << "csv.x = " << cfg.csv.x << "\n";
  out << "csv.y = " << cfg.csv.y << "\n";
}

}  // namespace courtmotion
