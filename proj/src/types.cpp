#include "courtmotion/types.hpp"

#include "courtmotion/errors.hpp"

#include <algorithm>
#include <cctype>

namespace courtmotion {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

bool operator<(const TagId& a, const TagId& b) {
  const std::string& sa = a.str();
  const std::string& sb = b.str();
  const bool numeric_a = all_digits(sa);
  const bool numeric_b = all_digits(sb);
  // Numeric ids sort as values and before everything else; comparing the two
  // classes by different rules would not be a strict weak ordering.
  if (numeric_a != numeric_b) return numeric_a;
  if (numeric_a) {
    const std::size_t za = sa.find_first_not_of('0');
    const std::size_t zb = sb.find_first_not_of('0');
    const std::string_view na = (za == std::string::npos) ? "0" : std::string_view(sa).substr(za);
    const std::string_view nb = (zb == std::string::npos) ? "0" : std::string_view(sb).substr(zb);
    if (na.size() != nb.size()) return na.size() < nb.size();
    if (na != nb) return na < nb;
    // Numerically equal ("007" vs "7"): keep a total order via the raw token.
  }
  return sa < sb;
}

AttackDirection CourtSpec::attack_in(int period) const {
  if (attack_by_period.empty()) {
    throw MissingPeriod("no attack direction configured");
  }
  if (period < 1) {
    throw MissingPeriod("period " + std::to_string(period) + " is out of range");
  }
  return attack_by_period[static_cast<std::size_t>(period - 1) % attack_by_period.size()];
}

Vec2 frame_centroid(const Frame& frame) {
  if (frame.positions.empty()) {
    throw InputError("frame has no positions");
  }
  Vec2 sum = Vec2::Zero();
  for (const auto& [tag, pos] : frame.positions) {
    sum += pos;
  }
  return sum / static_cast<double>(frame.positions.size());
}

}  // namespace courtmotion
