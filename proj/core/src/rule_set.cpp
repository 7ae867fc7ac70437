#include "afterimage/rule_set.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "afterimage/errors.hpp"

namespace afterimage {
namespace {

Intensity side_of(const Rule& r, Side side) {
  return side == Side::kBias ? r.bias : r.trigger;
}

std::string describe(const Rule& r) {
  return "(" + to_string(r.bias) + ", " + to_string(r.trigger) + ") -> a" +
         std::to_string(r.level);
}

// Level sets reachable from each intensity on one side, keyed by intensity.
std::map<Intensity, std::set<int>> reach(const RuleSet& rs, Side side) {
  std::map<Intensity, std::set<int>> out;
  for (const Rule& r : rs.rules()) out[side_of(r, side)].insert(r.level);
  return out;
}

std::vector<std::vector<std::size_t>> positions_by_level(const MappingScheme& scheme,
                                                         int level_count) {
  std::vector<std::vector<std::size_t>> pos(static_cast<std::size_t>(level_count) + 1);
  for (std::size_t i = 0; i < scheme.entries.size(); ++i) {
    for (int j : scheme.entries[i]) {
      if (j >= 1 && j <= level_count) pos[static_cast<std::size_t>(j)].push_back(i);
    }
  }
  return pos;
}

// Empty string when separated, else a description of the first gap.
std::string separation_failure(const MappingScheme& scheme, int level_count) {
  const auto pos = positions_by_level(scheme, level_count);
  for (int j = 1; j <= level_count; ++j) {
    const auto& pj = pos[static_cast<std::size_t>(j)];
    for (std::size_t k = 1; k < pj.size(); ++k) {
      const std::size_t p = pj[k - 1];
      const std::size_t q = pj[k];
      for (int other = 1; other <= level_count; ++other) {
        if (other == j) continue;
        bool found = false;
        for (std::size_t r = p + 1; r < q && !found; ++r) {
          found = scheme.entries[r].contains(other);
        }
        if (!found) {
          std::ostringstream os;
          os << "level " << j << " at positions " << p + 1 << " and " << q + 1
             << " without level " << other << " strictly between";
          return os.str();
        }
      }
    }
  }
  return {};
}

std::string multiplicity_failure(const MappingScheme& scheme, int level_count) {
  const auto pos = positions_by_level(scheme, level_count);
  for (int j = 1; j <= level_count; ++j) {
    if (pos[static_cast<std::size_t>(j)].size() < 2) {
      return "level " + std::to_string(j) + " occurs at only " +
             std::to_string(pos[static_cast<std::size_t>(j)].size()) + " position(s)";
    }
  }
  return {};
}

}  // namespace

Rule make_rule(double bias, double trigger, int level) {
  return Rule{quantize(bias), quantize(trigger), level};
}

std::string to_string(Side s) { return s == Side::kBias ? "bias" : "trigger"; }

RuleSet::RuleSet(std::string name, int level_count, std::vector<Rule> rules)
    : name_(std::move(name)), level_count_(level_count), rules_(std::move(rules)) {
  if (level_count_ < 2) {
    throw DomainError("rule set '" + name_ + "' needs at least 2 afterimage levels");
  }
  std::sort(rules_.begin(), rules_.end());
  std::vector<bool> seen(static_cast<std::size_t>(level_count_) + 1, false);
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Rule& r = rules_[i];
    if (r.level < 1 || r.level > level_count_) {
      throw DomainError("rule " + describe(r) + " level outside 1.." +
                        std::to_string(level_count_));
    }
    if (i > 0 && rules_[i - 1].bias == r.bias && rules_[i - 1].trigger == r.trigger) {
      throw DomainError("rules " + describe(rules_[i - 1]) + " and " + describe(r) +
                        " share a (bias, trigger) pair");
    }
    seen[static_cast<std::size_t>(r.level)] = true;
  }
  for (int j = 1; j <= level_count_; ++j) {
    if (!seen[static_cast<std::size_t>(j)]) {
      throw DomainError("rule set '" + name_ + "' is not surjective: no rule yields a" +
                        std::to_string(j));
    }
  }
}

std::vector<Rule> RuleSet::rules_for_level(int level) const {
  std::vector<Rule> out;
  for (const Rule& r : rules_) {
    if (r.level == level) out.push_back(r);
  }
  return out;
}

RuleSet RuleSet::renamed(std::string name) const {
  RuleSet copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool RuleSet::same_rules(const RuleSet& other) const {
  return level_count_ == other.level_count_ && rules_ == other.rules_;
}

std::vector<Intensity> intensity_set(std::span<const Rule> rules, Side side) {
  std::vector<Intensity> out;
  out.reserve(rules.size());
  for (const Rule& r : rules) out.push_back(side_of(r, side));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MappingScheme mapping_scheme(const RuleSet& rs, Side side) {
  MappingScheme scheme{side, {}};
  for (auto& [intensity, levels] : reach(rs, side)) scheme.entries.push_back(levels);
  return scheme;
}

std::string to_string(const MappingScheme& scheme) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < scheme.entries.size(); ++i) {
    if (i) os << ", ";
    os << '{';
    bool first = true;
    for (int j : scheme.entries[i]) {
      if (!first) os << ", ";
      os << j;
      first = false;
    }
    os << '}';
  }
  os << ')';
  return os.str();
}

Verdict check_ambiguous(const RuleSet& rs, Side side) {
  const auto reached = reach(rs, side);
  for (const Rule& r : rs.rules()) {
    const auto& levels = reached.at(side_of(r, side));
    for (int j = 1; j <= rs.level_count(); ++j) {
      if (!levels.contains(j)) {
        return {false, "rule " + describe(r) + ": no rule with " + to_string(side) + " " +
                           to_string(side_of(r, side)) + " yields a" + std::to_string(j)};
      }
    }
  }
  return {true, {}};
}

bool is_ambiguous(const RuleSet& rs, Side side) { return check_ambiguous(rs, side).holds; }

Verdict check_partially_ambiguous(const RuleSet& rs) {
  for (Side side : {Side::kBias, Side::kTrigger}) {
    for (const auto& [intensity, levels] : reach(rs, side)) {
      if (levels.size() < 2) {
        return {false, to_string(side) + " intensity " + to_string(intensity) +
                           " reaches only a" + std::to_string(*levels.begin())};
      }
    }
  }
  return {true, {}};
}

bool is_partially_ambiguous(const RuleSet& rs) { return check_partially_ambiguous(rs).holds; }

bool scheme_is_separated(const MappingScheme& scheme, int level_count) {
  return separation_failure(scheme, level_count).empty();
}

bool scheme_has_multiplicity(const MappingScheme& scheme, int level_count) {
  return multiplicity_failure(scheme, level_count).empty();
}

bool scheme_is_scrambling(const MappingScheme& scheme, int level_count) {
  return scheme_is_separated(scheme, level_count) &&
         scheme_has_multiplicity(scheme, level_count);
}

Verdict check_scrambling(const RuleSet& rs, Side side) {
  const MappingScheme scheme = mapping_scheme(rs, side);
  if (auto why = separation_failure(scheme, rs.level_count()); !why.empty()) {
    return {false, to_string(scheme) + ": " + why};
  }
  if (auto why = multiplicity_failure(scheme, rs.level_count()); !why.empty()) {
    return {false, to_string(scheme) + ": " + why};
  }
  return {true, {}};
}

bool is_scrambling(const RuleSet& rs, Side side) { return check_scrambling(rs, side).holds; }

bool satisfies_grouping_property(const RuleSet& rs, Side side, bool require_distinct) {
  const auto rules = rs.rules();
  for (const Rule& r : rules) {
    const int x = side_of(r, side).code();
    // Nearest distance from x to another intensity that also yields r.level.
    int nearest_same = kLevelsPerChannel + 1;
    for (const Rule& other : rules) {
      const int xo = side_of(other, side).code();
      if (other.level == r.level && xo != x) nearest_same = std::min(nearest_same, std::abs(x - xo));
    }
    for (int alt = 1; alt <= rs.level_count(); ++alt) {
      if (alt == r.level) continue;
      bool witnessed = false;
      for (const Rule& cand : rules) {
        if (cand.level != alt) continue;
        const int xc = side_of(cand, side).code();
        if (require_distinct && xc == x) continue;
        if (std::abs(x - xc) < nearest_same) {
          witnessed = true;
          break;
        }
      }
      if (!witnessed) return false;
    }
  }
  return true;
}

bool satisfies_multiplicity_property(const RuleSet& rs, Side side) {
  for (const Rule& r : rs.rules()) {
    bool other = false;
    for (const Rule& cand : rs.rules()) {
      if (cand.level == r.level && side_of(cand, side) != side_of(r, side)) {
        other = true;
        break;
      }
    }
    if (!other) return false;
  }
  return true;
}

}  // namespace afterimage
