#include "afterimage/consistency.hpp"

#include <cmath>
#include <cstdio>
#include <map>


namespace afterimage {
namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "+inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string describe(const Rule& r) {
  return "(" + to_string(r.bias) + ", " + to_string(r.trigger) + ") -> a" +
         std::to_string(r.level);
}

// Tighter lower bound wins; at equal values the exclusive one is tighter.
Bound max_lower(Bound a, Bound b) {
  if (a.value != b.value) return a.value > b.value ? a : b;
  return {a.value, a.inclusive && b.inclusive};
}

Bound min_upper(Bound a, Bound b) {
  if (a.value != b.value) return a.value < b.value ? a : b;
  return {a.value, a.inclusive && b.inclusive};
}

Bound exclusive(Bound b) { return {b.value, false}; }

// A value inside (lo, hi) honouring both flags, assuming the interval is
// non-empty.
double pick(Bound lo, Bound hi) {
  const bool lo_inf = !lo.finite();
  const bool hi_inf = !hi.finite();
  if (lo_inf && hi_inf) return 0.0;
  if (lo_inf) return hi.inclusive ? hi.value : hi.value - 1.0;
  if (hi_inf) return lo.inclusive ? lo.value : lo.value + 1.0;
  if (lo.value == hi.value) return lo.value;
  return lo.value + (hi.value - lo.value) / 2.0;
}

}  // namespace

bool AfterimageLevel::empty() const {
  if (lower.value < upper.value) return false;
  if (lower.value == upper.value) return !(lower.inclusive && upper.inclusive);
  return true;
}

bool AfterimageLevel::contains(double v) const {
  const bool above = lower.inclusive ? v >= lower.value : v > lower.value;
  const bool below = upper.inclusive ? v <= upper.value : v < upper.value;
  return above && below;
}

std::string AfterimageLevel::describe() const {
  if (pinned()) return "= " + fmt(lower.value);
  if (empty()) return "empty";
  return std::string(lower.inclusive ? "[" : "(") + fmt(lower.value) + ", " + fmt(upper.value) +
         (upper.inclusive ? "]" : ")");
}

std::string to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::kPinConflict:
      return "pin-conflict";
    case ConstraintKind::kEmptyInterval:
      return "empty-interval";
    case ConstraintKind::kOrder:
      return "level-order";
    case ConstraintKind::kSharedTrigger:
      return "shared-trigger-monotonicity";
  }
  return "unknown";
}

ConsistencyReport consistency_check(const RuleSet& rs) {
  ConsistencyReport report;
  const int n = rs.level_count();
  std::vector<AfterimageLevel> raw(static_cast<std::size_t>(n));
  std::vector<const Rule*> pinned_by(static_cast<std::size_t>(n), nullptr);
  for (int j = 1; j <= n; ++j) raw[static_cast<std::size_t>(j - 1)].index = j;

  for (const Rule& r : rs.rules()) {
    auto& lvl = raw[static_cast<std::size_t>(r.level - 1)];
    const double t = r.trigger.value();
    if (r.bias == r.trigger) {
      const Rule*& pin = pinned_by[static_cast<std::size_t>(r.level - 1)];
      if (pin != nullptr && pin->trigger != r.trigger) {
        report.violations.push_back(
            {ConstraintKind::kPinConflict, "a" + std::to_string(r.level) + " pinned to " +
                                               to_string(pin->trigger) + " by " + describe(*pin) +
                                               " and to " + to_string(r.trigger) + " by " +
                                               describe(r)});
      }
      pin = &r;
      lvl.lower = max_lower(lvl.lower, {t, true});
      lvl.upper = min_upper(lvl.upper, {t, true});
    } else if (r.bias > r.trigger) {
      lvl.upper = min_upper(lvl.upper, {t, false});
    } else {
      lvl.lower = max_lower(lvl.lower, {t, false});
    }
  }

  for (const auto& lvl : raw) {
    if (lvl.empty()) {
      report.violations.push_back(
          {ConstraintKind::kEmptyInterval,
           "a" + std::to_string(lvl.index) + " bounds " +
               std::string(lvl.lower.inclusive ? ">= " : "> ") + fmt(lvl.lower.value) + " and " +
               (lvl.upper.inclusive ? "<= " : "< ") + fmt(lvl.upper.value) + " exclude each other"});
    }
  }

  // Strict order a_1 < ... < a_n: lower bounds flow up, upper bounds flow down.
  std::vector<AfterimageLevel> prop = raw;
  for (std::size_t j = 1; j < prop.size(); ++j) {
    prop[j].lower = max_lower(prop[j].lower, exclusive(prop[j - 1].lower));
  }
  for (std::size_t j = prop.size() - 1; j-- > 0;) {
    prop[j].upper = min_upper(prop[j].upper, exclusive(prop[j + 1].upper));
  }
  for (std::size_t j = 0; j < prop.size(); ++j) {
    if (prop[j].empty() && !raw[j].empty()) {
      report.violations.push_back(
          {ConstraintKind::kOrder, "a" + std::to_string(prop[j].index) + " " + raw[j].describe() +
                                       " cannot satisfy a_1 < ... < a_" + std::to_string(n) +
                                       " (propagated bounds " + fmt(prop[j].lower.value) + ", " +
                                       fmt(prop[j].upper.value) + ")"});
    }
  }

  std::map<Intensity, std::vector<const Rule*>> by_trigger;
  for (const Rule& r : rs.rules()) by_trigger[r.trigger].push_back(&r);
  for (const auto& [t, group] : by_trigger) {
    for (const Rule* hi : group) {
      for (const Rule* lo : group) {
        if (hi->bias > lo->bias && !(hi->level < lo->level)) {
          report.violations.push_back(
              {ConstraintKind::kSharedTrigger,
               describe(*hi) + " has the larger bias but not a lower level than " +
                   describe(*lo)});
        }
      }
    }
  }

  report.feasible.levels = prop;
  report.consistent = report.violations.empty();
  if (report.consistent) {
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& lvl : prop) {
      Bound lo = max_lower(lvl.lower, {prev, false});
      double v = pick(lo, lvl.upper);
      report.witness.push_back(v);
      prev = v;
    }
  }
  return report;
}

bool assignment_respects(const RuleSet& rs, const std::vector<double>& values) {
  if (values.size() != static_cast<std::size_t>(rs.level_count())) return false;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (!(values[j - 1] < values[j])) return false;
  }
  const auto rules = rs.rules();
  for (const Rule& r : rules) {
    const double a = values[static_cast<std::size_t>(r.level - 1)];
    const double t = r.trigger.value();
    if ((r.bias == r.trigger) != (a == t)) return false;
    if ((r.bias > r.trigger) != (a < t)) return false;
    if ((r.bias < r.trigger) != (a > t)) return false;
    for (const Rule& other : rules) {
      if (other.trigger != r.trigger) continue;
      const double ao = values[static_cast<std::size_t>(other.level - 1)];
      if ((r.bias > other.bias) != (a < ao)) return false;
    }
  }
  return true;
}

}  // namespace afterimage
