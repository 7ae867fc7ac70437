#include "afterimage/builtin.hpp"

#include <cmath>
#include <cstdio>

#include "afterimage/consistency.hpp"
#include "afterimage/errors.hpp"

namespace afterimage {
namespace {

RuleSet make(std::string name, int levels, std::initializer_list<Rule> rules) {
  return RuleSet(std::move(name), levels, std::vector<Rule>(rules));
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

RuleSet builtin(std::string_view name) {
  if (name == "f1") {
    return make("f1", 2, {make_rule(1, 0.25, 1), make_rule(0, 0.25, 2)});
  }
  if (name == "f2") {
    return make("f2", 2, {make_rule(0, 0, 1), make_rule(1, 1, 2), make_rule(0, 0.87, 2),
                          make_rule(1, 0.15, 1)});
  }
  if (name == "f3") {
    return make("f3", 3, {make_rule(1, 0.37, 1), make_rule(0, 0.37, 2), make_rule(1, 0.63, 2),
                          make_rule(0, 0.63, 3)});
  }
  if (name == "f4") {
    return make("f4", 2, {make_rule(1, 0.52, 1), make_rule(0, 0.48, 2),
                          make_rule(0.39, 0.39, 1), make_rule(0.62, 0.62, 2)});
  }
  if (name == "f5") {
    return make("f5", 2, {make_rule(1, 0.57, 1), make_rule(0, 0.43, 2),
                          make_rule(0.43, 0.43, 1), make_rule(0.57, 0.57, 2)});
  }
  if (name == "f6") {
    return make("f6", 2, {make_rule(1, 0.52, 1), make_rule(0, 0.48, 2), make_rule(0, 0.25, 1),
                          make_rule(1, 0.74, 2)});
  }
  throw LookupError("unknown builtin rule set '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"f1", "f2", "f3", "f4", "f5", "f6"}; }

std::vector<CalibrationFamily> calibration_families() {
  return {
      {"f2-black", "f2", "t", "trigger t in (0, t) -> a2, judged on an all-a2 pattern", 0.87, 2},
      {"f2-white", "f2", "t", "trigger t in (1, t) -> a1, judged on an all-a1 pattern", 0.15, 1},
      {"f3", "f3", "d", "triggers 0.5 - d and 0.5 + d shared by both biases", 0.13, 2},
      {"f4-dark", "f4", "x", "inner pair (x, x) -> a1", 0.39, 1},
      {"f4-light", "f4", "x", "inner pair (x, x) -> a2", 0.62, 2},
      {"f5-dark", "f5", "x", "inner pair (x, x) -> a1", 0.43, 1},
      {"f5-light", "f5", "x", "inner pair (x, x) -> a2", 0.57, 2},
      {"f6-t1", "f6", "t1", "trigger t1 in (0, t1) -> a1", 0.25, 1},
      {"f6-t4", "f6", "t4", "trigger t4 in (1, t4) -> a2", 0.74, 2},
  };
}

const CalibrationFamily& calibration_family_info(std::string_view name) {
  static const std::vector<CalibrationFamily> families = calibration_families();
  for (const auto& f : families) {
    if (f.name == name) return f;
  }
  throw LookupError("unknown calibration family '" + std::string(name) + "'");
}

RuleSet family_member(const CalibrationFamily& family, double v) {
  const std::string name = family.name + "[" + family.parameter + "=" + format_value(v) + "]";
  const std::string& f = family.name;
  if (f == "f2-black") {
    return make(name, 2, {make_rule(0, 0, 1), make_rule(1, 1, 2), make_rule(0, v, 2),
                          make_rule(1, 0.15, 1)});
  }
  if (f == "f2-white") {
    return make(name, 2, {make_rule(0, 0, 1), make_rule(1, 1, 2), make_rule(0, 0.87, 2),
                          make_rule(1, v, 1)});
  }
  if (f == "f3") {
    const double lo = 0.5 - v;
    const double hi = 0.5 + v;
    return make(name, 3, {make_rule(1, lo, 1), make_rule(0, lo, 2), make_rule(1, hi, 2),
                          make_rule(0, hi, 3)});
  }
  if (f == "f4-dark") {
    return make(name, 2, {make_rule(1, 0.52, 1), make_rule(0, 0.48, 2), make_rule(v, v, 1),
                          make_rule(0.62, 0.62, 2)});
  }
  if (f == "f4-light") {
    return make(name, 2, {make_rule(1, 0.52, 1), make_rule(0, 0.48, 2),
                          make_rule(0.39, 0.39, 1), make_rule(v, v, 2)});
  }
  if (f == "f5-dark") {
    return make(name, 2, {make_rule(1, 0.57, 1), make_rule(0, 0.43, 2), make_rule(v, v, 1),
                          make_rule(0.57, 0.57, 2)});
  }
  if (f == "f5-light") {
    return make(name, 2, {make_rule(1, 0.57, 1), make_rule(0, 0.43, 2),
                          make_rule(0.43, 0.43, 1), make_rule(v, v, 2)});
  }
  if (f == "f6-t1") {
    return make(name, 2, {make_rule(1, 0.52, 1), make_rule(0, 0.48, 2), make_rule(0, v, 1),
                          make_rule(1, 0.74, 2)});
  }
  if (f == "f6-t4") {
    return make(name, 2, {make_rule(1, 0.52, 1), make_rule(0, 0.48, 2), make_rule(0, 0.25, 1),
                          make_rule(1, v, 2)});
  }
  throw LookupError("unknown calibration family '" + f + "'");
}

FamilySweep calibration_family(std::string_view name, const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("calibration grid is empty");
  FamilySweep sweep{calibration_family_info(name), {}, {}};
  const RuleSet reference = builtin(sweep.family.base);
  for (double v : grid) {
    try {
      RuleSet rs = family_member(sweep.family, v);
      const ConsistencyReport cr = consistency_check(rs);
      if (!cr.consistent) {
        sweep.notices.push_back(sweep.family.parameter + "=" + format_value(v) +
                                " dropped: " + cr.violations.front().description);
        continue;
      }
      const bool ref = rs.same_rules(reference);
      sweep.variants.push_back({v, std::move(rs), ref});
    } catch (const DomainError& e) {
      sweep.notices.push_back(sweep.family.parameter + "=" + format_value(v) +
                              " dropped: " + e.what());
    }
  }
  return sweep;
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw DomainError("grid step must be > 0");
  if (stop < start) throw DomainError("grid stop precedes start");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    // Round to 12 decimals so 0.05 + 8 * 0.01 prints and compares as 0.13.
    out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return out;
}

}  // namespace afterimage
