#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "afterimage/rule_set.hpp"

namespace afterimage {

/// The six reference rule sets "f1".."f6". Throws LookupError otherwise.
RuleSet builtin(std::string_view name);

std::vector<std::string> builtin_names();

/// One free parameter of a reference rule set, tuned by viewing uniform
/// patterns of `target_level`.
struct CalibrationFamily {
  std::string name;         // e.g. "f3"
  std::string base;         // builtin it varies, e.g. "f3"
  std::string parameter;    // e.g. "d"
  std::string description;
  double reference_value;   // value the builtin uses
  int target_level;         // level of the all-a_i calibration pattern
};

std::vector<CalibrationFamily> calibration_families();
const CalibrationFamily& calibration_family_info(std::string_view name);

/// The family's rule set at one parameter value. Throws DomainError when the
/// value leaves [0, 1] or breaks the rule-set invariants.
RuleSet family_member(const CalibrationFamily& family, double value);

struct CalibrationVariant {
  double parameter = 0.0;
  RuleSet rules;
  bool reference = false;  // identical rules to the builtin
};

struct FamilySweep {
  CalibrationFamily family;
  std::vector<CalibrationVariant> variants;
  std::vector<std::string> notices;  // grid points dropped, with the reason
};

/// One variant per grid point; points whose rule set is invalid or fails the
/// consistency check are dropped with a notice. Throws DomainError on an
/// empty grid and LookupError on an unknown family.
FamilySweep calibration_family(std::string_view name, const std::vector<double>& grid);

/// Inclusive arithmetic grid start, start + step, ..., stop (step > 0).
std::vector<double> linear_grid(double start, double stop, double step);

}  // namespace afterimage
