#pragma once

#include <limits>
#include <string>
#include <vector>

#include "afterimage/rule_set.hpp"

namespace afterimage {

/// One side of a feasible interval. Infinite bounds are allowed: the
/// afterimage function maps into the reals, not into [0, 1].
struct Bound {
  double value = 0.0;
  bool inclusive = false;

  static Bound below() { return {-std::numeric_limits<double>::infinity(), false}; }
  static Bound above() { return {std::numeric_limits<double>::infinity(), false}; }
  bool finite() const { return value > -std::numeric_limits<double>::infinity() &&
                               value < std::numeric_limits<double>::infinity(); }
};

/// Feasible perceived values of a_index.
struct AfterimageLevel {
  int index = 1;
  Bound lower = Bound::below();
  Bound upper = Bound::above();

  bool empty() const;
  bool pinned() const { return !empty() && lower.inclusive && upper.inclusive &&
                               lower.value == upper.value; }
  bool contains(double v) const;
  /// "= 0.3882", "(0.2510, 0.5216)", "(-inf, 0.5216)"
  std::string describe() const;
};

/// a_1 < a_2 < ... < a_level_count, each with its feasible interval.
struct AfterimageSet {
  std::vector<AfterimageLevel> levels;

  int level_count() const { return static_cast<int>(levels.size()); }
  const AfterimageLevel& at(int index) const { return levels.at(static_cast<std::size_t>(index - 1)); }
};

enum class ConstraintKind {
  kPinConflict,    // two b = t rules pin one level to different values
  kEmptyInterval,  // a level's own rule bounds exclude each other
  kOrder,          // a_1 < ... < a_n cannot hold with the level bounds
  kSharedTrigger   // same trigger, larger bias, but not a smaller level
};

std::string to_string(ConstraintKind k);

struct ConstraintViolation {
  ConstraintKind kind;
  std::string description;
};

struct ConsistencyReport {
  bool consistent = false;
  std::vector<ConstraintViolation> violations;
  /// Bounds after propagating the strict level order.
  AfterimageSet feasible;
  /// One concrete assignment a_1 < ... < a_n satisfying every constraint;
  /// empty when inconsistent.
  std::vector<double> witness;
};

/// Decides whether some afterimage function satisfying the naive model's
/// axioms can respect `rs`. Level values are unknowns bounded per rule
/// (b = t pins a to t, b > t forces a < t, b < t forces a > t), ordered
/// strictly, and rules sharing a trigger must map larger biases to lower
/// levels.
ConsistencyReport consistency_check(const RuleSet& rs);

/// Independent check that `values` (a_1..a_n) satisfy every constraint of
/// `rs` directly, without interval propagation.
bool assignment_respects(const RuleSet& rs, const std::vector<double>& values);

}  // namespace afterimage
