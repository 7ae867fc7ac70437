#pragma once

#include <cstdint>

#include "afterimage/grid.hpp"
#include "afterimage/intensity.hpp"
#include "afterimage/pattern.hpp"
#include "afterimage/rule_set.hpp"

namespace afterimage {

struct CellAssignment {
  Grid<Intensity> bias;
  Grid<Intensity> trigger;

  friend bool operator==(const CellAssignment&, const CellAssignment&) = default;
};

/// Per cell, picks uniformly among the rules whose level matches the cell and
/// emits that rule's bias and trigger. The choice for cell i is
/// CounterRandom(seed, "assign").uniform(i, #matches), so the result is a
/// pure function of (pattern, rules, seed) regardless of evaluation order.
/// Throws UnsatisfiableError when a cell's level has no rule.
CellAssignment assign_intensities(const TargetPattern& pattern, const RuleSet& rs,
                                  std::uint64_t seed);

/// A further trigger for an existing bias image: per cell, picks uniformly
/// among rules matching (bias value, target level). `trigger_index`
/// separates the random streams of successive triggers (1 for the second
/// trigger of a sequence, 2 for the third, ...).
///
/// Throws PreconditionError unless rs is bias-ambiguous and every bias value
/// belongs to the rule set's bias intensities; UnsatisfiableError when no
/// rule matches a cell.
Grid<Intensity> derive_trigger_for_bias(const Grid<Intensity>& bias_cells,
                                        const TargetPattern& pattern, const RuleSet& rs,
                                        std::uint64_t seed, std::uint64_t trigger_index = 1);

}  // namespace afterimage
