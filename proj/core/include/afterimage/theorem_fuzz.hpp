#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "afterimage/rule_set.hpp"

namespace afterimage {

struct FuzzReport {
  std::size_t requested = 0;
  std::size_t generated = 0;  // consistent rule sets checked
  std::size_t attempts = 0;   // candidates drawn, consistent or not
  std::size_t bias_ambiguous = 0;
  std::size_t trigger_ambiguous = 0;
  std::size_t partially_ambiguous = 0;
  std::size_t injected = 0;   // reference rule sets mixed into the stream
  /// Candidates built to be bias- and trigger-ambiguous at once; every one
  /// must have failed the consistency check.
  std::size_t fully_ambiguous_candidates = 0;
  std::vector<RuleSet> counterexamples;
};

/// A consistent rule set that is both bias- and trigger-ambiguous.
class TheoremViolation : public std::logic_error {
 public:
  explicit TheoremViolation(const RuleSet& rs);
  const RuleSet& rule_set() const { return rule_set_; }

 private:
  RuleSet rule_set_;
};

struct FuzzOptions {
  /// Mix f1 and f2 (one ambiguity each) into the stream every this many sets;
  /// 0 disables injection.
  std::size_t inject_every = 1000;
  bool throw_on_counterexample = true;
};

/// Draws `count` random rule sets over quantized intensities that pass the
/// consistency check and checks none is both bias- and trigger-ambiguous.
///
/// Candidates come from four generators in rotation: binning a sampled
/// synthetic afterimage function (consistent by construction when bins are
/// exact values), uniform random rules, rules built to be ambiguous on one
/// side, and B x T grids built to be ambiguous on both. Everything is
/// filtered through consistency_check.
FuzzReport theorem_fuzz(std::size_t count, std::uint64_t seed, const FuzzOptions& options = {});

}  // namespace afterimage
