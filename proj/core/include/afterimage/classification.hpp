#pragma once

#include <string>

#include "afterimage/consistency.hpp"
#include "afterimage/rule_set.hpp"

namespace afterimage {

/// Every predicate of the rule-set algebra evaluated on one rule set.
struct ClassificationReport {
  std::string name;
  ConsistencyReport consistency;
  Verdict trigger_ambiguous;
  Verdict bias_ambiguous;
  Verdict partially_ambiguous;
  Verdict bias_scrambling;
  Verdict trigger_scrambling;
  MappingScheme bias_scheme;
  MappingScheme trigger_scheme;

  bool model_consistent() const { return consistency.consistent; }

  /// Neither ambiguity nor scrambling on either side: the pattern may be
  /// recognizable in both images.
  bool exclusivity_unguarded() const {
    return !trigger_ambiguous && !bias_ambiguous && !bias_scrambling && !trigger_scrambling;
  }
};

ClassificationReport classify(const RuleSet& rs);

}  // namespace afterimage
