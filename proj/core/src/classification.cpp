#include "afterimage/classification.hpp"

namespace afterimage {

ClassificationReport classify(const RuleSet& rs) {
  ClassificationReport out;
  out.name = rs.name();
  out.consistency = consistency_check(rs);
  out.trigger_ambiguous = check_ambiguous(rs, Side::kTrigger);
  out.bias_ambiguous = check_ambiguous(rs, Side::kBias);
  out.partially_ambiguous = check_partially_ambiguous(rs);
  out.bias_scrambling = check_scrambling(rs, Side::kBias);
  out.trigger_scrambling = check_scrambling(rs, Side::kTrigger);
  out.bias_scheme = mapping_scheme(rs, Side::kBias);
  out.trigger_scheme = mapping_scheme(rs, Side::kTrigger);
  return out;
}

}  // namespace afterimage
