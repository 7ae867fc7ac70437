#pragma once

#include <compare>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "afterimage/intensity.hpp"

namespace afterimage {

/// f_r(bias, trigger) = a_level, level 1-based.
struct Rule {
  Intensity bias;
  Intensity trigger;
  int level = 1;

  friend constexpr auto operator<=>(const Rule&, const Rule&) = default;
};

/// Rule with intensities given as decimals; quantized on construction.
Rule make_rule(double bias, double trigger, int level);

enum class Side { kBias, kTrigger };

std::string to_string(Side s);

/// A finite partial surjective map from (bias, trigger) pairs onto the
/// afterimage levels 1..level_count.
///
/// Rules are kept sorted by (bias, trigger). Construction throws DomainError
/// when level_count < 2, a level is out of range, two rules share a
/// (bias, trigger) pair, or a level has no rule.
class RuleSet {
 public:
  RuleSet(std::string name, int level_count, std::vector<Rule> rules);

  const std::string& name() const { return name_; }
  int level_count() const { return level_count_; }
  std::span<const Rule> rules() const { return rules_; }

  /// Rules producing `level`, in stored order.
  std::vector<Rule> rules_for_level(int level) const;

  RuleSet renamed(std::string name) const;

  /// Same levels and rules; names are ignored.
  bool same_rules(const RuleSet& other) const;

  friend bool operator==(const RuleSet&, const RuleSet&) = default;

 private:
  std::string name_;
  int level_count_;
  std::vector<Rule> rules_;
};

/// Ascending distinct intensities on one side of the rules (B or T).
std::vector<Intensity> intensity_set(std::span<const Rule> rules, Side side);
inline std::vector<Intensity> bias_set(std::span<const Rule> rules) {
  return intensity_set(rules, Side::kBias);
}
inline std::vector<Intensity> trigger_set(std::span<const Rule> rules) {
  return intensity_set(rules, Side::kTrigger);
}
inline std::vector<Intensity> bias_set(const RuleSet& rs) { return bias_set(rs.rules()); }
inline std::vector<Intensity> trigger_set(const RuleSet& rs) { return trigger_set(rs.rules()); }

/// Entry i holds the level indices reachable from the i-th intensity (dark to
/// light) of the chosen side.
struct MappingScheme {
  Side side = Side::kBias;
  std::vector<std::set<int>> entries;

  friend bool operator==(const MappingScheme&, const MappingScheme&) = default;
};

MappingScheme mapping_scheme(const RuleSet& rs, Side side);

/// "({2}, {1}, {2}, {1})"
std::string to_string(const MappingScheme& scheme);

/// Every rule's intensity on `side` reaches every level through some rule
/// sharing it. kTrigger is trigger ambiguity, kBias is bias ambiguity.
bool is_ambiguous(const RuleSet& rs, Side side);
inline bool is_trigger_ambiguous(const RuleSet& rs) { return is_ambiguous(rs, Side::kTrigger); }
inline bool is_bias_ambiguous(const RuleSet& rs) { return is_ambiguous(rs, Side::kBias); }

/// Every bias intensity and every trigger intensity reaches at least two
/// distinct levels.
bool is_partially_ambiguous(const RuleSet& rs);

/// Mapping-scheme separation: for every level occurring at two or more entry
/// positions, each pair of consecutive occurrences has every other level at
/// some position strictly between them.
bool scheme_is_separated(const MappingScheme& scheme, int level_count);

/// Every level occurs at two or more entry positions.
bool scheme_has_multiplicity(const MappingScheme& scheme, int level_count);

/// Separation and multiplicity on the chosen side's mapping scheme.
bool is_scrambling(const RuleSet& rs, Side side);
bool scheme_is_scrambling(const MappingScheme& scheme, int level_count);

/// The nearest-intensity grouping property evaluated literally over the
/// rules: for each rule (x, a) and each other level a' there is a rule
/// (x', a') with |x - x'| < |x - x''| for every x'' != x that also yields a.
/// With `require_distinct` the witness x' must differ from x; without it
/// x' = x is admitted, which makes every ambiguous side pass trivially.
bool satisfies_grouping_property(const RuleSet& rs, Side side, bool require_distinct = false);

/// Every rule's level is also produced from some other intensity on `side`.
bool satisfies_multiplicity_property(const RuleSet& rs, Side side);

/// A verdict with a human-readable counterexample when it fails.
struct Verdict {
  bool holds = false;
  std::string counterexample;

  explicit operator bool() const { return holds; }
};

Verdict check_ambiguous(const RuleSet& rs, Side side);
Verdict check_partially_ambiguous(const RuleSet& rs);
Verdict check_scrambling(const RuleSet& rs, Side side);

}  // namespace afterimage
