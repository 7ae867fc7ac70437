#include <gtest/gtest.h>

#include <afterimage/builtin.hpp>
#include <afterimage/classification.hpp>
#include <afterimage/consistency.hpp>
#include <afterimage/errors.hpp>
#include <afterimage/random.hpp>
#include <afterimage/rule_set.hpp>
#include <afterimage/rule_set_io.hpp>
#include <afterimage/theorem_fuzz.hpp>

#include "oracles.hpp"

namespace afterimage {
namespace {

std::vector<Intensity> q(std::initializer_list<double> vs) {
  std::vector<Intensity> out;
  for (double v : vs) out.push_back(quantize(v));
  return out;
}

MappingScheme scheme(Side side, std::vector<std::set<int>> entries) { return {side, std::move(entries)}; }

TEST(RuleSet, Validation) {
  EXPECT_THROW(RuleSet("x", 1, {make_rule(0, 0, 1)}), DomainError);
  EXPECT_THROW(RuleSet("x", 2, {make_rule(0, 0, 1)}), DomainError);  // a2 unused
  EXPECT_THROW(RuleSet("x", 2, {make_rule(0, 0, 1), make_rule(0, 0, 2)}), DomainError);
  EXPECT_THROW(RuleSet("x", 2, {make_rule(0, 0, 1), make_rule(1, 1, 3)}), DomainError);
  EXPECT_NO_THROW(RuleSet("x", 2, {make_rule(0, 0, 1), make_rule(1, 1, 2)}));
}

TEST(RuleSet, RulesAreSortedAndQuantized) {
  const RuleSet rs("x", 2, {make_rule(1, 0.25, 1), make_rule(0, 0.25, 2)});
  ASSERT_EQ(rs.rules().size(), 2u);
  EXPECT_EQ(rs.rules()[0].bias.code(), 0);
  EXPECT_EQ(rs.rules()[0].trigger.code(), 64);
}

TEST(Builtins, VerbatimRules) {
  const RuleSet f2 = builtin("f2");
  EXPECT_NE(std::find(f2.rules().begin(), f2.rules().end(), make_rule(0, 0.87, 2)), f2.rules().end());
  const RuleSet f3 = builtin("f3");
  for (const Rule& r : {make_rule(0, 0.37, 2), make_rule(1, 0.63, 2)}) {
    EXPECT_NE(std::find(f3.rules().begin(), f3.rules().end(), r), f3.rules().end());
  }
  const RuleSet f6 = builtin("f6");
  for (const Rule& r : {make_rule(0, 0.25, 1), make_rule(1, 0.74, 2)}) {
    EXPECT_NE(std::find(f6.rules().begin(), f6.rules().end(), r), f6.rules().end());
  }
  EXPECT_THROW(builtin("f7"), LookupError);
  EXPECT_EQ(builtin_names().size(), 6u);
}

TEST(DerivedSets, BiasAndTrigger) {
  EXPECT_EQ(bias_set(builtin("f4")), q({0, 0.39, 0.62, 1}));
  EXPECT_EQ(bias_set(builtin("f6")), q({0, 1}));
  EXPECT_EQ(trigger_set(builtin("f1")), q({0.25}));
  EXPECT_EQ(trigger_set(builtin("f6")), q({0.25, 0.48, 0.52, 0.74}));
  const Rule single[] = {make_rule(0.5, 0.5, 1)};
  EXPECT_EQ(bias_set(single), q({0.5}));
  EXPECT_EQ(trigger_set(single), q({0.5}));
}

TEST(MappingSchemes, PublishedSchemes) {
  EXPECT_EQ(mapping_scheme(builtin("f1"), Side::kBias), scheme(Side::kBias, {{2}, {1}}));
  EXPECT_EQ(mapping_scheme(builtin("f2"), Side::kBias), scheme(Side::kBias, {{1, 2}, {1, 2}}));
  EXPECT_EQ(mapping_scheme(builtin("f4"), Side::kBias), scheme(Side::kBias, {{2}, {1}, {2}, {1}}));
  EXPECT_EQ(mapping_scheme(builtin("f4"), Side::kTrigger), scheme(Side::kTrigger, {{1}, {2}, {1}, {2}}));
  EXPECT_EQ(mapping_scheme(builtin("f6"), Side::kTrigger), scheme(Side::kTrigger, {{1}, {2}, {1}, {2}}));
  EXPECT_EQ(to_string(mapping_scheme(builtin("f2"), Side::kBias)), "({1, 2}, {1, 2})");
}

TEST(MappingSchemes, CoverAllLevels) {
  for (const auto& name : builtin_names()) {
    const RuleSet rs = builtin(name);
    for (Side side : {Side::kBias, Side::kTrigger}) {
      const MappingScheme s = mapping_scheme(rs, side);
      std::set<int> all;
      for (const auto& e : s.entries) {
        EXPECT_FALSE(e.empty());
        all.insert(e.begin(), e.end());
      }
      EXPECT_EQ(static_cast<int>(all.size()), rs.level_count()) << name;
      const auto n = side == Side::kBias ? bias_set(rs).size() : trigger_set(rs).size();
      EXPECT_EQ(s.entries.size(), n);
    }
  }
}

struct Expected {
  const char* name;
  bool trigger_ambiguous, bias_ambiguous, partial, bias_scrambling, trigger_scrambling;
};

constexpr Expected kTable[] = {
    {"f1", true, false, false, false, false}, {"f2", false, true, false, false, false},
    {"f3", false, false, true, false, false}, {"f4", false, false, false, true, true},
    {"f5", true, false, false, true, false},  {"f6", false, true, false, false, true},
};

TEST(Classification, MatchesPublishedTable) {
  for (const Expected& e : kTable) {
    const ClassificationReport r = classify(builtin(e.name));
    EXPECT_TRUE(r.model_consistent()) << e.name;
    EXPECT_EQ(r.trigger_ambiguous.holds, e.trigger_ambiguous) << e.name;
    EXPECT_EQ(r.bias_ambiguous.holds, e.bias_ambiguous) << e.name;
    EXPECT_EQ(r.partially_ambiguous.holds, e.partial) << e.name;
    EXPECT_EQ(r.bias_scrambling.holds, e.bias_scrambling) << e.name;
    EXPECT_EQ(r.trigger_scrambling.holds, e.trigger_scrambling) << e.name;
  }
}

TEST(Classification, AgreesWithDefinitionalOracle) {
  for (const auto& name : builtin_names()) {
    const RuleSet rs = builtin(name);
    const auto rules = oracle::plain(rs);
    EXPECT_EQ(is_trigger_ambiguous(rs), oracle::ambiguous(rules, rs.level_count(), true)) << name;
    EXPECT_EQ(is_bias_ambiguous(rs), oracle::ambiguous(rules, rs.level_count(), false)) << name;
    EXPECT_EQ(is_partially_ambiguous(rs), oracle::partially_ambiguous(rules)) << name;
  }
}

TEST(Classification, NegativeVerdictsCarryCounterexamples) {
  const ClassificationReport r = classify(builtin("f2"));
  EXPECT_FALSE(r.trigger_ambiguous.holds);
  EXPECT_FALSE(r.trigger_ambiguous.counterexample.empty());
  EXPECT_TRUE(classify(builtin("f3")).exclusivity_unguarded());
  EXPECT_FALSE(classify(builtin("f6")).exclusivity_unguarded());
}

TEST(Scrambling, SchemeCriterion) {
  EXPECT_FALSE(scheme_is_scrambling(scheme(Side::kBias, {{1}, {2}, {1}}), 2));
  EXPECT_TRUE(scheme_is_separated(scheme(Side::kBias, {{1}, {2}, {1}}), 2));
  EXPECT_FALSE(scheme_has_multiplicity(scheme(Side::kBias, {{1}, {2}, {1}}), 2));
  EXPECT_FALSE(scheme_is_separated(scheme(Side::kBias, {{1, 2}, {1, 2}}), 2));
  EXPECT_TRUE(scheme_is_scrambling(scheme(Side::kBias, {{2}, {1}, {2}, {1}}), 2));
  EXPECT_FALSE(scheme_is_scrambling(scheme(Side::kBias, {{1}, {1}, {2}, {2}}), 2));
  EXPECT_TRUE(scheme_is_scrambling(scheme(Side::kBias, {{1}, {2}, {3}, {1}, {2}, {3}}), 3));
  EXPECT_FALSE(scheme_is_scrambling(scheme(Side::kBias, {{1}, {2}, {1}, {3}, {2}, {3}}), 3));
  EXPECT_FALSE(is_scrambling(builtin("f6"), Side::kBias));
}

TEST(Scrambling, ImpliesMultiplicityByDirectCount) {
  for (const auto& name : builtin_names()) {
    const RuleSet rs = builtin(name);
    for (Side side : {Side::kBias, Side::kTrigger}) {
      if (!is_scrambling(rs, side)) continue;
      const MappingScheme s = mapping_scheme(rs, side);
      for (int a = 1; a <= rs.level_count(); ++a) {
        int positions = 0;
        for (const auto& e : s.entries) positions += e.contains(a);
        EXPECT_GE(positions, 2) << name;
      }
    }
  }
}

TEST(GroupingProperty, LiteralReadingIsDegenerateWithoutDistinctness) {
  // Admitting the same intensity as its own witness makes any ambiguous side
  // pass; requiring a distinct witness does not.
  const RuleSet f2 = builtin("f2");
  EXPECT_TRUE(satisfies_grouping_property(f2, Side::kBias, false));
  EXPECT_FALSE(satisfies_grouping_property(f2, Side::kBias, true));
  EXPECT_TRUE(satisfies_grouping_property(builtin("f4"), Side::kBias, true));
  EXPECT_TRUE(satisfies_multiplicity_property(builtin("f4"), Side::kTrigger));
  EXPECT_FALSE(satisfies_multiplicity_property(builtin("f1"), Side::kBias));
}

TEST(Consistency, BuiltinsPass) {
  for (const auto& name : builtin_names()) {
    const ConsistencyReport r = consistency_check(builtin(name));
    EXPECT_TRUE(r.consistent) << name;
    EXPECT_TRUE(assignment_respects(builtin(name), r.witness)) << name;
    EXPECT_TRUE(oracle::respects(oracle::plain(builtin(name)), r.witness)) << name;
  }
}

TEST(Consistency, F4LevelsArePinned) {
  const ConsistencyReport r = consistency_check(builtin("f4"));
  ASSERT_TRUE(r.consistent);
  EXPECT_TRUE(r.feasible.at(1).pinned());
  EXPECT_DOUBLE_EQ(r.feasible.at(1).lower.value, quantize(0.39).value());
  EXPECT_TRUE(r.feasible.at(2).pinned());
  EXPECT_DOUBLE_EQ(r.feasible.at(2).lower.value, quantize(0.62).value());
}

TEST(Consistency, F6Intervals) {
  const ConsistencyReport r = consistency_check(builtin("f6"));
  ASSERT_TRUE(r.consistent);
  const AfterimageLevel& a1 = r.feasible.at(1);
  const AfterimageLevel& a2 = r.feasible.at(2);
  EXPECT_DOUBLE_EQ(a1.lower.value, quantize(0.25).value());
  EXPECT_FALSE(a1.lower.inclusive);
  EXPECT_DOUBLE_EQ(a1.upper.value, quantize(0.52).value());
  EXPECT_DOUBLE_EQ(a2.lower.value, quantize(0.48).value());
  EXPECT_DOUBLE_EQ(a2.upper.value, quantize(0.74).value());
  EXPECT_FALSE(a2.upper.inclusive);
}

TEST(Consistency, ConflictingPinsRejected) {
  const RuleSet bad("conflict", 2, {make_rule(0.3, 0.3, 2), make_rule(0.6, 0.6, 1)});
  const ConsistencyReport r = consistency_check(bad);
  EXPECT_FALSE(r.consistent);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().kind, ConstraintKind::kOrder);
  EXPECT_TRUE(r.witness.empty());
  EXPECT_FALSE(oracle::consistent(oracle::plain(bad), 2));
}

TEST(Consistency, SharedTriggerOrder) {
  // Same trigger, larger bias mapped to the higher level.
  const RuleSet bad("shared", 2, {make_rule(0, 0.5, 1), make_rule(1, 0.5, 2)});
  EXPECT_FALSE(consistency_check(bad).consistent);
  EXPECT_FALSE(oracle::consistent(oracle::plain(bad), 2));
}

TEST(Consistency, RandomSetsAgreeWithExhaustiveOracle) {
  SequentialRandom rng(2024, "consistency-oracle");
  int consistent = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    const int levels = 2 + static_cast<int>(rng.uniform(2));
    const int n = levels + static_cast<int>(rng.uniform(4));
    std::vector<Rule> rules;
    std::set<std::pair<int, int>> used;
    for (int i = 0; static_cast<int>(rules.size()) < n && i < 100; ++i) {
      // A small alphabet makes equalities (b = t, shared triggers) common.
      const int b = static_cast<int>(rng.uniform(6)) * 51;
      const int t = static_cast<int>(rng.uniform(6)) * 51;
      if (!used.insert({b, t}).second) continue;
      const int a = static_cast<int>(rules.size()) < levels ? static_cast<int>(rules.size()) + 1
                                                             : 1 + static_cast<int>(rng.uniform(levels));
      rules.push_back(Rule{Intensity::from_code(static_cast<std::uint8_t>(b)),
                           Intensity::from_code(static_cast<std::uint8_t>(t)), a});
    }
    if (static_cast<int>(rules.size()) < levels) continue;
    const RuleSet rs("r", levels, rules);
    const ConsistencyReport r = consistency_check(rs);
    ASSERT_EQ(r.consistent, oracle::consistent(oracle::plain(rs), levels)) << iter;
    if (r.consistent) {
      ++consistent;
      EXPECT_TRUE(oracle::respects(oracle::plain(rs), r.witness));
      for (int lvl = 1; lvl <= levels; ++lvl) EXPECT_TRUE(r.feasible.at(lvl).contains(r.witness[lvl - 1]));
    }
    EXPECT_EQ(is_bias_ambiguous(rs), oracle::ambiguous(oracle::plain(rs), levels, false));
    EXPECT_EQ(is_trigger_ambiguous(rs), oracle::ambiguous(oracle::plain(rs), levels, true));
    EXPECT_EQ(is_partially_ambiguous(rs), oracle::partially_ambiguous(oracle::plain(rs)));
  }
  EXPECT_GT(consistent, 100);
}

TEST(TheoremFuzz, SmallRunFindsNoCounterexample) {
  const FuzzReport r = theorem_fuzz(5000, 11);
  EXPECT_EQ(r.generated, 5000u);
  EXPECT_TRUE(r.counterexamples.empty());
  EXPECT_GT(r.bias_ambiguous, 0u);
  EXPECT_GT(r.trigger_ambiguous, 0u);
  EXPECT_GT(r.injected, 0u);
  EXPECT_GT(r.fully_ambiguous_candidates, 0u);
}

TEST(TheoremFuzz, ZeroCountIsEmpty) {
  const FuzzReport r = theorem_fuzz(0, 1);
  EXPECT_EQ(r.generated, 0u);
  EXPECT_EQ(r.attempts, 0u);
}

TEST(TheoremFuzz, Deterministic) {
  const FuzzReport a = theorem_fuzz(500, 3);
  const FuzzReport b = theorem_fuzz(500, 3);
  EXPECT_EQ(a.attempts, b.attempts);
  EXPECT_EQ(a.bias_ambiguous, b.bias_ambiguous);
  EXPECT_EQ(a.trigger_ambiguous, b.trigger_ambiguous);
}

TEST(TheoremFuzz, InjectedReferenceSetsHaveOneAmbiguityEach) {
  EXPECT_TRUE(is_trigger_ambiguous(builtin("f1")));
  EXPECT_FALSE(is_bias_ambiguous(builtin("f1")));
  EXPECT_TRUE(is_bias_ambiguous(builtin("f2")));
  EXPECT_FALSE(is_trigger_ambiguous(builtin("f2")));
}

TEST(Families, F3SweepReproducesBuiltin) {
  const FamilySweep sweep = calibration_family("f3", linear_grid(0.05, 0.25, 0.01));
  EXPECT_EQ(sweep.variants.size(), 21u);
  int references = 0;
  for (const auto& v : sweep.variants) {
    if (v.reference) {
      ++references;
      EXPECT_NEAR(v.parameter, 0.13, 1e-9);
      EXPECT_TRUE(v.rules.same_rules(builtin("f3")));
    }
  }
  EXPECT_EQ(references, 1);
}

TEST(Families, F2VariantAtReferenceEqualsBuiltin) {
  const FamilySweep sweep = calibration_family("f2-black", {0.85, 0.87, 0.89});
  ASSERT_EQ(sweep.variants.size(), 3u);
  EXPECT_TRUE(sweep.variants[1].rules.same_rules(builtin("f2")));
  EXPECT_TRUE(sweep.variants[1].reference);
}

TEST(Families, EdgeCases) {
  EXPECT_EQ(calibration_family("f3", {0.13}).variants.size(), 1u);
  EXPECT_THROW(calibration_family("f3", {}), DomainError);
  EXPECT_THROW(calibration_family("nope", {0.1}), LookupError);
  // d = 0.5 pushes a trigger onto 0, which breaks consistency or validity.
  const FamilySweep s = calibration_family("f3", {0.13, 0.6});
  EXPECT_EQ(s.variants.size(), 1u);
  EXPECT_EQ(s.notices.size(), 1u);
}

TEST(Families, EveryFamilyReferenceMatchesItsBuiltin) {
  for (const CalibrationFamily& f : calibration_families()) {
    const RuleSet rs = family_member(f, f.reference_value);
    EXPECT_TRUE(rs.same_rules(builtin(f.base))) << f.name;
  }
}

TEST(RuleSetJson, RoundTripIsBitExact) {
  for (const auto& name : builtin_names()) {
    const std::string text = rule_set_to_json(builtin(name));
    const RuleSet back = rule_set_from_json(text);
    EXPECT_EQ(back, builtin(name));
    EXPECT_EQ(rule_set_to_json(back), text);
  }
}

TEST(RuleSetJson, ErrorsCarryLineAndField) {
  try {
    rule_set_from_json("{\n  \"name\": \"x\",\n  \"levels\": 2,\n  \"rules\": [\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 0);
  }
  try {
    rule_set_from_json(R"({"name":"x","levels":2,"rules":[{"b":0,"t":0,"a":1},{"b":255,"t":300,"a":2}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "rules[1].t");
  }
  EXPECT_THROW(rule_set_from_json(R"({"name":"x","levels":2,"rules":[],"extra":1})"), ParseError);
}

}  // namespace
}  // namespace afterimage
