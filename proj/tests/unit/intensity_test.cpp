#include <gtest/gtest.h>

#include <afterimage/errors.hpp>
#include <afterimage/intensity.hpp>

#include "oracles.hpp"

namespace afterimage {
namespace {

TEST(Quantize, Endpoints) {
  EXPECT_EQ(quantize(0.0).code(), 0);
  EXPECT_EQ(quantize(1.0).code(), 255);
  EXPECT_DOUBLE_EQ(quantize(1.0).value(), 1.0);
}

TEST(Quantize, RoundsToNearestCode) {
  EXPECT_EQ(quantize(0.87).code(), 222);
  EXPECT_EQ(quantize(0.25).code(), 64);
  EXPECT_EQ(quantize(0.5).code(), 128);
}

TEST(Quantize, RejectsOutOfRange) {
  EXPECT_THROW(quantize(-0.001), DomainError);
  EXPECT_THROW(quantize(1.001), DomainError);
  EXPECT_THROW(quantize(std::nan("")), DomainError);
}

TEST(Quantize, IdempotentAndMonotone) {
  Intensity prev = quantize(0.0);
  for (int i = 0; i <= 10000; ++i) {
    const double v = i / 10000.0;
    const Intensity q = quantize(v);
    EXPECT_EQ(quantize(q.value()), q);
    EXPECT_LE(prev, q);
    prev = q;
  }
}

TEST(Quantize, EveryCodeIsAFixedPoint) {
  for (int k = 0; k < 256; ++k) {
    const auto i = Intensity::from_code(static_cast<std::uint8_t>(k));
    EXPECT_EQ(quantize(i.value()).code(), k);
  }
}

TEST(IntensityText, FourDecimals) { EXPECT_EQ(to_string(quantize(0.87)), "0.8706"); }

TEST(SyntheticFa, WorkedValues) {
  EXPECT_DOUBLE_EQ(synthetic_fa(quantize(0.5), quantize(0.5), 0.5), quantize(0.5).value());
  EXPECT_DOUBLE_EQ(synthetic_fa(quantize(1.0), Intensity::from_code(64), 0.5),
                   64 / 255.0 + 0.5 * (64 / 255.0 - 1.0));
  EXPECT_DOUBLE_EQ(synthetic_fa(quantize(0.0), Intensity::from_code(64), 0.5), 1.5 * 64 / 255.0);
}

TEST(SyntheticFa, ExactDecimalExamplesBeforeQuantization) {
  // The decimal examples use unquantized values; 0.25 is not a display
  // level, so check the closed form against the oracle on exact codes.
  for (int b : {0, 64, 128, 255}) {
    for (int t : {0, 64, 128, 255}) {
      EXPECT_DOUBLE_EQ(synthetic_fa(Intensity::from_code(b), Intensity::from_code(t), 0.5),
                       oracle::fa(b, t, 0.5));
    }
  }
}

TEST(SyntheticFa, RejectsNonPositiveSlope) {
  EXPECT_THROW(synthetic_fa(quantize(0.5), quantize(0.5), 0.0), DomainError);
  EXPECT_THROW(synthetic_fa(quantize(0.5), quantize(0.5), -1.0), DomainError);
  EXPECT_THROW(SyntheticAfterimageFunction(0.0), DomainError);
}

class AxiomSlopes : public ::testing::TestWithParam<double> {};

TEST_P(AxiomSlopes, SyntheticOracleSatisfiesAxiomsOnFullGrid) {
  const double slope = GetParam();
  const auto fa = SampledAfterimageFunction::sample_full(SyntheticAfterimageFunction(slope));
  const AxiomReport report = axioms_hold(fa);
  EXPECT_TRUE(report.holds);
  EXPECT_EQ(report.violation_count, 0u);
  EXPECT_EQ(oracle::count_axiom_violations(slope), 0);
}

INSTANTIATE_TEST_SUITE_P(Slopes, AxiomSlopes, ::testing::Values(0.1, 0.5, 1.0, 2.0));

TEST(Axioms, StepInBiasViolatesOnlyMonotonicity) {
  // Right sign everywhere, but the size of the shift ignores how far the
  // bias is from the trigger.
  const auto fa = SampledAfterimageFunction::sample_full([](Intensity b, Intensity t) {
    return t.value() + (t < b ? -0.1 : t > b ? 0.1 : 0.0);
  });
  const AxiomReport report = axioms_hold(fa);
  EXPECT_FALSE(report.holds);
  ASSERT_FALSE(report.violations.empty());
  for (const auto& v : report.violations) EXPECT_EQ(v.axiom, Axiom::kBiasMonotonicity);
}

TEST(Axioms, ReversedSignViolatesDarkening) {
  const auto fa = SampledAfterimageFunction::sample_full(
      [](Intensity b, Intensity t) { return t.value() + (b.value() - t.value()); });
  const AxiomReport report = axioms_hold(fa);
  EXPECT_FALSE(report.holds);
  bool darkening = false;
  for (const auto& v : report.violations) darkening |= v.axiom == Axiom::kDarkening;
  EXPECT_TRUE(darkening);
}

TEST(Axioms, ViolationListIsCapped) {
  const auto fa = SampledAfterimageFunction::sample_full(
      [](Intensity, Intensity t) { return t.value(); });
  const AxiomReport report = axioms_hold(fa, 5);
  EXPECT_EQ(report.violations.size(), 5u);
  EXPECT_GT(report.violation_count, 5u);
}

TEST(Axioms, SubsampledGrid) {
  std::vector<Intensity> levels;
  for (int k = 0; k < 256; k += 17) levels.push_back(Intensity::from_code(static_cast<std::uint8_t>(k)));
  const auto fa = SampledAfterimageFunction::sample(SyntheticAfterimageFunction(1.0), levels);
  EXPECT_EQ(fa.values.size(), levels.size() * levels.size());
  EXPECT_TRUE(axioms_hold(fa).holds);
}

}  // namespace
}  // namespace afterimage
