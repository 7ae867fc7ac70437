#include "afterimage/intensity.hpp"

#include <cmath>
#include <cstdio>

#include "afterimage/errors.hpp"

namespace afterimage {

Intensity quantize(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError("intensity " + std::to_string(v) + " outside [0, 1]");
  }
  return Intensity::from_code(static_cast<std::uint8_t>(std::lround(v * kMaxCode)));
}

std::string to_string(Intensity i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.4f", i.value());
  return buf;
}

SyntheticAfterimageFunction::SyntheticAfterimageFunction(double slope) : slope_(slope) {
  if (!(slope > 0.0)) {
    throw DomainError("synthetic afterimage slope must be > 0");
  }
}

double SyntheticAfterimageFunction::operator()(Intensity bias, Intensity trigger) const {
  const double t = trigger.value();
  return t + slope_ * (t - bias.value());
}

double synthetic_fa(Intensity bias, Intensity trigger, double slope) {
  return SyntheticAfterimageFunction(slope)(bias, trigger);
}

SampledAfterimageFunction SampledAfterimageFunction::sample(
    const std::function<double(Intensity, Intensity)>& fa, std::span<const Intensity> levels) {
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i - 1] < levels[i])) {
      throw DomainError("sample levels must be strictly ascending");
    }
  }
  SampledAfterimageFunction out;
  out.levels.assign(levels.begin(), levels.end());
  out.values.reserve(levels.size() * levels.size());
  for (Intensity b : levels) {
    for (Intensity t : levels) {
      out.values.push_back(fa(b, t));
    }
  }
  return out;
}

SampledAfterimageFunction SampledAfterimageFunction::sample_full(
    const std::function<double(Intensity, Intensity)>& fa) {
  std::vector<Intensity> all;
  all.reserve(kLevelsPerChannel);
  for (int k = 0; k <= kMaxCode; ++k) {
    all.push_back(Intensity::from_code(static_cast<std::uint8_t>(k)));
  }
  return sample(fa, all);
}

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::kFixedPoint:
      return "fixed-point (b = t <=> f(b,t) = t)";
    case Axiom::kDarkening:
      return "darkening (b > t <=> f(b,t) < t)";
    case Axiom::kLightening:
      return "lightening (b < t <=> f(b,t) > t)";
    case Axiom::kBiasMonotonicity:
      return "bias monotonicity (b1 > b2 <=> f(b1,t) < f(b2,t))";
  }
  return "unknown";
}

AxiomReport axioms_hold(const SampledAfterimageFunction& fa, std::size_t max_listed) {
  AxiomReport report;
  const auto record = [&](Axiom axiom, Intensity b, Intensity t, Intensity b2) {
    report.holds = false;
    ++report.violation_count;
    if (report.violations.size() < max_listed) {
      report.violations.push_back({axiom, b, t, b2});
    }
  };

  const std::size_t n = fa.levels.size();
  for (std::size_t bi = 0; bi < n; ++bi) {
    for (std::size_t ti = 0; ti < n; ++ti) {
      const Intensity b = fa.levels[bi];
      const Intensity t = fa.levels[ti];
      const double f = fa.at(bi, ti);
      const double tv = t.value();
      if ((b == t) != (f == tv)) record(Axiom::kFixedPoint, b, t, b);
      if ((b > t) != (f < tv)) record(Axiom::kDarkening, b, t, b);
      if ((b < t) != (f > tv)) record(Axiom::kLightening, b, t, b);
    }
  }

  // Unordered bias pairs at each trigger; b1 > b2 must give f(b1) < f(b2),
  // which also settles the converse direction of the biconditional.
  for (std::size_t ti = 0; ti < n; ++ti) {
    for (std::size_t b1 = 0; b1 < n; ++b1) {
      for (std::size_t b2 = 0; b2 < b1; ++b2) {
        if (!(fa.at(b1, ti) < fa.at(b2, ti))) {
          record(Axiom::kBiasMonotonicity, fa.levels[b1], fa.levels[ti], fa.levels[b2]);
        }
      }
    }
  }
  return report;
}

}  // namespace afterimage
