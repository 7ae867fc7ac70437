#include "afterimage/theorem_fuzz.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "afterimage/builtin.hpp"
#include "afterimage/consistency.hpp"
#include "afterimage/errors.hpp"
#include "afterimage/random.hpp"

namespace afterimage {
namespace {

Intensity code(std::uint64_t c) { return Intensity::from_code(static_cast<std::uint8_t>(c)); }

// Distinct intensities, mostly on the 17-step grid so that sums collide often.
std::vector<Intensity> palette(SequentialRandom& rng, std::size_t size) {
  std::vector<Intensity> out;
  const bool coarse = rng.uniform(4) != 0;
  while (out.size() < size) {
    const Intensity i = coarse ? code(17 * rng.uniform(16)) : code(rng.uniform(256));
    if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<RuleSet> build(std::vector<Rule> rules, int levels) {
  try {
    return RuleSet("fuzz", levels, std::move(rules));
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

// Levels are the distinct values of a sampled affine afterimage function,
// optionally merged into coarser bins.
std::optional<RuleSet> from_sampled_function(SequentialRandom& rng) {
  const auto p = static_cast<std::int64_t>(1 + rng.uniform(3));
  const auto q = static_cast<std::int64_t>(1 + rng.uniform(3));
  const auto biases = palette(rng, 2 + rng.uniform(3));
  const auto triggers = palette(rng, 1 + rng.uniform(4));
  const std::size_t k = 2 + rng.uniform(7);

  std::map<std::pair<Intensity, Intensity>, std::int64_t> value;
  for (std::size_t i = 0; i < k; ++i) {
    const Intensity b = biases[rng.uniform(biases.size())];
    const Intensity t = triggers[rng.uniform(triggers.size())];
    // q * 255 * (t + (p/q)(t - b)), exact in integers.
    value[{b, t}] = (p + q) * t.code() - p * b.code();
  }
  std::vector<std::int64_t> distinct;
  for (const auto& [bt, v] : value) distinct.push_back(v);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  // bin[i] = level of the i-th distinct value.
  std::vector<int> bin(distinct.size());
  int level = 1;
  const bool merge = rng.coin();
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    if (i > 0 && !(merge && rng.coin())) ++level;
    bin[i] = level;
  }
  std::vector<Rule> rules;
  for (const auto& [bt, v] : value) {
    const auto idx = std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin();
    rules.push_back({bt.first, bt.second, bin[static_cast<std::size_t>(idx)]});
  }
  return build(std::move(rules), level);
}

std::optional<RuleSet> uniform_rules(SequentialRandom& rng) {
  const auto biases = palette(rng, 1 + rng.uniform(4));
  const auto triggers = palette(rng, 1 + rng.uniform(4));
  const int levels = 2 + static_cast<int>(rng.uniform(2));
  const std::size_t k = 2 + rng.uniform(6);
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < k; ++i) {
    rules.push_back({biases[rng.uniform(biases.size())], triggers[rng.uniform(triggers.size())],
                     1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(levels)))});
  }
  return build(std::move(rules), levels);
}

// Every intensity on one side reaches every level.
std::optional<RuleSet> one_side_ambiguous(SequentialRandom& rng) {
  const bool bias_side = rng.coin();
  const auto own = palette(rng, 1 + rng.uniform(3));
  const auto other = palette(rng, 2 + rng.uniform(4));
  const int levels = 2 + static_cast<int>(rng.uniform(2));
  std::vector<Rule> rules;
  for (Intensity x : own) {
    for (int j = 1; j <= levels; ++j) {
      const Intensity y = other[rng.uniform(other.size())];
      rules.push_back(bias_side ? Rule{x, y, j} : Rule{y, x, j});
    }
  }
  return build(std::move(rules), levels);
}

// A full B x T grid whose rows and columns each cover every level.
std::optional<RuleSet> both_sides_ambiguous(SequentialRandom& rng) {
  const int levels = 2 + static_cast<int>(rng.uniform(2));
  const auto biases = palette(rng, static_cast<std::size_t>(levels) + rng.uniform(2));
  const auto triggers = palette(rng, static_cast<std::size_t>(levels) + rng.uniform(2));
  std::vector<int> relabel(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j) relabel[static_cast<std::size_t>(j)] = j + 1;
  for (std::size_t i = relabel.size(); i > 1; --i) {
    std::swap(relabel[i - 1], relabel[rng.uniform(i)]);
  }
  const auto offset = rng.uniform(static_cast<std::uint64_t>(levels));
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < biases.size(); ++i) {
    for (std::size_t j = 0; j < triggers.size(); ++j) {
      const auto cyc = (i + j + offset) % static_cast<std::size_t>(levels);
      rules.push_back({biases[i], triggers[j], relabel[cyc]});
    }
  }
  return build(std::move(rules), levels);
}

}  // namespace

TheoremViolation::TheoremViolation(const RuleSet& rs)
    : std::logic_error("consistent rule set is both bias- and trigger-ambiguous"),
      rule_set_(rs) {}

FuzzReport theorem_fuzz(std::size_t count, std::uint64_t seed, const FuzzOptions& options) {
  FuzzReport report;
  report.requested = count;
  if (count == 0) return report;

  SequentialRandom rng(seed, "theorem-fuzz");
  const RuleSet injected[] = {builtin("f1"), builtin("f2")};
  const std::size_t max_attempts = count * 200;

  const auto check = [&](const RuleSet& rs) {
    const bool b = is_bias_ambiguous(rs);
    const bool t = is_trigger_ambiguous(rs);
    report.bias_ambiguous += b;
    report.trigger_ambiguous += t;
    report.partially_ambiguous += is_partially_ambiguous(rs);
    if (b && t) {
      report.counterexamples.push_back(rs);
      if (options.throw_on_counterexample) throw TheoremViolation(rs);
    }
  };

  while (report.generated < count && report.attempts < max_attempts) {
    const std::size_t generator = report.attempts % 4;
    ++report.attempts;
    std::optional<RuleSet> candidate;
    switch (generator) {
      case 0: candidate = from_sampled_function(rng); break;
      case 1: candidate = uniform_rules(rng); break;
      case 2: candidate = one_side_ambiguous(rng); break;
      default:
        candidate = both_sides_ambiguous(rng);
        if (candidate) ++report.fully_ambiguous_candidates;
        break;
    }
    if (!candidate || !consistency_check(*candidate).consistent) continue;

    check(*candidate);
    ++report.generated;
    if (options.inject_every != 0 && report.generated % options.inject_every == 0) {
      const RuleSet& rs = injected[(report.generated / options.inject_every) % 2];
      if (consistency_check(rs).consistent) {
        check(rs);
        ++report.injected;
      }
    }
  }
  return report;
}

}  // namespace afterimage
