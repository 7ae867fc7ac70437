#include "afterimage/assignment.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "afterimage/errors.hpp"
#include "afterimage/random.hpp"

namespace afterimage {

CellAssignment assign_intensities(const TargetPattern& pattern, const RuleSet& rs,
                                  std::uint64_t seed) {
  std::vector<std::vector<Rule>> by_level(static_cast<std::size_t>(rs.level_count()) + 1);
  for (int j = 1; j <= rs.level_count(); ++j) by_level[static_cast<std::size_t>(j)] = rs.rules_for_level(j);

  const CounterRandom rng(seed, "assign");
  CellAssignment out{Grid<Intensity>(pattern.width(), pattern.height()),
                     Grid<Intensity>(pattern.width(), pattern.height())};
  for (int y = 0; y < pattern.height(); ++y) {
    for (int x = 0; x < pattern.width(); ++x) {
      const int level = pattern.at(x, y);
      if (level < 1 || level > rs.level_count() ||
          by_level[static_cast<std::size_t>(level)].empty()) {
        throw UnsatisfiableError("rule set '" + rs.name() + "' has no rule for level " +
                                 std::to_string(level));
      }
      const auto& choices = by_level[static_cast<std::size_t>(level)];
      const std::size_t i = pattern.cells.index(x, y);
      const Rule& r = choices[rng.uniform(i, choices.size())];
      out.bias.at(x, y) = r.bias;
      out.trigger.at(x, y) = r.trigger;
    }
  }
  return out;
}

Grid<Intensity> derive_trigger_for_bias(const Grid<Intensity>& bias_cells,
                                        const TargetPattern& pattern, const RuleSet& rs,
                                        std::uint64_t seed, std::uint64_t trigger_index) {
  if (!is_bias_ambiguous(rs)) {
    throw PreconditionError("rule set '" + rs.name() +
                            "' is not bias-ambiguous; a fixed bias image cannot target "
                            "arbitrary patterns");
  }
  if (bias_cells.width() != pattern.width() || bias_cells.height() != pattern.height()) {
    throw PreconditionError("bias cells and pattern differ in size");
  }
  const auto biases = bias_set(rs);
  std::map<std::pair<Intensity, int>, std::vector<Intensity>> triggers;
  for (const Rule& r : rs.rules()) triggers[{r.bias, r.level}].push_back(r.trigger);

  const CounterRandom rng(seed, 0x7472696767657200ULL ^ trigger_index);  // "trigger\0" ^ index
  Grid<Intensity> out(pattern.width(), pattern.height());
  for (int y = 0; y < pattern.height(); ++y) {
    for (int x = 0; x < pattern.width(); ++x) {
      const Intensity b = bias_cells.at(x, y);
      if (!std::binary_search(biases.begin(), biases.end(), b)) {
        throw PreconditionError("bias value " + to_string(b) + " is not a bias intensity of '" +
                                rs.name() + "'");
      }
      const auto it = triggers.find({b, pattern.at(x, y)});
      if (it == triggers.end()) {
        throw UnsatisfiableError("no rule (" + to_string(b) + ", t) -> a" +
                                 std::to_string(pattern.at(x, y)));
      }
      out.at(x, y) = it->second[rng.uniform(pattern.cells.index(x, y), it->second.size())];
    }
  }
  return out;
}

}  // namespace afterimage
