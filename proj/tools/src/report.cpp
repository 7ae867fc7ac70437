#include "afterimage_cli/report.hpp"

#include <sstream>

#include <afterimage/digest.hpp>
#include <afterimage/intensity.hpp>

namespace afterimage::cli {
namespace {

using Json = nlohmann::ordered_json;

const char* yes_no(bool b) { return b ? "yes" : "no"; }

Json verdict_json(const Verdict& v) {
  Json j{{"holds", v.holds}};
  if (!v.counterexample.empty()) j["counterexample"] = v.counterexample;
  return j;
}

Json bound_json(const Bound& b) {
  if (!b.finite()) return nullptr;
  return Json{{"value", b.value}, {"inclusive", b.inclusive}};
}

}  // namespace

std::string classification_text(const ClassificationReport& r) {
  std::ostringstream os;
  os << "rule set: " << r.name << "\n"
     << "consistent: " << yes_no(r.model_consistent()) << "\n"
     << "trigger-ambiguous: " << yes_no(r.trigger_ambiguous.holds) << "\n"
     << "bias-ambiguous: " << yes_no(r.bias_ambiguous.holds) << "\n"
     << "partially-ambiguous: " << yes_no(r.partially_ambiguous.holds) << "\n"
     << "bias-scrambling: " << yes_no(r.bias_scrambling.holds) << "\n"
     << "trigger-scrambling: " << yes_no(r.trigger_scrambling.holds) << "\n"
     << "bias mapping scheme: " << to_string(r.bias_scheme) << "\n"
     << "trigger mapping scheme: " << to_string(r.trigger_scheme) << "\n";
  if (r.model_consistent()) {
    os << "feasible levels:\n";
    for (const AfterimageLevel& level : r.consistency.feasible.levels) {
      os << "  a" << level.index << " " << level.describe() << "\n";
    }
  } else {
    os << "violated constraints:\n";
    for (const ConstraintViolation& v : r.consistency.violations) {
      os << "  [" << to_string(v.kind) << "] " << v.description << "\n";
    }
  }
  return os.str();
}

Json classification_json(const ClassificationReport& r) {
  Json levels = Json::array();
  for (const AfterimageLevel& level : r.consistency.feasible.levels) {
    levels.push_back({{"level", level.index},
                      {"interval", level.describe()},
                      {"lower", bound_json(level.lower)},
                      {"upper", bound_json(level.upper)}});
  }
  Json violations = Json::array();
  for (const ConstraintViolation& v : r.consistency.violations) {
    violations.push_back({{"kind", to_string(v.kind)}, {"description", v.description}});
  }
  return Json{{"name", r.name},
              {"consistent", r.model_consistent()},
              {"trigger_ambiguous", verdict_json(r.trigger_ambiguous)},
              {"bias_ambiguous", verdict_json(r.bias_ambiguous)},
              {"partially_ambiguous", verdict_json(r.partially_ambiguous)},
              {"bias_scrambling", verdict_json(r.bias_scrambling)},
              {"trigger_scrambling", verdict_json(r.trigger_scrambling)},
              {"bias_scheme", to_string(r.bias_scheme)},
              {"trigger_scheme", to_string(r.trigger_scheme)},
              {"feasible_levels", std::move(levels)},
              {"witness", r.consistency.witness},
              {"violations", std::move(violations)},
              {"exclusivity_unguarded", r.exclusivity_unguarded()}};
}

std::string bundle_text(const SequenceBundle& b) {
  const SequencePlan& p = b.plan;
  const SequenceMetadata& md = p.metadata;
  std::ostringstream os;
  os << "mode: " << to_string(p.mode) << (p.zero_gap ? " (zero gap)" : "") << "\n"
     << "rule set: " << md.ruleset << "\n"
     << "seed: " << md.seed << "\n"
     << "geometry: m=" << md.geometry.cell_px << " " << md.geometry.image_width << "x"
     << md.geometry.image_height << ", n_blur=" << md.n_blur << "\n";
  if (!md.condition.empty()) os << "condition: " << md.condition << "\n";
  os << "steps:\n";
  for (const SequenceStep& s : p.steps) {
    os << "  " << s.role << " " << s.file << " " << s.duration_ms << " ms\n";
  }
  os << "files (hashes verified):\n";
  for (const auto* files : {&b.images, &b.attachments}) {
    for (const auto& [name, bytes] : *files) {
      os << "  " << name << " " << bytes.size() << " bytes sha256:" << sha256_hex(bytes) << "\n";
    }
  }
  if (b.command) os << "command: " << b.command->subcommand << " (replayable)\n";
  return os.str();
}

Json bundle_json(const SequenceBundle& b) {
  Json j = Json::parse(manifest_json(b));
  j["verified"] = true;
  return j;
}

}  // namespace afterimage::cli
