#include "afterimage/sequence.hpp"

#include <string>

#include <json.hpp>

#include "afterimage/digest.hpp"
#include "afterimage/errors.hpp"
#include "afterimage/image_io.hpp"
#include "afterimage/random.hpp"

namespace afterimage {
namespace {

void require_positive(int ms, std::string_view what) {
  if (ms <= 0) {
    throw DomainError(std::string(what) + " duration must be positive, got " +
                      std::to_string(ms) + " ms");
  }
}

SequenceStep step(const ImageFile& image, int ms, std::string role) {
  require_positive(ms, role);
  return SequenceStep{image.file, ms, std::move(role)};
}

std::vector<std::uint8_t> answer_key(const ExperimentPair& pair, ExperimentPhase phase) {
  nlohmann::ordered_json j;
  j["label"] = pair.label;
  j["phase"] = std::string(to_string(phase));
  j["answer"] = pair.answer;
  const std::string text = j.dump(2) + "\n";
  return {text.begin(), text.end()};
}

}  // namespace

std::string_view to_string(SequenceMode mode) {
  switch (mode) {
    case SequenceMode::kAfterimage:
      return "afterimage";
    case SequenceMode::kNormal:
      return "normal";
    case SequenceMode::kMultiTrigger:
      return "multi-trigger";
    case SequenceMode::kCalibration:
      return "calibration";
  }
  return "afterimage";
}

SequenceMode parse_sequence_mode(std::string_view name) {
  if (name == "afterimage") return SequenceMode::kAfterimage;
  if (name == "normal") return SequenceMode::kNormal;
  if (name == "multi-trigger" || name == "multi") return SequenceMode::kMultiTrigger;
  if (name == "calibration") return SequenceMode::kCalibration;
  throw DomainError("unknown sequence mode '" + std::string(name) + "'");
}

std::string ImageFile::sha256() const { return sha256_hex(bytes); }

void SequencePlan::validate() const {
  if (steps.empty()) throw DomainError("sequence plan has no steps");
  for (const SequenceStep& s : steps) {
    if (s.file.empty()) throw DomainError("sequence step without a file");
    if (s.role != "bias" && s.role != "trigger") {
      throw DomainError("sequence step '" + s.file + "' has unknown role '" + s.role + "'");
    }
    require_positive(s.duration_ms, s.file);
  }
  if (mode == SequenceMode::kNormal) {
    if (steps.size() != 2 || steps[0].role != "trigger" || steps[1].role != "bias") {
      throw DomainError("normal-mode plans show one trigger, then its bias image");
    }
    if (zero_gap) throw DomainError("normal-mode plans carry no zero-gap contract");
    return;
  }
  if (steps.size() < 2 || steps[0].role != "bias") {
    throw DomainError(std::string(to_string(mode)) +
                      " plans start with a bias image followed by its trigger(s)");
  }
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i].role != "trigger") {
      throw DomainError("only triggers may follow the bias image in " +
                        std::string(to_string(mode)) + " plans");
    }
  }
  if (mode != SequenceMode::kMultiTrigger && steps.size() != 2) {
    throw DomainError(std::string(to_string(mode)) + " plans have exactly one trigger");
  }
  if (!zero_gap) {
    throw DomainError("the bias image must be followed immediately by its trigger");
  }
}

SequencePlan plan_single(const ImageFile& bias, const ImageFile& trigger,
                         SequenceDurations durations, SequenceMetadata metadata) {
  SequencePlan plan;
  plan.mode = SequenceMode::kAfterimage;
  plan.steps = {step(bias, durations.bias_ms, "bias"),
                step(trigger, durations.trigger_ms, "trigger")};
  plan.zero_gap = true;
  plan.metadata = std::move(metadata);
  return plan;
}

SequencePlan plan_multi(const ImageFile& bias, const ImageFile& trigger1,
                        const ImageFile& trigger2, SequenceMetadata metadata, int bias_ms,
                        int trigger1_ms, int trigger2_ms) {
  const std::string bias_hash = bias.sha256();
  for (const ImageFile* t : {&trigger1, &trigger2}) {
    if (t->bias_sha256 != bias_hash) {
      throw ProvenanceError("trigger '" + t->file + "' was derived from bias " +
                            (t->bias_sha256.empty() ? std::string("<unknown>") : t->bias_sha256) +
                            ", not from '" + bias.file + "' (" + bias_hash + ")");
    }
  }
  SequencePlan plan;
  plan.mode = SequenceMode::kMultiTrigger;
  plan.steps = {step(bias, bias_ms, "bias"), step(trigger1, trigger1_ms, "trigger"),
                step(trigger2, trigger2_ms, "trigger")};
  plan.zero_gap = true;
  plan.metadata = std::move(metadata);
  return plan;
}

SequencePlan plan_normal(const ImageFile& bias, const ImageFile& trigger, int step_ms,
                         SequenceMetadata metadata) {
  SequencePlan plan;
  plan.mode = SequenceMode::kNormal;
  plan.steps = {step(trigger, step_ms, "trigger"), step(bias, step_ms, "bias")};
  plan.zero_gap = false;
  plan.metadata = std::move(metadata);
  return plan;
}

SequenceBundle make_bundle(SequencePlan plan, std::span<const ImageFile> images) {
  SequenceBundle bundle;
  bundle.plan = std::move(plan);
  for (const ImageFile& img : images) bundle.images[img.file] = img.bytes;
  return bundle;
}

EncodedSequence encode_sequence(const RenderedSequence& rendered) {
  EncodedSequence out;
  out.bias = ImageFile{"bias.png", encode_png(rendered.bias), {}};
  const std::string bias_hash = out.bias.sha256();
  const bool numbered = rendered.triggers.size() > 1;
  for (std::size_t i = 0; i < rendered.triggers.size(); ++i) {
    std::string name = numbered ? "trigger" + std::to_string(i + 1) + ".png" : "trigger.png";
    out.triggers.push_back(ImageFile{std::move(name), encode_png(rendered.triggers[i]), bias_hash});
  }
  return out;
}

std::string_view to_string(ExperimentPhase phase) {
  switch (phase) {
    case ExperimentPhase::kViewingDryRun:
      return "viewing-dry-run";
    case ExperimentPhase::kRecognitionDryRun:
      return "recognition-dry-run";
    case ExperimentPhase::kExperimental:
      return "experimental";
  }
  return "experimental";
}

std::vector<std::size_t> experiment_order(std::size_t n, std::uint64_t seed,
                                          std::string_view subject_id, ExperimentPhase phase) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  const CounterRandom rng(seed, fnv1a64(subject_id) ^ fnv1a64(to_string(phase)));
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.uniform(i, i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

SequenceBundle experiment_bundle(const ExperimentPair& pair, ExperimentPhase phase,
                                 SequenceMode condition, std::string_view subject_id) {
  if (condition != SequenceMode::kAfterimage && condition != SequenceMode::kNormal) {
    throw DomainError("experiment condition must be afterimage or normal, got " +
                      std::string(to_string(condition)));
  }
  SequenceMetadata md = pair.metadata;
  md.condition = std::string(to_string(condition));
  md.notes["subject_id"] = std::string(subject_id);
  md.notes["phase"] = std::string(to_string(phase));
  SequencePlan plan = condition == SequenceMode::kNormal
                          ? plan_normal(pair.bias, pair.trigger, kNormalStepMs, std::move(md))
                          : plan_single(pair.bias, pair.trigger, kSingleDurations, std::move(md));
  const ImageFile files[] = {pair.bias, pair.trigger};
  SequenceBundle bundle = make_bundle(std::move(plan), files);
  bundle.attachments["answer_key.json"] = answer_key(pair, phase);
  return bundle;
}

std::vector<ExperimentEntry> build_experiment(const ExperimentSpec& spec) {
  std::vector<ExperimentEntry> out;
  auto add = [&](const ExperimentPair& pair, ExperimentPhase phase) {
    out.push_back(ExperimentEntry{
        phase, pair.label, experiment_bundle(pair, phase, spec.condition, spec.subject_id)});
  };
  if (spec.condition != SequenceMode::kAfterimage && spec.condition != SequenceMode::kNormal) {
    throw DomainError("experiment condition must be afterimage or normal, got " +
                      std::string(to_string(spec.condition)));
  }
  add(spec.viewing_dry_run, ExperimentPhase::kViewingDryRun);
  for (ExperimentPhase phase : {ExperimentPhase::kRecognitionDryRun, ExperimentPhase::kExperimental}) {
    const auto& group = phase == ExperimentPhase::kRecognitionDryRun ? spec.recognition_dry_runs
                                                                      : spec.experimental_pairs;
    for (std::size_t i : experiment_order(group.size(), spec.seed, spec.subject_id, phase)) {
      add(group[i], phase);
    }
  }
  return out;
}

}  // namespace afterimage
