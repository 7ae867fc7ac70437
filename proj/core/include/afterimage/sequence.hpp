#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "afterimage/raster.hpp"
#include "afterimage/render.hpp"

namespace afterimage {

enum class SequenceMode { kAfterimage, kNormal, kMultiTrigger, kCalibration };

/// "afterimage", "normal", "multi-trigger", "calibration".
std::string_view to_string(SequenceMode mode);
/// Accepts the names above plus "multi"; throws DomainError otherwise.
SequenceMode parse_sequence_mode(std::string_view name);

/// An encoded image destined for a bundle. Triggers carry the SHA-256 of the
/// bias image they were derived from; bias images leave it empty.
struct ImageFile {
  std::string file;
  std::vector<std::uint8_t> bytes;
  std::string bias_sha256;

  std::string sha256() const;
};

struct SequenceStep {
  std::string file;
  int duration_ms = 0;
  std::string role;  // "bias" or "trigger"

  friend bool operator==(const SequenceStep&, const SequenceStep&) = default;
};

struct SequenceMetadata {
  std::string ruleset;
  std::uint64_t seed = 0;
  GridGeometry geometry;
  int n_blur = kDefaultBlur;
  std::string viewing_distance_cm = "50-60";
  std::string display_notes = "maximum brightness, indirect daylight, no direct light on screen";
  /// Experiment group ("afterimage" or "normal"); empty outside experiments.
  std::string condition;
  /// Further free-text advisory fields.
  std::map<std::string, std::string> notes;

  friend bool operator==(const SequenceMetadata&, const SequenceMetadata&) = default;
};

/// Ordered, timed images. `zero_gap` tells the player to switch from the
/// bias to the first trigger without any intervening frame.
struct SequencePlan {
  SequenceMode mode = SequenceMode::kAfterimage;
  std::vector<SequenceStep> steps;
  bool zero_gap = true;
  SequenceMetadata metadata;

  /// Throws DomainError if a duration is not positive, a step has no file or
  /// role, or the step order contradicts the mode (bias first and zero_gap
  /// for afterimage, multi-trigger and calibration; trigger first for
  /// normal).
  void validate() const;

  friend bool operator==(const SequencePlan&, const SequencePlan&) = default;
};

struct SequenceDurations {
  int bias_ms;
  int trigger_ms;
};

inline constexpr SequenceDurations kSingleDurations{20000, 5000};
inline constexpr int kMultiBiasMs = 30000;
inline constexpr int kMultiFirstTriggerMs = 1500;
inline constexpr int kMultiSecondTriggerMs = 5000;
inline constexpr int kNormalStepMs = 20000;

/// [bias, trigger], afterimage mode. Throws DomainError for non-positive
/// durations.
SequencePlan plan_single(const ImageFile& bias, const ImageFile& trigger,
                         SequenceDurations durations = kSingleDurations,
                         SequenceMetadata metadata = {});

/// [bias 30 s, trigger1 1.5 s, trigger2 5 s]. Throws ProvenanceError unless
/// both triggers name the bias image's hash.
SequencePlan plan_multi(const ImageFile& bias, const ImageFile& trigger1,
                        const ImageFile& trigger2, SequenceMetadata metadata = {},
                        int bias_ms = kMultiBiasMs, int trigger1_ms = kMultiFirstTriggerMs,
                        int trigger2_ms = kMultiSecondTriggerMs);

/// [trigger, bias], both 20 s by default, normal mode, no zero-gap contract.
SequencePlan plan_normal(const ImageFile& bias, const ImageFile& trigger,
                         int step_ms = kNormalStepMs, SequenceMetadata metadata = {});

/// Reproducible description of the command that produced a bundle. `args`
/// holds normalized option/value pairs in a fixed order; repeatable options
/// appear once per value.
struct CommandSpec {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> args;

  friend bool operator==(const CommandSpec&, const CommandSpec&) = default;
};

/// A plan plus the bytes of every file it references. Attachments are
/// further hashed files (rule set, pattern preview, answer key, ...).
struct SequenceBundle {
  SequencePlan plan;
  std::map<std::string, std::vector<std::uint8_t>> images;
  std::map<std::string, std::vector<std::uint8_t>> attachments;
  std::optional<CommandSpec> command;

  friend bool operator==(const SequenceBundle&, const SequenceBundle&) = default;
};

/// Bundle holding the plan and the given images (extra images are kept).
SequenceBundle make_bundle(SequencePlan plan, std::span<const ImageFile> images);

/// PNG-encodes a rendered sequence: "bias.png" and "trigger.png", or
/// "trigger1.png", "trigger2.png", ... for several triggers.
struct EncodedSequence {
  ImageFile bias;
  std::vector<ImageFile> triggers;
};
EncodedSequence encode_sequence(const RenderedSequence& rendered);

enum class ExperimentPhase { kViewingDryRun, kRecognitionDryRun, kExperimental };
std::string_view to_string(ExperimentPhase phase);

/// One bias/trigger pair of an experiment and the word it should reveal.
struct ExperimentPair {
  std::string label;
  ImageFile bias;
  ImageFile trigger;
  SequenceMetadata metadata;
  std::string answer;
};

struct ExperimentSpec {
  std::string subject_id;
  /// SequenceMode::kAfterimage or SequenceMode::kNormal.
  SequenceMode condition = SequenceMode::kAfterimage;
  ExperimentPair viewing_dry_run;
  std::vector<ExperimentPair> recognition_dry_runs;
  std::vector<ExperimentPair> experimental_pairs;
  std::uint64_t seed = 0;
};

struct ExperimentEntry {
  ExperimentPhase phase;
  std::string label;
  SequenceBundle bundle;
};

/// The bundle build_experiment produces for one pair: planned in the
/// condition's mode, metadata tagged with the condition and subject, and an
/// "answer_key.json" attachment.
SequenceBundle experiment_bundle(const ExperimentPair& pair, ExperimentPhase phase,
                                 SequenceMode condition, std::string_view subject_id);

/// Viewing dry run, then the recognition dry runs, then the experimental
/// pairs, each group shuffled by a Fisher-Yates pass keyed on (seed,
/// subject id). Every pair is planned in the condition's mode and carries an
/// "answer_key.json" attachment. Throws DomainError for other conditions.
std::vector<ExperimentEntry> build_experiment(const ExperimentSpec& spec);

/// The permutation build_experiment applies to a group of `n` pairs.
std::vector<std::size_t> experiment_order(std::size_t n, std::uint64_t seed,
                                          std::string_view subject_id, ExperimentPhase phase);

}  // namespace afterimage
