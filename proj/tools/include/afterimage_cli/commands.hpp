#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <afterimage/builtin.hpp>
#include <afterimage/classification.hpp>
#include <afterimage/sequence.hpp>

namespace afterimage::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitIo = 3,
  kExitBadArguments = 4,
};

/// A command that cannot complete, with the exit code to report.
class CommandFailure : public std::runtime_error {
 public:
  CommandFailure(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

/// Paths recorded as "bundle:<name>" refer to a file inside the bundle being
/// replayed.
inline constexpr std::string_view kBundleRef = "bundle:";

struct GenerateOptions {
  std::string ruleset;  // builtin name, file path or bundle ref
  std::vector<std::string> words;
  std::vector<std::string> patterns;  // PGM paths or bundle refs
  std::optional<int> fg_level;        // default: highest level
  std::optional<int> bg_level;        // default: level 1
  int stroke = 2;
  int m = 25;
  int n_blur = kDefaultBlur;
  std::uint64_t seed = 0;
  SequenceMode mode = SequenceMode::kAfterimage;
  std::vector<int> durations;  // per step in plan order; empty for defaults
  bool convolve_bias = false;
  bool crosshair = true;
};

struct Generated {
  SequenceBundle bundle;
  ClassificationReport report;
};

/// Resolves, classifies (inconsistent rule sets fail with kExitValidation),
/// renders, plans and packages. The bundle records the normalized command,
/// the rule set as "ruleset.json", target previews and any source PGMs.
/// `ref_dir` resolves bundle refs.
Generated generate_bundle(const GenerateOptions& options, const std::filesystem::path& ref_dir = {});

struct SweepPointOptions {
  std::string family;
  double value = 0.0;
  int m = 25;
  int n_blur = kDefaultBlur;
  std::uint64_t seed = 0;
};

/// Calibration bundle for one grid point: a uniform pattern of the family's
/// target level over the whole grid.
SequenceBundle sweep_point_bundle(const SweepPointOptions& options);

struct ExperimentPairOptions {
  std::string stimulus = "word";  // "word" or "chequer"
  std::string ruleset;
  std::string word;
  std::string label;
  std::optional<int> fg_level;
  std::optional<int> bg_level;
  int stroke = 2;
  int m = 25;
  int n_blur = kDefaultBlur;
  std::uint64_t seed = 0;
  SequenceMode condition = SequenceMode::kAfterimage;
  std::string subject;
  ExperimentPhase phase = ExperimentPhase::kExperimental;
};

ExperimentPair experiment_pair(const ExperimentPairOptions& options,
                               const std::filesystem::path& ref_dir = {});
CommandSpec experiment_pair_command(const ExperimentPairOptions& options);

/// Adds the rule set attachment and the recorded command to a bundle built
/// by experiment_bundle() from `options`.
void attach_experiment_provenance(SequenceBundle& bundle, const ExperimentPairOptions& options,
                                  const std::filesystem::path& ref_dir = {});

/// Rebuilds the bundle a recorded command describes ("generate",
/// "sweep-point" or "experiment-pair"). Bundle refs resolve against
/// `bundle_dir`.
SequenceBundle realize_command(const CommandSpec& command, const std::filesystem::path& bundle_dir);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace afterimage::cli
