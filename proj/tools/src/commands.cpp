#include "afterimage_cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include <afterimage/errors.hpp>
#include <afterimage/image_io.hpp>
#include <afterimage/pattern.hpp>
#include <afterimage/render.hpp>
#include <afterimage/rule_set_io.hpp>

namespace afterimage::cli {
namespace {

constexpr std::string_view kRuleSetFile = "ruleset.json";

bool is_builtin(std::string_view name) {
  const auto names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::filesystem::path resolve_path(std::string_view arg, const std::filesystem::path& ref_dir) {
  if (arg.starts_with(kBundleRef)) {
    if (ref_dir.empty()) {
      throw CommandFailure(kExitBadArguments,
                           "'" + std::string(arg) + "' only makes sense when replaying a bundle");
    }
    return ref_dir / std::string(arg.substr(kBundleRef.size()));
  }
  return std::filesystem::path(std::string(arg));
}

struct ResolvedRuleSet {
  RuleSet rules;
  std::string arg;  // as recorded in the command
};

ResolvedRuleSet resolve_rules(std::string_view arg, const std::filesystem::path& ref_dir) {
  if (arg.empty()) throw CommandFailure(kExitBadArguments, "a rule set is required");
  if (is_builtin(arg)) return {builtin(arg), std::string(arg)};
  const auto path = resolve_path(arg, ref_dir);
  if (!std::filesystem::exists(path)) {
    throw CommandFailure(kExitBadArguments,
                         "'" + std::string(arg) + "' is neither a builtin rule set nor a file");
  }
  return {load_rule_set(path), std::string(kBundleRef) + std::string(kRuleSetFile)};
}

std::vector<std::uint8_t> text_bytes(const std::string& s) { return {s.begin(), s.end()}; }

void require_consistent(const ClassificationReport& report) {
  if (report.model_consistent()) return;
  std::string msg = "rule set '" + report.name + "' fails the consistency check";
  if (!report.consistency.violations.empty()) {
    msg += ": " + report.consistency.violations.front().description;
  }
  throw CommandFailure(kExitValidation, msg);
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Typed access to recorded command arguments.
class Args {
 public:
  explicit Args(const CommandSpec& spec) : spec_(spec) {
    for (const auto& [k, v] : spec.args) values_[k].push_back(v);
  }

  std::vector<std::string> all(const std::string& key) const {
    auto it = values_.find(key);
    return it == values_.end() ? std::vector<std::string>{} : it->second;
  }
  bool has(const std::string& key) const { return values_.contains(key); }
  std::string str(const std::string& key) const {
    auto v = all(key);
    if (v.size() != 1) fail("expects exactly one '" + key + "'");
    return v.front();
  }
  long long integer(const std::string& key) const { return parse<long long>(key, str(key)); }
  int small(const std::string& key) const { return static_cast<int>(parse<int>(key, str(key))); }
  std::uint64_t u64(const std::string& key) const { return parse<std::uint64_t>(key, str(key)); }
  double real(const std::string& key) const {
    const std::string s = str(key);
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("'" + key + "' is not a number");
    return v;
  }
  bool flag(const std::string& key) const {
    const std::string s = str(key);
    if (s != "true" && s != "false") fail("'" + key + "' must be true or false");
    return s == "true";
  }
  std::optional<int> optional_small(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return small(key);
  }

  void only(std::initializer_list<std::string_view> known) const {
    for (const auto& [k, v] : spec_.args) {
      if (std::find(known.begin(), known.end(), k) == known.end()) fail("unknown argument '" + k + "'");
    }
  }

 private:
  template <typename T>
  T parse(const std::string& key, const std::string& s) const {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("'" + key + "' is not an integer");
    return v;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw CommandFailure(kExitValidation, "recorded '" + spec_.subcommand + "' command " + what);
  }

  const CommandSpec& spec_;
  std::map<std::string, std::vector<std::string>> values_;
};

std::vector<int> parse_durations(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    int v = 0;
    auto [p, ec] = std::from_chars(text.data() + start, text.data() + end, v);
    if (ec != std::errc() || p != text.data() + end) {
      throw CommandFailure(kExitBadArguments, "durations must be comma-separated integers (ms)");
    }
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

SequenceMetadata metadata_for(const std::string& ruleset, std::uint64_t seed,
                              const GridGeometry& geometry, int n_blur) {
  SequenceMetadata md;
  md.ruleset = ruleset;
  md.seed = seed;
  md.geometry = geometry;
  md.n_blur = n_blur;
  return md;
}

}  // namespace

void attach_experiment_provenance(SequenceBundle& bundle, const ExperimentPairOptions& options,
                              const std::filesystem::path& ref_dir) {
  if (options.stimulus == "word") {
    bundle.attachments[std::string(kRuleSetFile)] =
        text_bytes(rule_set_to_json(resolve_rules(options.ruleset, ref_dir).rules));
  }
  bundle.command = experiment_pair_command(options);
}


std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

Generated generate_bundle(const GenerateOptions& o, const std::filesystem::path& ref_dir) {
  ResolvedRuleSet resolved = resolve_rules(o.ruleset, ref_dir);
  const RuleSet& rs = resolved.rules;
  Generated out{{}, classify(rs)};
  require_consistent(out.report);

  if (o.words.empty() == o.patterns.empty()) {
    throw CommandFailure(kExitBadArguments, "give target patterns either as --word or as --pattern");
  }
  const std::size_t expected = o.mode == SequenceMode::kMultiTrigger ? 2 : 1;
  const std::size_t given = o.words.size() + o.patterns.size();
  if (o.mode == SequenceMode::kCalibration) {
    throw CommandFailure(kExitBadArguments, "calibration bundles come from the sweep command");
  }
  if (given != expected) {
    throw CommandFailure(kExitBadArguments, std::string(to_string(o.mode)) + " mode takes " +
                                                std::to_string(expected) + " target pattern(s), got " +
                                                std::to_string(given));
  }

  const int fg = o.fg_level.value_or(rs.level_count());
  const int bg = o.bg_level.value_or(1);
  CommandSpec command{"generate", {{"ruleset", resolved.arg}}};
  std::vector<TargetPattern> patterns;
  for (const std::string& w : o.words) {
    patterns.push_back(rasterize_word(w, fg, bg, o.stroke));
    command.args.emplace_back("word", w);
  }
  for (std::size_t i = 0; i < o.patterns.size(); ++i) {
    std::vector<std::uint8_t> bytes = read_file(resolve_path(o.patterns[i], ref_dir));
    patterns.push_back(pattern_from_pgm(bytes, rs.level_count()));
    const std::string name = "source" + std::to_string(i + 1) + ".pgm";
    out.bundle.attachments[name] = std::move(bytes);
    command.args.emplace_back("pattern", std::string(kBundleRef) + name);
  }

  const GridGeometry geometry{o.m};
  geometry.validate();
  RenderOptions render_options;
  render_options.convolve_bias = o.convolve_bias;
  render_options.crosshair = o.crosshair;
  const RenderedSequence rendered = render_pair(patterns, rs, geometry, o.n_blur, o.seed, render_options);
  EncodedSequence encoded = encode_sequence(rendered);

  SequenceMetadata md = metadata_for(rs.name(), o.seed, geometry, o.n_blur);
  SequencePlan plan;
  switch (o.mode) {
    case SequenceMode::kNormal:
      plan = plan_normal(encoded.bias, encoded.triggers[0], kNormalStepMs, std::move(md));
      break;
    case SequenceMode::kMultiTrigger:
      plan = plan_multi(encoded.bias, encoded.triggers[0], encoded.triggers[1], std::move(md));
      break;
    default:
      plan = plan_single(encoded.bias, encoded.triggers[0], kSingleDurations, std::move(md));
      break;
  }
  if (!o.durations.empty()) {
    if (o.durations.size() != plan.steps.size()) {
      throw CommandFailure(kExitBadArguments, "expected " + std::to_string(plan.steps.size()) +
                                                  " durations, got " +
                                                  std::to_string(o.durations.size()));
    }
    for (std::size_t i = 0; i < plan.steps.size(); ++i) plan.steps[i].duration_ms = o.durations[i];
    plan.validate();
  }
  std::vector<int> durations;
  for (const SequenceStep& s : plan.steps) durations.push_back(s.duration_ms);

  std::vector<ImageFile> images{encoded.bias};
  images.insert(images.end(), encoded.triggers.begin(), encoded.triggers.end());
  SequenceBundle bundle = make_bundle(std::move(plan), images);
  bundle.attachments.merge(out.bundle.attachments);
  bundle.attachments[std::string(kRuleSetFile)] = text_bytes(rule_set_to_json(rs));
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const std::string name =
        patterns.size() == 1 ? "pattern.png" : "pattern" + std::to_string(i + 1) + ".png";
    bundle.attachments[name] = encode_png(render_pattern_preview(patterns[i], rs.level_count(), geometry));
  }

  command.args.emplace_back("fg_level", std::to_string(fg));
  command.args.emplace_back("bg_level", std::to_string(bg));
  command.args.emplace_back("stroke", std::to_string(o.stroke));
  command.args.emplace_back("m", std::to_string(o.m));
  command.args.emplace_back("n_blur", std::to_string(o.n_blur));
  command.args.emplace_back("seed", std::to_string(o.seed));
  command.args.emplace_back("mode", std::string(to_string(o.mode)));
  command.args.emplace_back("durations", join_ints(durations));
  command.args.emplace_back("convolve_bias", o.convolve_bias ? "true" : "false");
  command.args.emplace_back("crosshair", o.crosshair ? "true" : "false");
  bundle.command = std::move(command);
  out.bundle = std::move(bundle);
  return out;
}

SequenceBundle sweep_point_bundle(const SweepPointOptions& o) {
  const CalibrationFamily& family = calibration_family_info(o.family);
  const RuleSet rs = family_member(family, o.value);
  require_consistent(classify(rs));

  const GridGeometry geometry{o.m};
  geometry.validate();
  const TargetPattern pattern =
      uniform_pattern(geometry.covering_columns(), geometry.covering_rows(), family.target_level);
  const RenderedSequence rendered = render_pair(pattern, rs, geometry, o.n_blur, o.seed);
  EncodedSequence encoded = encode_sequence(rendered);

  SequenceMetadata md = metadata_for(rs.name(), o.seed, geometry, o.n_blur);
  md.notes["family"] = family.name;
  md.notes["parameter"] = family.parameter;
  md.notes["value"] = format_double(o.value);
  md.notes["reference_value"] = format_double(family.reference_value);
  md.notes["target_level"] = std::to_string(family.target_level);
  SequencePlan plan = plan_single(encoded.bias, encoded.triggers[0], kSingleDurations, std::move(md));
  plan.mode = SequenceMode::kCalibration;

  const ImageFile images[] = {encoded.bias, encoded.triggers[0]};
  SequenceBundle bundle = make_bundle(std::move(plan), images);
  bundle.attachments[std::string(kRuleSetFile)] = text_bytes(rule_set_to_json(rs));
  bundle.command = CommandSpec{"sweep-point",
                               {{"family", family.name},
                                {"value", format_double(o.value)},
                                {"m", std::to_string(o.m)},
                                {"n_blur", std::to_string(o.n_blur)},
                                {"seed", std::to_string(o.seed)}}};
  return bundle;
}

ExperimentPair experiment_pair(const ExperimentPairOptions& o, const std::filesystem::path& ref_dir) {
  const GridGeometry geometry{o.m};
  geometry.validate();
  ExperimentPair pair;
  pair.label = o.label;
  if (o.stimulus == "chequer") {
    const RenderedSequence rendered = render_chequer(geometry, o.n_blur);
    EncodedSequence encoded = encode_sequence(rendered);
    pair.bias = std::move(encoded.bias);
    pair.trigger = std::move(encoded.triggers[0]);
    pair.metadata = metadata_for("chequer", 0, geometry, o.n_blur);
    return pair;
  }
  if (o.stimulus != "word") {
    throw CommandFailure(kExitBadArguments, "unknown stimulus '" + o.stimulus + "'");
  }
  const RuleSet rs = resolve_rules(o.ruleset, ref_dir).rules;
  require_consistent(classify(rs));
  const TargetPattern pattern = rasterize_word(o.word, o.fg_level.value_or(rs.level_count()),
                                               o.bg_level.value_or(1), o.stroke);
  const RenderedSequence rendered = render_pair(pattern, rs, geometry, o.n_blur, o.seed);
  EncodedSequence encoded = encode_sequence(rendered);
  pair.bias = std::move(encoded.bias);
  pair.trigger = std::move(encoded.triggers[0]);
  pair.metadata = metadata_for(rs.name(), o.seed, geometry, o.n_blur);
  pair.answer = lower(o.word);
  return pair;
}

CommandSpec experiment_pair_command(const ExperimentPairOptions& o) {
  CommandSpec c{"experiment-pair", {{"stimulus", o.stimulus}, {"label", o.label}}};
  if (o.stimulus == "word") {
    const std::string rules_arg = is_builtin(o.ruleset)
                                      ? o.ruleset
                                      : std::string(kBundleRef) + std::string(kRuleSetFile);
    c.args.emplace_back("ruleset", rules_arg);
    c.args.emplace_back("word", o.word);
    if (o.fg_level) c.args.emplace_back("fg_level", std::to_string(*o.fg_level));
    if (o.bg_level) c.args.emplace_back("bg_level", std::to_string(*o.bg_level));
    c.args.emplace_back("stroke", std::to_string(o.stroke));
    c.args.emplace_back("seed", std::to_string(o.seed));
  }
  c.args.emplace_back("m", std::to_string(o.m));
  c.args.emplace_back("n_blur", std::to_string(o.n_blur));
  c.args.emplace_back("condition", std::string(to_string(o.condition)));
  c.args.emplace_back("subject", o.subject);
  c.args.emplace_back("phase", std::string(to_string(o.phase)));
  return c;
}

SequenceBundle realize_command(const CommandSpec& command, const std::filesystem::path& bundle_dir) {
  const Args args(command);
  if (command.subcommand == "generate") {
    args.only({"ruleset", "word", "pattern", "fg_level", "bg_level", "stroke", "m", "n_blur", "seed",
               "mode", "durations", "convolve_bias", "crosshair"});
    GenerateOptions o;
    o.ruleset = args.str("ruleset");
    o.words = args.all("word");
    o.patterns = args.all("pattern");
    o.fg_level = args.small("fg_level");
    o.bg_level = args.small("bg_level");
    o.stroke = args.small("stroke");
    o.m = args.small("m");
    o.n_blur = args.small("n_blur");
    o.seed = args.u64("seed");
    o.mode = parse_sequence_mode(args.str("mode"));
    o.durations = parse_durations(args.str("durations"));
    o.convolve_bias = args.flag("convolve_bias");
    o.crosshair = args.flag("crosshair");
    return generate_bundle(o, bundle_dir).bundle;
  }
  if (command.subcommand == "sweep-point") {
    args.only({"family", "value", "m", "n_blur", "seed"});
    return sweep_point_bundle(SweepPointOptions{args.str("family"), args.real("value"),
                                                args.small("m"), args.small("n_blur"),
                                                args.u64("seed")});
  }
  if (command.subcommand == "experiment-pair") {
    args.only({"stimulus", "label", "ruleset", "word", "fg_level", "bg_level", "stroke", "seed", "m",
               "n_blur", "condition", "subject", "phase"});
    ExperimentPairOptions o;
    o.stimulus = args.str("stimulus");
    o.label = args.str("label");
    if (o.stimulus == "word") {
      o.ruleset = args.str("ruleset");
      o.word = args.str("word");
      o.fg_level = args.optional_small("fg_level");
      o.bg_level = args.optional_small("bg_level");
      o.stroke = args.small("stroke");
      o.seed = args.u64("seed");
    }
    o.m = args.small("m");
    o.n_blur = args.small("n_blur");
    o.condition = parse_sequence_mode(args.str("condition"));
    o.subject = args.str("subject");
    const std::string phase = args.str("phase");
    bool known = false;
    for (ExperimentPhase p : {ExperimentPhase::kViewingDryRun, ExperimentPhase::kRecognitionDryRun,
                              ExperimentPhase::kExperimental}) {
      if (phase == to_string(p)) {
        o.phase = p;
        known = true;
      }
    }
    if (!known) throw CommandFailure(kExitValidation, "unknown experiment phase '" + phase + "'");
    SequenceBundle bundle =
        experiment_bundle(experiment_pair(o, bundle_dir), o.phase, o.condition, o.subject);
    attach_experiment_provenance(bundle, o, bundle_dir);
    return bundle;
  }
  throw CommandFailure(kExitValidation, "cannot replay a '" + command.subcommand + "' command");
}

}  // namespace afterimage::cli
