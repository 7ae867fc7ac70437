#include "afterimage_cli/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include <afterimage/builtin.hpp>
#include <afterimage/bundle.hpp>
#include <afterimage/errors.hpp>
#include <afterimage/image_io.hpp>
#include <afterimage/rule_set_io.hpp>

#include "afterimage_cli/commands.hpp"
#include "afterimage_cli/report.hpp"
#include "afterimage_cli/server.hpp"

namespace afterimage::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

const char* kind_of(int exit_code) {
  switch (exit_code) {
    case kExitValidation:
      return "validation";
    case kExitIo:
      return "io";
    default:
      return "bad-arguments";
  }
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-' && c != '_') c = '_';
  }
  return s;
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()),
                                                 text.size()));
}

std::string unguarded_warning(const ClassificationReport& r) {
  return "rule set '" + r.name +
         "' is neither ambiguous nor scrambling on either side; the target pattern may be "
         "recognizable in the bias or trigger image";
}

// Files of `a` and `b` whose bytes differ, by name; "manifest.json" when the
// manifests differ.
std::vector<std::string> bundle_differences(const SequenceBundle& a, const SequenceBundle& b) {
  std::vector<std::string> diff;
  if (manifest_json(a) != manifest_json(b)) diff.push_back(std::string(kManifestName));
  std::set<std::string> names;
  for (const auto* m : {&a.images, &a.attachments, &b.images, &b.attachments}) {
    for (const auto& [k, v] : *m) names.insert(k);
  }
  auto find = [](const SequenceBundle& x, const std::string& k) -> const std::vector<std::uint8_t>* {
    if (auto it = x.images.find(k); it != x.images.end()) return &it->second;
    if (auto it = x.attachments.find(k); it != x.attachments.end()) return &it->second;
    return nullptr;
  };
  for (const std::string& k : names) {
    const auto* pa = find(a, k);
    const auto* pb = find(b, k);
    if (!pa || !pb || *pa != *pb) diff.push_back(k);
  }
  return diff;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;

  void emit(const Json& j) const { out << j.dump(2) << "\n"; }
};

// Parses "ruleset:word".
ExperimentPairOptions pair_from_spec(const std::string& spec) {
  const auto colon = spec.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
    throw CommandFailure(kExitBadArguments, "expected RULESET:WORD, got '" + spec + "'");
  }
  ExperimentPairOptions o;
  o.ruleset = spec.substr(0, colon);
  o.word = spec.substr(colon + 1);
  o.label = sanitize(fs::path(o.ruleset).stem().string() + "-" + o.word);
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Afterimage stimulus generator: rule-set analysis, image sequences, bundles"};
  app.name("afterimage");
  app.require_subcommand(1);
  Context ctx{out, err};

  // generate
  GenerateOptions gen;
  std::string gen_out;
  std::string gen_mode = "afterimage";
  std::string gen_durations;
  bool no_crosshair = false;
  auto* generate = app.add_subcommand("generate", "Render a bias/trigger sequence into a bundle");
  generate->add_option("--ruleset", gen.ruleset, "Builtin rule set (f1..f6) or JSON file")->required();
  generate->add_option("--word", gen.words, "Target word (repeat for multi-trigger)");
  generate->add_option("--pattern", gen.patterns, "Target pattern PGM, value k = level k+1");
  generate->add_option("--m", gen.m, "Cell size in pixels")->capture_default_str();
  generate->add_option("--n-blur", gen.n_blur, "Trigger blur kernel size (odd)")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->envname("AFTERIMAGE_SEED");
  generate->add_option("--mode", gen_mode, "Sequence mode")
      ->check(CLI::IsMember({"afterimage", "normal", "multi"}))
      ->capture_default_str();
  generate->add_option("--out", gen_out, "Bundle directory")->required();
  generate->add_option("--fg-level", gen.fg_level, "Level of word strokes (default: highest)");
  generate->add_option("--bg-level", gen.bg_level, "Level around the word (default: 1)");
  generate->add_option("--stroke", gen.stroke, "Word stroke width in cells")->capture_default_str();
  generate->add_option("--durations", gen_durations, "Step durations in ms, comma-separated");
  generate->add_flag("--convolve-bias", gen.convolve_bias, "Blur the bias image as well");
  generate->add_flag("--no-crosshair", no_crosshair, "Omit the fixation crosshair");
  generate->add_flag("--json", ctx.json, "Machine-readable output");

  // validate
  std::string val_ruleset;
  auto* validate = app.add_subcommand("validate", "Classify a rule set");
  validate->add_option("ruleset,--ruleset", val_ruleset, "Builtin rule set or JSON file")->required();
  validate->add_flag("--json", ctx.json, "Machine-readable output");

  // inspect
  std::string insp_dir;
  auto* inspect = app.add_subcommand("inspect", "Verify and describe a bundle");
  inspect->add_option("bundle", insp_dir, "Bundle directory")->required();
  inspect->add_flag("--json", ctx.json, "Machine-readable output");

  // sweep
  std::string sw_family;
  std::string sw_values;
  std::optional<double> sw_from, sw_to;
  double sw_step = 0.01;
  std::string sw_out;
  int sw_m = 25;
  int sw_n_blur = kDefaultBlur;
  std::uint64_t sw_seed = 0;
  bool sw_list = false;
  auto* sweep = app.add_subcommand("sweep", "Calibration bundles over one rule-set parameter");
  sweep->add_option("--family", sw_family, "Calibration family");
  sweep->add_flag("--list", sw_list, "List calibration families");
  sweep->add_option("--values", sw_values, "Comma-separated parameter values");
  sweep->add_option("--from", sw_from, "Grid start (default: reference - 0.05)");
  sweep->add_option("--to", sw_to, "Grid end (default: reference + 0.05)");
  sweep->add_option("--step", sw_step, "Grid step")->capture_default_str();
  sweep->add_option("--out", sw_out, "Output directory");
  sweep->add_option("--m", sw_m, "Cell size in pixels")->capture_default_str();
  sweep->add_option("--n-blur", sw_n_blur, "Trigger blur kernel size")->capture_default_str();
  sweep->add_option("--seed", sw_seed, "Random seed")->envname("AFTERIMAGE_SEED");
  sweep->add_flag("--json", ctx.json, "Machine-readable output");

  // experiment
  std::string ex_subject;
  std::string ex_condition = "afterimage";
  std::uint64_t ex_seed = 0;
  int ex_m = 25;
  int ex_n_blur = kDefaultBlur;
  std::vector<std::string> ex_dry = {"f3:red", "f6:low"};
  std::vector<std::string> ex_pairs = {"f3:light", "f6:hello"};
  std::string ex_out;
  auto* experiment = app.add_subcommand("experiment", "Bundles for one subject's session");
  experiment->add_option("--subject", ex_subject, "Subject id")->required();
  experiment->add_option("--condition", ex_condition, "Viewing condition")
      ->check(CLI::IsMember({"afterimage", "normal"}))
      ->capture_default_str();
  experiment->add_option("--seed", ex_seed, "Random seed")->envname("AFTERIMAGE_SEED");
  experiment->add_option("--m", ex_m, "Cell size in pixels")->capture_default_str();
  experiment->add_option("--n-blur", ex_n_blur, "Trigger blur kernel size")->capture_default_str();
  experiment->add_option("--dry-run", ex_dry, "Recognition dry run RULESET:WORD")->capture_default_str();
  experiment->add_option("--pair", ex_pairs, "Experimental pair RULESET:WORD")->capture_default_str();
  experiment->add_option("--out", ex_out, "Session directory")->required();
  experiment->add_flag("--json", ctx.json, "Machine-readable output");

  // serve
  std::string sv_dir;
  std::string sv_host = "127.0.0.1";
  int sv_port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve bundles to the viewer over HTTP");
  serve->add_option("dir,--dir", sv_dir, "Directory of bundles")->required();
  serve->add_option("--host", sv_host, "Listen address")->capture_default_str();
  serve->add_option("--port", sv_port, "Port (0: any free port)")->capture_default_str();

  // replay
  std::string rp_dir;
  std::string rp_out;
  auto* replay = app.add_subcommand("replay", "Re-run a bundle's recorded command and compare");
  replay->add_option("bundle", rp_dir, "Bundle directory")->required();
  replay->add_option("--out", rp_out, "Also write the regenerated bundle here");
  replay->add_flag("--json", ctx.json, "Machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadArguments;
  }

  auto fail = [&](int code, const std::string& message) {
    err << "error: " << message << "\n";
    if (ctx.json) {
      ctx.emit(Json{{"error", {{"exit_code", code}, {"kind", kind_of(code)}, {"message", message}}}});
    }
    return code;
  };

  try {
    if (generate->parsed()) {
      gen.mode = parse_sequence_mode(gen_mode);
      gen.crosshair = !no_crosshair;
      if (!gen_durations.empty()) {
        std::vector<int> d;
        std::stringstream ss(gen_durations);
        for (std::string tok; std::getline(ss, tok, ',');) {
          try {
            std::size_t used = 0;
            d.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
          } catch (const std::logic_error&) {
            throw CommandFailure(kExitBadArguments, "durations must be comma-separated integers (ms)");
          }
        }
        gen.durations = std::move(d);
      }
      Generated g = generate_bundle(gen);
      std::vector<std::string> warnings;
      if (g.report.exclusivity_unguarded()) warnings.push_back(unguarded_warning(g.report));
      const fs::path manifest = write_bundle(g.bundle, gen_out);
      for (const auto& w : warnings) err << "warning: " << w << "\n";
      if (ctx.json) {
        ctx.emit(Json{{"bundle", gen_out},
                      {"manifest", manifest.string()},
                      {"classification", classification_json(g.report)},
                      {"warnings", warnings}});
      } else {
        out << classification_text(g.report) << "wrote " << manifest.string() << "\n";
      }
      return kExitOk;
    }

    if (validate->parsed()) {
      const RuleSet rs = resolve_rule_set(val_ruleset);
      const ClassificationReport report = classify(rs);
      if (ctx.json) {
        ctx.emit(classification_json(report));
      } else {
        out << classification_text(report);
        if (report.model_consistent() && report.exclusivity_unguarded()) {
          err << "warning: " << unguarded_warning(report) << "\n";
        }
      }
      return report.model_consistent() ? kExitOk : kExitValidation;
    }

    if (inspect->parsed()) {
      const SequenceBundle b = read_bundle(insp_dir);
      if (ctx.json) {
        ctx.emit(bundle_json(b));
      } else {
        out << bundle_text(b);
      }
      return kExitOk;
    }

    if (sweep->parsed()) {
      if (sw_list) {
        Json list = Json::array();
        for (const CalibrationFamily& f : calibration_families()) {
          if (ctx.json) {
            list.push_back({{"name", f.name}, {"base", f.base}, {"parameter", f.parameter},
                            {"reference_value", f.reference_value}, {"target_level", f.target_level},
                            {"description", f.description}});
          } else {
            out << f.name << "  " << f.parameter << " = " << format_double(f.reference_value)
                << "  (all-a" << f.target_level << ")  " << f.description << "\n";
          }
        }
        if (ctx.json) ctx.emit(Json{{"families", list}});
        return kExitOk;
      }
      if (sw_family.empty() || sw_out.empty()) {
        throw CommandFailure(kExitBadArguments, "sweep needs --family and --out (or --list)");
      }
      const CalibrationFamily& info = calibration_family_info(sw_family);
      std::vector<double> grid;
      if (!sw_values.empty()) {
        std::stringstream ss(sw_values);
        for (std::string tok; std::getline(ss, tok, ',');) {
          try {
            std::size_t used = 0;
            grid.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
          } catch (const std::logic_error&) {
            throw CommandFailure(kExitBadArguments, "--values must be comma-separated numbers");
          }
        }
      } else {
        const double from = sw_from.value_or(std::max(0.0, info.reference_value - 0.05));
        const double to = sw_to.value_or(std::min(1.0, info.reference_value + 0.05));
        grid = linear_grid(from, to, sw_step);
      }
      const FamilySweep fs_sweep = calibration_family(sw_family, grid);
      Json entries = Json::array();
      for (const CalibrationVariant& v : fs_sweep.variants) {
        const std::string dir = sanitize(info.name + "_" + info.parameter + "_" + format_double(v.parameter));
        const SequenceBundle b =
            sweep_point_bundle(SweepPointOptions{info.name, v.parameter, sw_m, sw_n_blur, sw_seed});
        write_bundle(b, fs::path(sw_out) / dir);
        entries.push_back({{"value", v.parameter}, {"bundle", dir}, {"ruleset", v.rules.name()},
                           {"reference", v.reference}});
      }
      Json index{{"family", info.name},
                 {"base", info.base},
                 {"parameter", info.parameter},
                 {"reference_value", info.reference_value},
                 {"target_level", info.target_level},
                 {"entries", entries},
                 {"notices", fs_sweep.notices}};
      write_text(fs::path(sw_out) / "sweep_index.json", index.dump(2) + "\n");
      for (const auto& n : fs_sweep.notices) err << "notice: " << n << "\n";
      if (ctx.json) {
        ctx.emit(index);
      } else {
        for (const auto& e : entries) {
          out << info.parameter << " = " << format_double(e["value"].get<double>()) << "  -> "
              << e["bundle"].get<std::string>() << (e["reference"].get<bool>() ? "  (reference)" : "")
              << "\n";
        }
        out << "wrote " << (fs::path(sw_out) / "sweep_index.json").string() << "\n";
      }
      return kExitOk;
    }

    if (experiment->parsed()) {
      const SequenceMode condition = parse_sequence_mode(ex_condition);
      ExperimentSpec spec;
      spec.subject_id = ex_subject;
      spec.condition = condition;
      spec.seed = ex_seed;
      std::map<std::string, ExperimentPairOptions> by_label;
      auto configure = [&](ExperimentPairOptions o, ExperimentPhase phase) {
        o.m = ex_m;
        o.n_blur = ex_n_blur;
        o.seed = ex_seed;
        o.condition = condition;
        o.subject = ex_subject;
        o.phase = phase;
        const std::string base = o.label;
        for (int k = 2; by_label.contains(o.label); ++k) o.label = base + "-" + std::to_string(k);
        by_label[o.label] = o;
        return experiment_pair(o);
      };
      ExperimentPairOptions chequer;
      chequer.stimulus = "chequer";
      chequer.label = "chequer";
      spec.viewing_dry_run = configure(chequer, ExperimentPhase::kViewingDryRun);
      for (const auto& s : ex_dry) {
        spec.recognition_dry_runs.push_back(configure(pair_from_spec(s), ExperimentPhase::kRecognitionDryRun));
      }
      for (const auto& s : ex_pairs) {
        spec.experimental_pairs.push_back(configure(pair_from_spec(s), ExperimentPhase::kExperimental));
      }
      std::vector<ExperimentEntry> entries = build_experiment(spec);
      Json session_entries = Json::array();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        ExperimentEntry& e = entries[i];
        attach_experiment_provenance(e.bundle, by_label.at(e.label));
        char prefix[16];
        std::snprintf(prefix, sizeof prefix, "%02zu", i + 1);
        const std::string dir = std::string(prefix) + "-" + std::string(to_string(e.phase)) + "-" + e.label;
        write_bundle(e.bundle, fs::path(ex_out) / dir);
        session_entries.push_back({{"index", i + 1},
                                   {"phase", std::string(to_string(e.phase))},
                                   {"label", e.label},
                                   {"bundle", dir}});
      }
      Json session{{"subject_id", ex_subject},
                   {"condition", ex_condition},
                   {"seed", ex_seed},
                   {"entries", session_entries}};
      write_text(fs::path(ex_out) / "session.json", session.dump(2) + "\n");
      if (ctx.json) {
        ctx.emit(session);
      } else {
        for (const auto& e : session_entries) {
          out << e["index"].get<std::size_t>() << ". " << e["phase"].get<std::string>() << "  "
              << e["label"].get<std::string>() << "  -> " << e["bundle"].get<std::string>() << "\n";
        }
        out << "wrote " << (fs::path(ex_out) / "session.json").string() << "\n";
      }
      return kExitOk;
    }

    if (serve->parsed()) {
      BundleServer server(sv_dir);
      const int port = server.bind(sv_host, sv_port);
      out << "serving " << sv_dir << " on http://" << sv_host << ":" << port << "/" << std::endl;
      server.listen();
      return kExitOk;
    }

    if (replay->parsed()) {
      const SequenceBundle original = read_bundle(rp_dir);
      if (!original.command) {
        throw CommandFailure(kExitValidation, "bundle " + rp_dir + " records no command");
      }
      const SequenceBundle again = realize_command(*original.command, rp_dir);
      if (!rp_out.empty()) write_bundle(again, rp_out);
      const auto diff = bundle_differences(original, again);
      if (ctx.json) {
        ctx.emit(Json{{"bundle", rp_dir}, {"identical", diff.empty()}, {"differences", diff}});
      } else if (diff.empty()) {
        out << "replay of " << rp_dir << " is byte-identical\n";
      } else {
        out << "replay of " << rp_dir << " differs in:";
        for (const auto& d : diff) out << " " << d;
        out << "\n";
      }
      return diff.empty() ? kExitOk : kExitValidation;
    }
  } catch (const CommandFailure& e) {
    return fail(e.exit_code(), e.what());
  } catch (const ParseError& e) {
    std::string where;
    if (e.line() > 0) where += " (line " + std::to_string(e.line()) + ")";
    if (!e.field().empty()) where += " (field " + e.field() + ")";
    return fail(kExitValidation, std::string(e.what()) + where);
  } catch (const BundleError& e) {
    return fail(kExitValidation, std::string(to_string(e.code())) + ": " + e.what());
  } catch (const IoError& e) {
    return fail(kExitIo, e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(kExitIo, e.what());
  } catch (const UnsatisfiableError& e) {
    return fail(kExitValidation, e.what());
  } catch (const PreconditionError& e) {
    return fail(kExitValidation, e.what());
  } catch (const ProvenanceError& e) {
    return fail(kExitValidation, e.what());
  } catch (const LookupError& e) {
    return fail(kExitBadArguments, e.what());
  } catch (const DomainError& e) {
    return fail(kExitBadArguments, e.what());
  }
  return kExitBadArguments;
}

}  // namespace afterimage::cli
