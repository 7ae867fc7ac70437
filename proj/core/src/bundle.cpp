#include "afterimage/bundle.hpp"

#include <set>

#include <json.hpp>

#include "afterimage/digest.hpp"
#include "afterimage/errors.hpp"
#include "afterimage/image_io.hpp"

namespace afterimage {
namespace {

using Json = nlohmann::ordered_json;

bool plain_name(std::string_view name) {
  return !name.empty() && name != "." && name != ".." &&
         name.find_first_of("/\\") == std::string_view::npos && name != kManifestName;
}

[[noreturn]] void malformed(const std::string& what) {
  throw BundleError(BundleErrorCode::kMalformedManifest, "malformed manifest: " + what,
                    std::string(kManifestName));
}

// Lookup helpers translating schema problems into kMalformedManifest.
const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) malformed(std::string("missing '") + key + "'");
  return obj.at(key);
}

std::string str(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_string()) malformed(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

long long integer(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_number_integer()) malformed(std::string("'") + key + "' must be an integer");
  return v.get<long long>();
}

int small_int(const Json& obj, const char* key) {
  const long long v = integer(obj, key);
  if (v < -2147483647LL || v > 2147483647LL) malformed(std::string("'") + key + "' out of range");
  return static_cast<int>(v);
}

std::vector<std::string> names(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_array()) malformed(std::string("'") + key + "' must be an array");
  std::vector<std::string> out;
  for (const Json& e : v) {
    if (!e.is_string() || !plain_name(e.get<std::string>())) {
      malformed(std::string("'") + key + "' entries must be plain file names");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

std::string_view to_string(BundleErrorCode code) {
  switch (code) {
    case BundleErrorCode::kMalformedManifest:
      return "malformed-manifest";
    case BundleErrorCode::kMissingFile:
      return "missing-file";
    case BundleErrorCode::kHashMismatch:
      return "hash-mismatch";
  }
  return "malformed-manifest";
}

std::string manifest_json(const SequenceBundle& bundle) {
  const SequencePlan& plan = bundle.plan;
  const SequenceMetadata& md = plan.metadata;
  Json j;
  j["version"] = kManifestVersion;
  j["mode"] = std::string(to_string(plan.mode));
  j["zero_gap"] = plan.zero_gap;
  Json steps = Json::array();
  for (const SequenceStep& s : plan.steps) {
    steps.push_back({{"file", s.file}, {"duration_ms", s.duration_ms}, {"role", s.role}});
  }
  j["steps"] = std::move(steps);
  j["ruleset"] = md.ruleset;
  j["seed"] = md.seed;
  j["geometry"] = {{"m", md.geometry.cell_px},
                   {"w", md.geometry.image_width},
                   {"h", md.geometry.image_height}};
  j["n_blur"] = md.n_blur;
  Json images = Json::array();
  Json attachments = Json::array();
  Json hashes = Json::object();
  for (const auto& [name, bytes] : bundle.images) {
    images.push_back(name);
    hashes[name] = sha256_hex(bytes);
  }
  for (const auto& [name, bytes] : bundle.attachments) {
    attachments.push_back(name);
    hashes[name] = sha256_hex(bytes);
  }
  j["images"] = std::move(images);
  j["attachments"] = std::move(attachments);
  j["hashes"] = std::move(hashes);
  Json notes = Json::object();
  for (const auto& [k, v] : md.notes) notes[k] = v;
  j["metadata"] = {{"viewing_distance_cm", md.viewing_distance_cm},
                   {"display_notes", md.display_notes},
                   {"condition", md.condition},
                   {"notes", std::move(notes)}};
  if (bundle.command) {
    Json args = Json::array();
    for (const auto& [k, v] : bundle.command->args) args.push_back(Json::array({k, v}));
    j["command"] = {{"subcommand", bundle.command->subcommand}, {"args", std::move(args)}};
  } else {
    j["command"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::filesystem::path write_bundle(const SequenceBundle& bundle, const std::filesystem::path& dir) {
  bundle.plan.validate();
  for (const SequenceStep& s : bundle.plan.steps) {
    if (!bundle.images.contains(s.file)) {
      throw DomainError("plan step '" + s.file + "' has no image in the bundle");
    }
  }
  for (const auto* files : {&bundle.images, &bundle.attachments}) {
    for (const auto& [name, bytes] : *files) {
      if (!plain_name(name)) throw DomainError("bundle file name '" + name + "' is not a plain name");
      if (files == &bundle.attachments && bundle.images.contains(name)) {
        throw DomainError("'" + name + "' is both an image and an attachment");
      }
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto* files : {&bundle.images, &bundle.attachments}) {
    for (const auto& [name, bytes] : *files) write_file(dir / name, bytes);
  }
  const std::string manifest = manifest_json(bundle);
  const auto path = dir / kManifestName;
  write_file(path, std::span<const std::uint8_t>(
                       reinterpret_cast<const std::uint8_t*>(manifest.data()), manifest.size()));
  return path;
}

SequenceBundle read_bundle(const std::filesystem::path& dir) {
  const auto manifest_path = dir / kManifestName;
  if (!std::filesystem::is_regular_file(manifest_path)) {
    throw BundleError(BundleErrorCode::kMissingFile, "no manifest in " + dir.string(),
                      std::string(kManifestName));
  }
  std::vector<std::uint8_t> raw;
  try {
    raw = read_file(manifest_path);
  } catch (const IoError& e) {
    throw BundleError(BundleErrorCode::kMissingFile, e.what(), std::string(kManifestName));
  }
  Json j;
  try {
    j = Json::parse(raw.begin(), raw.end());
  } catch (const nlohmann::json::parse_error& e) {
    malformed(e.what());
  }
  if (!j.is_object()) malformed("top level must be an object");
  if (integer(j, "version") != kManifestVersion) {
    malformed("unsupported version " + field(j, "version").dump());
  }

  SequenceBundle bundle;
  SequencePlan& plan = bundle.plan;
  try {
    plan.mode = parse_sequence_mode(str(j, "mode"));
  } catch (const DomainError& e) {
    malformed(e.what());
  }
  const Json& zero_gap = field(j, "zero_gap");
  if (!zero_gap.is_boolean()) malformed("'zero_gap' must be a boolean");
  plan.zero_gap = zero_gap.get<bool>();
  const Json& steps = field(j, "steps");
  if (!steps.is_array()) malformed("'steps' must be an array");
  for (const Json& s : steps) {
    plan.steps.push_back(SequenceStep{str(s, "file"), small_int(s, "duration_ms"), str(s, "role")});
  }

  SequenceMetadata& md = plan.metadata;
  md.ruleset = str(j, "ruleset");
  const Json& seed = field(j, "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    malformed("'seed' must be a non-negative integer");
  }
  md.seed = seed.get<std::uint64_t>();
  const Json& geometry = field(j, "geometry");
  md.geometry = GridGeometry{small_int(geometry, "m"), small_int(geometry, "w"),
                             small_int(geometry, "h")};
  md.n_blur = small_int(j, "n_blur");
  const Json& meta = field(j, "metadata");
  md.viewing_distance_cm = str(meta, "viewing_distance_cm");
  md.display_notes = str(meta, "display_notes");
  md.condition = str(meta, "condition");
  const Json& notes = field(meta, "notes");
  if (!notes.is_object()) malformed("'metadata.notes' must be an object");
  for (const auto& [k, v] : notes.items()) {
    if (!v.is_string()) malformed("'metadata.notes' values must be strings");
    md.notes[k] = v.get<std::string>();
  }
  try {
    plan.validate();
  } catch (const DomainError& e) {
    malformed(e.what());
  }

  const Json& command = field(j, "command");
  if (!command.is_null()) {
    CommandSpec spec{str(command, "subcommand"), {}};
    const Json& args = field(command, "args");
    if (!args.is_array()) malformed("'command.args' must be an array");
    for (const Json& a : args) {
      if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string()) {
        malformed("'command.args' entries must be [option, value] string pairs");
      }
      spec.args.emplace_back(a[0].get<std::string>(), a[1].get<std::string>());
    }
    bundle.command = std::move(spec);
  }

  const Json& hashes = field(j, "hashes");
  if (!hashes.is_object()) malformed("'hashes' must be an object");
  const auto image_names = names(j, "images");
  const auto attachment_names = names(j, "attachments");
  std::set<std::string> listed(image_names.begin(), image_names.end());
  for (const SequenceStep& s : plan.steps) {
    if (!listed.contains(s.file)) malformed("step file '" + s.file + "' is not listed in 'images'");
  }
  listed.insert(attachment_names.begin(), attachment_names.end());
  if (listed.size() != image_names.size() + attachment_names.size()) {
    malformed("file names listed twice");
  }
  if (hashes.size() != listed.size()) malformed("'hashes' must cover exactly the listed files");

  auto load = [&](const std::string& name) {
    if (!hashes.contains(name) || !hashes.at(name).is_string()) {
      malformed("no hash recorded for '" + name + "'");
    }
    const auto path = dir / name;
    if (!std::filesystem::is_regular_file(path)) {
      throw BundleError(BundleErrorCode::kMissingFile, "bundle file '" + name + "' is missing",
                        name);
    }
    std::vector<std::uint8_t> bytes = read_file(path);
    const std::string expected = hashes.at(name).get<std::string>();
    const std::string actual = sha256_hex(bytes);
    if (actual != expected) {
      throw BundleError(BundleErrorCode::kHashMismatch,
                        "'" + name + "' hashes to " + actual + ", manifest records " + expected,
                        name);
    }
    return bytes;
  };
  for (const std::string& name : image_names) bundle.images[name] = load(name);
  for (const std::string& name : attachment_names) bundle.attachments[name] = load(name);
  return bundle;
}

}  // namespace afterimage
