#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "afterimage/sequence.hpp"

namespace afterimage {

inline constexpr int kManifestVersion = 1;
inline constexpr std::string_view kManifestName = "manifest.json";

enum class BundleErrorCode { kMalformedManifest, kMissingFile, kHashMismatch };

std::string_view to_string(BundleErrorCode code);

/// Failure to read a bundle back. `file` names the offending file when one
/// applies.
class BundleError : public std::runtime_error {
 public:
  BundleError(BundleErrorCode code, const std::string& message, std::string file = {})
      : std::runtime_error(message), code_(code), file_(std::move(file)) {}

  BundleErrorCode code() const noexcept { return code_; }
  const std::string& file() const noexcept { return file_; }

 private:
  BundleErrorCode code_;
  std::string file_;
};

/// The manifest text for a bundle. Keys appear in a fixed order and maps are
/// sorted, so equal bundles give equal bytes.
///
///   { "version", "mode", "zero_gap", "steps": [{file, duration_ms, role}],
///     "ruleset", "seed", "geometry": {m, w, h}, "n_blur",
///     "images": [...], "attachments": [...], "hashes": {file: sha256},
///     "metadata": {viewing_distance_cm, display_notes, condition, notes},
///     "command": {subcommand, args: [[option, value], ...]} | null }
std::string manifest_json(const SequenceBundle& bundle);

/// Writes every image and attachment, then manifest.json, into `dir`
/// (created if needed). Throws DomainError for an invalid plan, a step file
/// missing from the images, or a file name that is not a plain name;
/// IoError when writing fails. Returns the manifest path.
std::filesystem::path write_bundle(const SequenceBundle& bundle, const std::filesystem::path& dir);

/// Throws BundleError: kMalformedManifest for unreadable or invalid
/// manifests, kMissingFile for an absent file, kHashMismatch for a file
/// whose content does not match its recorded hash.
SequenceBundle read_bundle(const std::filesystem::path& dir);

}  // namespace afterimage
