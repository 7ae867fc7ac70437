#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "afterimage/rule_set.hpp"

namespace afterimage {

/// Canonical JSON text:
///
///   { "name": ..., "levels": k, "rules": [ { "b": 0..255, "t": 0..255, "a": 1..k }, ... ] }
///
/// Rules appear in (b, t) order, two-space indentation, trailing newline, so
/// rule_set_to_json(rule_set_from_json(s)) == s for any canonical s.
std::string rule_set_to_json(const RuleSet& rs);

/// Throws ParseError: syntax errors carry the 1-based line, schema errors
/// carry the field path (e.g. "rules[2].t").
RuleSet rule_set_from_json(std::string_view text);

RuleSet load_rule_set(const std::filesystem::path& path);
void save_rule_set(const RuleSet& rs, const std::filesystem::path& path);

/// A builtin name ("f1".."f6") or a path to a JSON rule-set file.
RuleSet resolve_rule_set(std::string_view name_or_path);

}  // namespace afterimage
