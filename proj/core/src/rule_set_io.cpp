#include "afterimage/rule_set_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "afterimage/builtin.hpp"
#include "afterimage/errors.hpp"

namespace afterimage {
namespace {

using Json = nlohmann::ordered_json;

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

int require_int(const Json& obj, const char* key, const std::string& path, int lo, int hi) {
  const std::string field = path + "." + key;
  if (!obj.contains(key)) throw ParseError("missing field '" + field + "'", 0, field);
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError("field '" + field + "' must be an integer", 0, field);
  const auto x = v.get<std::int64_t>();
  if (x < lo || x > hi) {
    throw ParseError("field '" + field + "' = " + std::to_string(x) + " outside " +
                         std::to_string(lo) + ".." + std::to_string(hi),
                     0, field);
  }
  return static_cast<int>(x);
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed,
                    const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      const std::string field = path.empty() ? key : path + "." + key;
      throw ParseError("unknown field '" + field + "'", 0, field);
    }
  }
}

}  // namespace

std::string rule_set_to_json(const RuleSet& rs) {
  Json rules = Json::array();
  for (const Rule& r : rs.rules()) {
    rules.push_back(Json{{"b", r.bias.code()}, {"t", r.trigger.code()}, {"a", r.level}});
  }
  Json doc{{"name", rs.name()}, {"levels", rs.level_count()}, {"rules", std::move(rules)}};
  return doc.dump(2) + "\n";
}

RuleSet rule_set_from_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_of(text, e.byte), {});
  }
  if (!doc.is_object()) throw ParseError("rule set must be a JSON object", 1, {});
  reject_unknown(doc, {"name", "levels", "rules"}, "");

  if (!doc.contains("name") || !doc["name"].is_string()) {
    throw ParseError("field 'name' must be a string", 0, "name");
  }
  const int levels = require_int(doc, "levels", "", 2, 1 << 16);
  if (!doc.contains("rules") || !doc["rules"].is_array()) {
    throw ParseError("field 'rules' must be an array", 0, "rules");
  }
  std::vector<Rule> rules;
  const Json& arr = doc["rules"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "rules[" + std::to_string(i) + "]";
    if (!arr[i].is_object()) throw ParseError(path + " must be an object", 0, path);
    reject_unknown(arr[i], {"b", "t", "a"}, path);
    const int b = require_int(arr[i], "b", path, 0, kMaxCode);
    const int t = require_int(arr[i], "t", path, 0, kMaxCode);
    const int a = require_int(arr[i], "a", path, 1, levels);
    rules.push_back({Intensity::from_code(static_cast<std::uint8_t>(b)),
                     Intensity::from_code(static_cast<std::uint8_t>(t)), a});
  }
  try {
    return RuleSet(doc["name"].get<std::string>(), levels, std::move(rules));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid rule set: ") + e.what(), 0, "rules");
  }
}

RuleSet load_rule_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open rule set file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return rule_set_from_json(ss.str());
}

void save_rule_set(const RuleSet& rs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write rule set file " + path.string());
  out << rule_set_to_json(rs);
  if (!out) throw IoError("write failed for " + path.string());
}

RuleSet resolve_rule_set(std::string_view name_or_path) {
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
    return builtin(name_or_path);
  }
  const std::filesystem::path p{std::string(name_or_path)};
  if (!std::filesystem::exists(p)) {
    throw LookupError("'" + std::string(name_or_path) + "' is neither a builtin rule set nor a file");
  }
  return load_rule_set(p);
}

}  // namespace afterimage
