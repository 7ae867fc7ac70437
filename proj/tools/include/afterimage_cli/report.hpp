#pragma once

#include <string>

#include <json.hpp>

#include <afterimage/bundle.hpp>
#include <afterimage/classification.hpp>

namespace afterimage::cli {

/// Line-per-predicate report: "bias-scrambling: yes" etc., followed by the
/// mapping schemes, feasible level intervals and any violated constraints.
std::string classification_text(const ClassificationReport& report);
nlohmann::ordered_json classification_json(const ClassificationReport& report);

std::string bundle_text(const SequenceBundle& bundle);
nlohmann::ordered_json bundle_json(const SequenceBundle& bundle);

}  // namespace afterimage::cli
