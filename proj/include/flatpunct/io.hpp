#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "flatpunct/classify.hpp"
#include "flatpunct/metric.hpp"
#include "flatpunct/moves.hpp"

namespace flatpunct {

inline constexpr const char* kSchema = "flatpunct/1";

struct ParseOptions {
  // Keep kappa_pi as rationals and carry the exact total K/pi.
  bool exact = false;
};

// MetricDocument: {"schema": "flatpunct/1", "kappa_pi": [...], "lengths": [...]}
// or {"schema": ..., "cylinder": {"width": w}}. kappa_pi entries are numbers
// or "p/q" strings. Throws Error{ParseError}; invariants are left to validate().
FlatDiskMetric metric_from_json(const nlohmann::json& doc, const ParseOptions& options = {});
nlohmann::json metric_to_json(const FlatDiskMetric& metric);

// Steps {"type": "tri_cut", "i", "a", "v"} and {"type": "principal", "j", "r"},
// angles in units of pi.
ModificationPlan plan_from_json(const nlohmann::json& doc);
nlohmann::json plan_to_json(const ModificationPlan& plan);

nlohmann::json canonical_to_json(const CanonicalMetric& canonical);
nlohmann::json certificate_to_json(const Certificate& certificate);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace flatpunct
