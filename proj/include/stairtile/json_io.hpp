#pragma once

#include "stairtile/discrepancy.hpp"
#include "stairtile/matching.hpp"
#include "stairtile/rules.hpp"
#include "stairtile/spectral.hpp"

#include <json.hpp>

#include <string>

namespace stairtile {

using Json = nlohmann::ordered_json;

// Patch interchange format: {"tiles": [{"type": "S", "x2": ..., "y2": ...}, ...]}
// with doubled (half-unit) integer coordinates.
Json patch_to_json(const Patch& patch);
Patch patch_from_json(const Json& j, const PrototileSetPtr& protos);

// Rule interchange format: {"name", "inflation", "prototiles": [{"id", "w", "h"}],
// "images": {"<id>": [{"type", "x", "y"}]}} with sizes and offsets in whole units
// (halves allowed; anything finer is rejected).
Json rule_to_json(const SubstitutionRule& rule);
SubstitutionRule rule_from_json(const Json& j);

Json quad_to_json(const Quad& q);
Json point_set_to_json(const QuadPointSet& ps);
Json match_outcome_to_json(const MatchOutcome& outcome, bool include_pairs = false);

Json perron_to_json(const PerronData& pd);
Json classifier_to_json(const ClassifierReport& report);

Json series_to_json(const DiscrepancySeries& series);
// CSV columns: m,count1,count2,boundary,ratio,ratio_decimal; exact values as
// fraction strings, no timestamps, newline-terminated rows.
std::string series_to_csv(const DiscrepancySeries& series);

Json decomposition_to_json(const DecompositionCounts& dc);

std::string read_text_file(const std::string& path);   // Error(IoFailure)
void write_text_file(const std::string& path, const std::string& content);

Json parse_json_text(const std::string& text, const std::string& origin); // Error(ConfigParse)

// Resolves a built-in rule name or a JSON rule file path.
SubstitutionRule resolve_rule(const std::string& name_or_path);

} // namespace stairtile
