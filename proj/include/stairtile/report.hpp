#pragma once

#include "stairtile/json_io.hpp"

#include <string>
#include <vector>

namespace stairtile {

// One self-checking experiment driven by a JSON config; artifacts (CSV/JSON/SVG)
// land in out_dir. Scenarios: lattice-discrepancy, pair-discrepancy, spectral,
// matching, periodicity, and the bundles thm13 / thm14.
struct ReportResult {
    bool ok = true;
    std::vector<std::string> lines;     // human-readable log, one entry per check
    std::vector<std::string> artifacts; // paths written
};

ReportResult run_report(const Json& config, const std::string& out_dir);

// Parses "gamma:1/2", "periodic:1,3", "constant:2", or a literal digit word.
WordFamily word_family_from_spec(const std::string& spec);

} // namespace stairtile
