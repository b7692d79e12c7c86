#pragma once

#include <string>

#include <json.hpp>

#include "hpath/solver.hpp"

namespace hpath {

// Records are JSON objects; nlohmann::json keeps object keys sorted, which
// gives the stable key order the report files rely on.

nlohmann::json to_json(const SolverConfig& cfg);
nlohmann::json to_json(const CutMove& m);
nlohmann::json to_json(const std::vector<StageTrace>& trace);

/// Result kind, witness and stats. Wall time is included only when asked,
/// so that seeded reports stay byte-identical across runs.
nlohmann::json to_json(const SearchOutcome& outcome, bool with_timing = false);

/// One line, no trailing newline.
std::string to_line(const nlohmann::json& record);

}  // namespace hpath
