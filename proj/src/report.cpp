#include "hpath/report.hpp"

namespace hpath {

using nlohmann::json;

json to_json(const SolverConfig& cfg) {
  json j;
  j["mode"] = to_string(cfg.mode);
  j["ledger_mode"] = to_string(cfg.ledger_mode);
  j["initial_order_seed"] = cfg.initial_order_seed ? json(*cfg.initial_order_seed) : json(nullptr);
  j["max_expansions_per_stage"] = cfg.max_expansions_per_stage;
  j["dedup"] = cfg.dedup;
  j["heal_secondary"] = cfg.heal_secondary;
  j["trace"] = cfg.trace ? json(*cfg.trace) : json("auto");
  return j;
}

json to_json(const CutMove& m) {
  static const char* const kClass[] = {"Do0", "Do1", "Do2"};
  json j;
  j["gap"] = m.gap;
  j["segment"] = {m.seg_lo, m.seg_hi};
  j["side"] = m.side == Side::kLeft ? "left" : "right";
  j["orientation"] = m.orientation == Orientation::kForward ? "forward" : "reversed";
  j["class"] = kClass[static_cast<int>(m.do_class)];
  j["xyabcd"] = {m.x, m.y, m.a, m.b, m.c, m.d};
  j["new_main"] = m.new_main ? json({m.new_main->u, m.new_main->v}) : json(nullptr);
  return j;
}

json to_json(const std::vector<StageTrace>& trace) {
  json stages = json::array();
  for (const auto& st : trace) {
    json moves = json::array();
    for (const auto& m : st.moves) moves.push_back(to_json(m));
    stages.push_back({{"initial", st.initial},
                      {"removed", {st.removed.u, st.removed.v}},
                      {"moves", std::move(moves)}});
  }
  return stages;
}

json to_json(const SearchOutcome& outcome, bool with_timing) {
  const auto& s = outcome.stats;
  json j;
  j["result"] = to_string(outcome.kind);
  j["witness"] = outcome.kind == ResultKind::kHamiltonPath ? json(outcome.path) : json(nullptr);
  j["expansions"] = s.expansions;
  j["children_kept"] = s.children_kept;
  j["ledger_consumed"] = {s.ledger_consumed[0], s.ledger_consumed[1]};
  j["max_queue"] = s.max_queue;
  j["stages"] = s.stages;
  j["max_stage_expansions"] = s.max_stage_expansions;
  j["stage_expansion_cap"] = s.stage_expansion_cap;
  j["virtual_edges"] = s.virtual_edges;
  j["prefiltered"] = s.prefiltered;
  if (with_timing) j["elapsed_ms"] = s.elapsed_seconds * 1e3;
  return j;
}

std::string to_line(const json& record) { return record.dump(); }

}  // namespace hpath
