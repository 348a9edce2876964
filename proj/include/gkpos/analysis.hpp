#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gkpos/config.hpp"
#include "gkpos/evaluator.hpp"
#include "gkpos/match.hpp"

namespace gkpos {

// Engine config with the match's own pitch and goal dimensions.
EngineConfig config_for_match(const EngineConfig& base, const MatchMeta& meta);

// Model decisions for every green event whose preceding event (same episode)
// shows the keeper: the run model starts from that earlier keeper position
// with the time gap between the two events, and the observed keeper position
// at the green event is recorded as the actual move.
std::vector<MoveDecision> episode_decisions(const Episode& ep, const EngineConfig& cfg);
std::vector<MoveDecision> match_decisions(const Match& m, const EngineConfig& cfg);

nlohmann::json to_json(const PositionEvaluation& ev);
nlohmann::json to_json(const MoveDecision& d);
nlohmann::json to_json(const DirectionHistogram& h);
nlohmann::json to_json(const DivergenceReport& r);
nlohmann::json goal_point_json(GoalPoint p);

// Move-distribution report (model choices vs observed keeper moves).
nlohmann::json analysis_report(const Match& m, const EngineConfig& cfg);

// Bar chart of model vs observed direction frequencies.
std::string direction_chart_svg(const DirectionHistogram& h);

}  // namespace gkpos
