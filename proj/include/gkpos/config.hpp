#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gkpos/field.hpp"
#include "gkpos/kinematics.hpp"
#include "gkpos/probability.hpp"
#include "gkpos/shadows.hpp"

namespace gkpos {

struct HeatmapGrid {
    int rows = 4;   // along z, row 0 at the crossbar
    int cols = 12;  // along y, column 0 at the right post (-y)
};

// Every assumption behind an evaluation, loaded once and never mutated.
struct EngineConfig {
    GoalConfig goal{};
    PitchConfig pitch{};
    RunModelParams run{};
    DiveModelParams dive{};
    BlockParams block{};
    SaveFeatureOptions save_features{};
    ProbabilityModel block_model = default_block_model();
    ProbabilityModel save_model = default_save_model();
    std::vector<GoalPoint> targets = default_targets();
    double eligible_zone_fraction = 0.3;  // of pitch length, measured from the goal line
    HeatmapGrid heatmap{};
    double simulator_dt = 1.0;  // s of running assumed when the simulator suggests moves

    double eligible_zone_depth() const { return eligible_zone_fraction * pitch.length; }

    // Two post-hugging columns (0.2 m inside each post) at three heights.
    static std::vector<GoalPoint> default_targets();
};

// Throws InvalidArgument on any out-of-range parameter.
void validate(const EngineConfig& cfg);

nlohmann::json to_json(const EngineConfig& cfg);

// Missing keys keep their defaults. `block_model_file` / `save_model_file`
// keys load weights files (paths relative to base_dir).
EngineConfig config_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
EngineConfig load_config(const std::string& path);

}  // namespace gkpos
