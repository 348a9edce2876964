#include "gkpos/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gkpos/errors.hpp"

namespace gkpos {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

json model_json(const ProbabilityModel& m) {
    json w = json::array();
    for (std::size_t i = 0; i < m.weights.size(); ++i) w.push_back({m.feature_names[i], m.weights[i]});
    return {{"weights", w}, {"bias", m.bias}};
}

ProbabilityModel model_from(const json& j, const std::vector<std::string>& names) {
    ProbabilityModel m;
    for (const auto& entry : j.at("weights")) {
        m.feature_names.push_back(entry.at(0).get<std::string>());
        m.weights.push_back(entry.at(1).get<double>());
    }
    m.bias = j.at("bias").get<double>();
    validate_schema(m, names);
    return m;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
    const std::filesystem::path p(path);
    return p.is_absolute() ? path : (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

std::vector<GoalPoint> EngineConfig::default_targets() {
    std::vector<GoalPoint> out;
    for (double y : {-3.46, 3.46}) {
        for (double z : {0.24, 1.22, 2.20}) out.push_back({y, z});
    }
    return out;
}

void validate(const EngineConfig& cfg) {
    if (!(cfg.goal.width > 0.0) || !(cfg.goal.height > 0.0)) throw InvalidArgument("goal dimensions must be > 0");
    if (!(cfg.pitch.length > 0.0) || !(cfg.pitch.width > 0.0) || cfg.pitch.margin < 0.0) {
        throw InvalidArgument("pitch dimensions must be > 0");
    }
    validate(cfg.run);
    validate(cfg.dive);
    if (!(cfg.block.corridor_half_width >= 0.0) || !(cfg.block.defender_speed > 0.0)) {
        throw InvalidArgument("block parameters out of range");
    }
    validate_schema(cfg.block_model, BlockFeatures::names());
    validate_schema(cfg.save_model, SaveFeatures::names());
    if (cfg.targets.empty()) throw InvalidArgument("at least one shot target is required");
    for (const auto& t : cfg.targets) {
        if (!is_valid_goal_point(t, cfg.goal)) throw InvalidArgument("shot target outside the goal mouth");
    }
    if (!(cfg.eligible_zone_fraction > 0.0 && cfg.eligible_zone_fraction <= 1.0)) {
        throw InvalidArgument("eligible_zone_fraction must be in (0, 1]");
    }
    if (cfg.heatmap.rows < 1 || cfg.heatmap.cols < 1) throw InvalidArgument("heatmap grid must be at least 1x1");
    if (!(cfg.simulator_dt >= 0.0)) throw InvalidArgument("simulator_dt must be >= 0");
}

json to_json(const EngineConfig& cfg) {
    json targets = json::array();
    for (const auto& t : cfg.targets) targets.push_back({t.y, t.z});
    return {
        {"goal", {{"width", cfg.goal.width}, {"height", cfg.goal.height}}},
        {"pitch", {{"length", cfg.pitch.length}, {"width", cfg.pitch.width}, {"margin", cfg.pitch.margin}}},
        {"run", {{"run_speed", cfg.run.run_speed}, {"radius_cap", cfg.run.radius_cap}}},
        {"dive",
         {{"reaction_time", cfg.dive.reaction_time},
          {"jump_time", cfg.dive.jump_time},
          {"max_dive_time", cfg.dive.max_dive_time},
          {"keeper_height", cfg.dive.keeper_height},
          {"vertical_bonus", cfg.dive.vertical_bonus},
          {"dive_speed", cfg.dive.dive_speed},
          {"arm_reach", cfg.dive.arm_reach},
          {"ball_speed", cfg.dive.ball_speed},
          {"max_projection_ratio", cfg.dive.max_projection_ratio},
          {"projection", cfg.dive.projection == DiveProjection::Central ? "central" : "orthogonal"}}},
        {"block",
         {{"corridor_half_width", cfg.block.corridor_half_width},
          {"defender_speed", cfg.block.defender_speed},
          {"no_defender_margin", cfg.block.no_defender_margin}}},
        {"save_features",
         {{"angle_mode", cfg.save_features.angle_mode == KeeperAngleMode::ShotLine ? "shot_line" : "goal_center"},
          {"dive_budget",
           cfg.save_features.shadows.dive_budget == DiveBudget::MaxDiveTime ? "max_dive_time" : "flight_time"}}},
        {"block_model", model_json(cfg.block_model)},
        {"save_model", model_json(cfg.save_model)},
        {"targets", targets},
        {"eligible_zone_fraction", cfg.eligible_zone_fraction},
        {"heatmap", {{"rows", cfg.heatmap.rows}, {"cols", cfg.heatmap.cols}}},
        {"simulator_dt", cfg.simulator_dt},
    };
}

namespace {

void allow(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw InvalidArgument("config: " + where + " must be an object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* k : keys) ok = ok || key == k;
        if (!ok) throw InvalidArgument("config: unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
}

}  // namespace

EngineConfig config_from_json(const json& j, const std::string& base_dir) {
    EngineConfig cfg;
    allow(j, "", {"goal", "pitch", "run", "dive", "block", "save_features", "block_model", "save_model",
                  "block_model_file", "save_model_file", "targets", "eligible_zone_fraction", "heatmap",
                  "simulator_dt"});
    if (j.contains("goal")) allow(j["goal"], "goal", {"width", "height"});
    if (j.contains("pitch")) allow(j["pitch"], "pitch", {"length", "width", "margin"});
    if (j.contains("run")) allow(j["run"], "run", {"run_speed", "radius_cap"});
    if (j.contains("dive")) {
        allow(j["dive"], "dive", {"reaction_time", "jump_time", "max_dive_time", "keeper_height", "vertical_bonus",
                                  "dive_speed", "arm_reach", "ball_speed", "max_projection_ratio", "projection"});
    }
    if (j.contains("block")) allow(j["block"], "block", {"corridor_half_width", "defender_speed", "no_defender_margin"});
    if (j.contains("save_features")) allow(j["save_features"], "save_features", {"angle_mode", "dive_budget"});
    if (j.contains("heatmap")) allow(j["heatmap"], "heatmap", {"rows", "cols"});
    try {
        if (j.contains("goal")) {
            read(j["goal"], "width", cfg.goal.width);
            read(j["goal"], "height", cfg.goal.height);
        }
        if (j.contains("pitch")) {
            read(j["pitch"], "length", cfg.pitch.length);
            read(j["pitch"], "width", cfg.pitch.width);
            read(j["pitch"], "margin", cfg.pitch.margin);
        }
        if (j.contains("run")) {
            read(j["run"], "run_speed", cfg.run.run_speed);
            read(j["run"], "radius_cap", cfg.run.radius_cap);
        }
        if (j.contains("dive")) {
            const json& d = j["dive"];
            read(d, "reaction_time", cfg.dive.reaction_time);
            read(d, "jump_time", cfg.dive.jump_time);
            read(d, "max_dive_time", cfg.dive.max_dive_time);
            read(d, "keeper_height", cfg.dive.keeper_height);
            read(d, "vertical_bonus", cfg.dive.vertical_bonus);
            read(d, "dive_speed", cfg.dive.dive_speed);
            read(d, "arm_reach", cfg.dive.arm_reach);
            read(d, "ball_speed", cfg.dive.ball_speed);
            read(d, "max_projection_ratio", cfg.dive.max_projection_ratio);
            if (d.contains("projection")) {
                const auto mode = d["projection"].get<std::string>();
                if (mode == "central") {
                    cfg.dive.projection = DiveProjection::Central;
                } else if (mode == "orthogonal") {
                    cfg.dive.projection = DiveProjection::Orthogonal;
                } else {
                    throw InvalidArgument("dive.projection must be 'central' or 'orthogonal'");
                }
            }
        }
        if (j.contains("block")) {
            read(j["block"], "corridor_half_width", cfg.block.corridor_half_width);
            read(j["block"], "defender_speed", cfg.block.defender_speed);
            read(j["block"], "no_defender_margin", cfg.block.no_defender_margin);
        }
        if (j.contains("save_features")) {
            const json& s = j["save_features"];
            if (s.contains("angle_mode")) {
                const auto mode = s["angle_mode"].get<std::string>();
                if (mode == "shot_line") {
                    cfg.save_features.angle_mode = KeeperAngleMode::ShotLine;
                } else if (mode == "goal_center") {
                    cfg.save_features.angle_mode = KeeperAngleMode::GoalCenter;
                } else {
                    throw InvalidArgument("save_features.angle_mode must be 'shot_line' or 'goal_center'");
                }
            }
            if (s.contains("dive_budget")) {
                const auto mode = s["dive_budget"].get<std::string>();
                if (mode == "max_dive_time") {
                    cfg.save_features.shadows.dive_budget = DiveBudget::MaxDiveTime;
                } else if (mode == "flight_time") {
                    cfg.save_features.shadows.dive_budget = DiveBudget::FlightTime;
                } else {
                    throw InvalidArgument("save_features.dive_budget must be 'max_dive_time' or 'flight_time'");
                }
            }
        }
        if (j.contains("block_model")) cfg.block_model = model_from(j["block_model"], BlockFeatures::names());
        if (j.contains("save_model")) cfg.save_model = model_from(j["save_model"], SaveFeatures::names());
        if (j.contains("block_model_file")) {
            cfg.block_model = import_model_file(resolve(base_dir, j["block_model_file"].get<std::string>()),
                                                BlockFeatures::names());
        }
        if (j.contains("save_model_file")) {
            cfg.save_model = import_model_file(resolve(base_dir, j["save_model_file"].get<std::string>()),
                                               SaveFeatures::names());
        }
        if (j.contains("targets")) {
            cfg.targets.clear();
            for (const auto& t : j["targets"]) cfg.targets.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
        }
        read(j, "eligible_zone_fraction", cfg.eligible_zone_fraction);
        if (j.contains("heatmap")) {
            read(j["heatmap"], "rows", cfg.heatmap.rows);
            read(j["heatmap"], "cols", cfg.heatmap.cols);
        }
        read(j, "simulator_dt", cfg.simulator_dt);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

EngineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument("config " + path + ": " + e.what());
    }
    const auto dir = std::filesystem::path(path).parent_path().string();
    return config_from_json(j, dir.empty() ? "." : dir);
}

}  // namespace gkpos
