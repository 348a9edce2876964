#include <cstdio>
#include <fstream>

#include "doctest.h"

#include "gkpos/config.hpp"
#include "gkpos/errors.hpp"

using namespace gkpos;

TEST_CASE("config round trip through json") {
    EngineConfig cfg;
    cfg.dive.keeper_height = 1.85;
    cfg.save_features.angle_mode = KeeperAngleMode::GoalCenter;
    cfg.heatmap = {3, 6};
    const EngineConfig back = config_from_json(to_json(cfg));
    CHECK(to_json(back) == to_json(cfg));
    CHECK(back.dive.keeper_height == 1.85);
    CHECK(back.save_features.angle_mode == KeeperAngleMode::GoalCenter);
}

TEST_CASE("config defaults and validation") {
    const EngineConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    REQUIRE(cfg.targets.size() == 6);
    for (const auto& t : cfg.targets) CHECK(std::abs(t.y) == doctest::Approx(3.46));
    CHECK(cfg.dive.reaction_time == 0.2);
    CHECK(cfg.dive.jump_time == 0.5);
    CHECK(cfg.dive.max_dive_time == 1.2);

    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"dive", {{"projection", "sideways"}}}}), InvalidArgument);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"targets", {{9.0, 1.0}}}}), InvalidArgument);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"unknown_key", 1}}), InvalidArgument);
    CHECK_THROWS_AS(load_config("/nonexistent.json"), InvalidArgument);
}

TEST_CASE("config loads weights files relative to itself") {
    const std::string dir = std::string(GKPOS_TEST_TMP);
    {
        std::ofstream w(dir + "/block.tsv");
        w << "corridor_density\t1.5\nmin_time_margin\t-2\nn_defenders_in_corridor\t0.5\n__bias__\t-3\n";
        std::ofstream c(dir + "/cfg.json");
        c << R"({"block_model_file": "block.tsv"})";
    }
    const EngineConfig cfg = load_config(dir + "/cfg.json");
    CHECK(cfg.block_model.weights == std::vector<double>{1.5, -2.0, 0.5});
    CHECK(cfg.block_model.bias == -3.0);
}
