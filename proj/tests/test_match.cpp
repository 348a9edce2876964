#include <set>

#include "doctest.h"

#include "gkpos/config.hpp"
#include "gkpos/errors.hpp"
#include "gkpos/match.hpp"
#include "fixtures.hpp"

using namespace gkpos;

namespace {

const char* kMinimal = R"({
  "schema_version": 1,
  "id": "m",
  "meta": {"pitch_length": 105, "pitch_width": 68, "goal_width": 7.32, "goal_height": 2.44},
  "events": [
    {"id": "e1", "timestamp": 12.5, "type": "shot", "team": "attacking", "ball": [14, 2],
     "freeze_frame": {"goalkeeper": [1, 0.5], "defenders": [[6, 1]], "attackers": [[14, 2]], "ball_carrier": 0}}
  ]
})";

Match timeline(const std::vector<std::pair<double, bool>>& events, Team team = Team::Attacking) {
    Match m;
    m.id = "t";
    int i = 0;
    for (const auto& [t, shot] : events) {
        m.events.push_back(fixture::event("e" + std::to_string(++i), t, shot ? EventType::Shot : EventType::Pass,
                                          team, {15, 0}, fixture::frame({15, 0})));
    }
    return m;
}

}  // namespace

TEST_CASE("parse minimal match") {
    const Match m = parse_match(kMinimal);
    CHECK(m.id == "m");
    REQUIRE(m.events.size() == 1);
    CHECK(m.events[0].type == EventType::Shot);
    CHECK(m.events[0].freeze_frame->goalkeeper == PitchPoint{1, 0.5});
    CHECK(parse_match(serialize_match(m)) == m);
}

TEST_CASE("parse rejects invalid files") {
    std::string s = kMinimal;
    const auto no_frame = nlohmann::json::parse(s);
    auto j = no_frame;
    j["events"][0].erase("freeze_frame");
    CHECK_THROWS_AS(match_from_json(j), MatchFormatError);

    j = no_frame;
    j["schema_version"] = 2;
    CHECK_THROWS_AS(match_from_json(j), MatchFormatError);

    j = no_frame;
    j["events"][0]["colour"] = "red";
    CHECK_THROWS_WITH_AS(match_from_json(j), doctest::Contains("events[0]"), MatchFormatError);

    j = no_frame;
    j["events"].push_back(j["events"][0]);
    j["events"][1]["id"] = "e2";
    j["events"][1]["timestamp"] = 3.0;
    CHECK_THROWS_WITH_AS(match_from_json(j), doctest::Contains("nondecreasing"), MatchFormatError);

    j = no_frame;
    j["events"][0]["ball"] = {500, 0};
    CHECK_THROWS_AS(match_from_json(j), MatchFormatError);

    j = no_frame;
    j["events"][0]["freeze_frame"]["ball_carrier"] = 3;
    CHECK_THROWS_AS(match_from_json(j), MatchFormatError);

    CHECK_THROWS_WITH_AS(parse_match("{\"schema_version\": 1,\n \"meta\": }"), doctest::Contains("line 2"),
                         MatchFormatError);
    CHECK_THROWS_AS(load_match("/nonexistent/match.json"), MatchFormatError);
}

TEST_CASE("episode segmentation") {
    SUBCASE("window cap") {
        std::vector<std::pair<double, bool>> ev;
        for (double t = 100; t < 120; t += 2) ev.push_back({t, false});
        ev.push_back({120, true});
        const auto eps = segment_episodes(timeline(ev));
        REQUIRE(eps.size() == 1);
        CHECK(eps[0].duration() <= 15.0);
        CHECK(eps[0].start == 106.0);
        CHECK(eps[0].shot().type == EventType::Shot);
    }
    SUBCASE("second shot starts after the first") {
        const auto eps = segment_episodes(timeline({{10, false}, {12, false}, {14, true}, {16, false}, {19, true}}));
        REQUIRE(eps.size() == 2);
        CHECK(eps[0].start == 10.0);
        CHECK(eps[1].start == 16.0);
        CHECK(eps[1].start > eps[0].end);
    }
    SUBCASE("possession change ends the buildup") {
        Match m = timeline({{10, false}, {12, false}, {14, false}, {16, true}});
        m.events[1].team = Team::Defending;
        m.events[1].freeze_frame.reset();
        const auto eps = segment_episodes(m);
        REQUIRE(eps.size() == 1);
        CHECK(eps[0].start == 14.0);
    }
    SUBCASE("no shots") {
        CHECK(segment_episodes(timeline({{1, false}, {2, false}})).empty());
    }
    SUBCASE("defending shots do not form episodes") {
        CHECK(segment_episodes(timeline({{1, false}, {2, true}}, Team::Defending)).empty());
    }
}

TEST_CASE("eligibility fixture") {
    const double depth = EngineConfig{}.eligible_zone_depth();
    Episode ep;
    for (const auto& f : fixture::eligibility_fixture()) {
        INFO(f.event.id);
        CHECK(flag_event(f.event, depth) == f.expect);
        ep.events.push_back(f.event);
    }
    const auto flags = flag_eligibility(ep, depth);
    REQUIRE(flags.size() == 12);
    CHECK(to_string(flags[0]) == "green");
    CHECK(to_string(flags[1]) == "no_freeze_frame");
}

TEST_CASE("synthetic generator") {
    const Match a = generate_synthetic(5, 100);
    CHECK(serialize_match(a) == serialize_match(generate_synthetic(5, 100)));
    CHECK(serialize_match(a) != serialize_match(generate_synthetic(6, 100)));
    CHECK(parse_match(serialize_match(a)) == a);

    const auto eps = segment_episodes(a);
    CHECK(eps.size() == 100);
    std::set<Eligibility> seen;
    const double depth = EngineConfig{}.eligible_zone_depth();
    for (const auto& ep : eps) {
        CHECK(ep.shot().type == EventType::Shot);
        CHECK(ep.duration() <= kEpisodeMaxDuration);
        for (auto f : flag_eligibility(ep, depth)) seen.insert(f);
    }
    // Defending-possession events sit outside episodes; check the raw event stream too.
    for (const auto& e : a.events) seen.insert(flag_event(e, depth));
    CHECK(seen.size() == 5);
    CHECK_THROWS_AS(generate_synthetic(1, 0), InvalidArgument);
}
