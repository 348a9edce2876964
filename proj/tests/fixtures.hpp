#pragma once

#include <string>
#include <vector>

#include "gkpos/match.hpp"

namespace fixture {

using namespace gkpos;

inline GameState frame(PitchPoint ball_carrier, bool keeper = true) {
    GameState s;
    if (keeper) s.goalkeeper = PitchPoint{1.5, 0.0};
    s.defenders = {{8, 2}, {9, -3}, {14, 0}};
    s.attackers = {ball_carrier, {12, 8}};
    s.ball_carrier = 0;
    return s;
}

inline Event event(std::string id, double t, EventType type, Team team, PitchPoint ball,
                   std::optional<GameState> ff) {
    Event e;
    e.id = std::move(id);
    e.timestamp = t;
    e.type = type;
    e.team = team;
    e.ball = ball;
    e.freeze_frame = std::move(ff);
    return e;
}

struct Flagged {
    Event event;
    Eligibility expect;
};

// One event per rule branch, plus the zone boundaries.
inline std::vector<Flagged> eligibility_fixture() {
    using E = EventType;
    using T = Team;
    return {
        {event("f1", 1, E::Pass, T::Attacking, {20, 0}, frame({20, 0})), Eligibility::Green},
        {event("f2", 2, E::Carry, T::Attacking, {20, 0}, std::nullopt), Eligibility::NoFreezeFrame},
        {event("f3", 3, E::Pass, T::Attacking, {20, 0}, frame({20, 0}, false)), Eligibility::NoGoalkeeper},
        {event("f4", 4, E::Clearance, T::Defending, {10, 0}, frame({10, 0})), Eligibility::DefendingPossession},
        {event("f5", 5, E::Pass, T::Attacking, {40, 0}, frame({40, 0})), Eligibility::OutsideZone},
        {event("f6", 6, E::Pass, T::Attacking, {31.5, 0}, frame({31.5, 0})), Eligibility::Green},
        {event("f7", 7, E::Pass, T::Attacking, {31.6, 0}, frame({31.6, 0})), Eligibility::OutsideZone},
        {event("f8", 8, E::Carry, T::Attacking, {0, 10}, frame({0, 10})), Eligibility::OutsideZone},
        {event("f9", 9, E::Other, T::Defending, {10, 0}, std::nullopt), Eligibility::NoFreezeFrame},
        {event("f10", 10, E::Carry, T::Attacking, {5, 20}, frame({5, 20})), Eligibility::Green},
        {event("f11", 11, E::Pass, T::Defending, {10, 0}, frame({10, 0}, false)), Eligibility::NoGoalkeeper},
        {event("f12", 12, E::Shot, T::Attacking, {12, 3}, frame({12, 3})), Eligibility::Green},
    };
}

}  // namespace fixture
