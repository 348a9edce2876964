#include "gkpos/game_state.hpp"

#include <string>

#include "gkpos/errors.hpp"

namespace gkpos {

namespace {

void check_points(const std::vector<PitchPoint>& pts, const char* side, const PitchConfig& pitch) {
    if (pts.size() > kMaxPlayersPerSide) {
        throw InvalidArgument(std::string(side) + ": more than 11 players");
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!is_valid_point(pts[i], pitch)) {
            throw InvalidArgument(std::string(side) + "[" + std::to_string(i) + "] is outside the pitch");
        }
    }
}

}  // namespace

void validate(const GameState& s, const PitchConfig& pitch) {
    // The goalkeeper counts toward the defending side.
    const std::size_t defending = s.defenders.size() + (s.goalkeeper ? 1 : 0);
    if (defending > kMaxPlayersPerSide) throw InvalidArgument("defending side has more than 11 players");
    check_points(s.defenders, "defenders", pitch);
    check_points(s.attackers, "attackers", pitch);
    if (s.goalkeeper && !is_valid_point(*s.goalkeeper, pitch)) {
        throw InvalidArgument("goalkeeper is outside the pitch");
    }
    if (s.ball_carrier && *s.ball_carrier >= s.attackers.size()) {
        throw InvalidArgument("ball_carrier does not index an attacker");
    }
}

PitchPoint shooter_position(const GameState& s) {
    if (!s.ball_carrier || *s.ball_carrier >= s.attackers.size()) {
        throw IneligibleState("no attacking ball carrier in the game state");
    }
    return s.attackers[*s.ball_carrier];
}

GameState mirrored(const GameState& s) {
    GameState out = s;
    if (out.goalkeeper) out.goalkeeper = mirrored(*out.goalkeeper);
    for (auto& p : out.defenders) p = mirrored(p);
    for (auto& p : out.attackers) p = mirrored(p);
    return out;
}

}  // namespace gkpos
