#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gkpos/field.hpp"
#include "gkpos/geometry.hpp"

namespace gkpos {

inline constexpr std::size_t kMaxPlayersPerSide = 11;

// Player positions from one freeze frame. Defenders are the defending side's
// outfield players; the goalkeeper is held separately. The ball carrier, when
// present, indexes into attackers and is the would-be shooter.
struct GameState {
    std::optional<PitchPoint> goalkeeper;
    std::vector<PitchPoint> defenders;
    std::vector<PitchPoint> attackers;
    std::optional<std::size_t> ball_carrier;
    bool under_pressure = false;

    friend bool operator==(const GameState&, const GameState&) = default;
};

// Throws InvalidArgument describing the first violated invariant: player
// counts, carrier index, and every position inside the pitch plus margin.
void validate(const GameState& s, const PitchConfig& pitch);

// Position of the ball carrier; throws IneligibleState if there is none.
PitchPoint shooter_position(const GameState& s);

// Reflect every position across the goal's center axis.
GameState mirrored(const GameState& s);

}  // namespace gkpos
