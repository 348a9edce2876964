#pragma once

#include <array>

#include "gkpos/field.hpp"
#include "gkpos/geometry.hpp"

namespace gkpos {

// How far a goalkeeper can get between two events.
struct RunModelParams {
    double run_speed = 5.0;    // m/s
    double radius_cap = 10.0;  // m
};

enum class DiveProjection {
    Central,     // project the keeper onto the goal plane from the shooter
    Orthogonal,  // drop the keeper straight onto the goal line
};

// Dive model. Time constants follow the Ibrahim et al. kinematic analysis;
// the reach surrogate is arm_reach + dive_speed * (usable time after the
// reaction delay). jump_time is carried for completeness but the rectangle
// surrogate does not use it.
struct DiveModelParams {
    double reaction_time = 0.2;   // s
    double jump_time = 0.5;       // s
    double max_dive_time = 1.2;   // s
    double keeper_height = 1.90;  // m
    double vertical_bonus = 0.5;  // m above keeper height reachable in a jump
    double dive_speed = 3.0;      // m/s
    double arm_reach = 1.0;       // m
    double ball_speed = 24.0;     // m/s
    double max_projection_ratio = 50.0;
    DiveProjection projection = DiveProjection::Central;
};

void validate(const RunModelParams& p);
void validate(const DiveModelParams& p);

inline constexpr std::size_t kCandidateCount = 9;

// min(run_speed * dt, radius_cap). Throws InvalidArgument for dt < 0.
double run_radius(double dt, const RunModelParams& p);

// Index 0 is the stay position; index k + 1 is prev moved by run_radius(dt)
// at angle k * pi / 4. Every candidate is clamped onto the pitch.
std::array<PitchPoint, kCandidateCount> candidate_positions(PitchPoint prev, double dt, const RunModelParams& p,
                                                            const PitchConfig& pitch = {});

double dive_reach(double time_available, const DiveModelParams& p);

// Ball flight time from the shooter's feet to a point in the goal plane.
double shot_flight_time(PitchPoint shooter, GoalPoint target, const DiveModelParams& p);

// Ratio by which a lateral distance at the keeper's depth grows when
// projected from the shooter onto the goal plane. 1 for a keeper on the line.
double projection_ratio(PitchPoint gk, PitchPoint shooter, const DiveModelParams& p);

// Reachable rectangle in the goal plane: z in [0, keeper_height +
// vertical_bonus], centered laterally on the keeper's projection, half-width
// dive_reach(flight time) scaled by the projection ratio. Throws
// DegenerateProjection if the shooter is not in front of the goal plane or the
// keeper is behind it.
RectYZ dive_rect(PitchPoint gk, PitchPoint shooter, GoalPoint target, const DiveModelParams& p);

}  // namespace gkpos
