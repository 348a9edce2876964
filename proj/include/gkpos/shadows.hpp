#pragma once

#include "gkpos/field.hpp"
#include "gkpos/geometry.hpp"
#include "gkpos/kinematics.hpp"

namespace gkpos {

// Time budget used to cap the dive-shadow circle radius.
enum class DiveBudget {
    MaxDiveTime,  // dive_reach(max_dive_time)
    FlightTime,   // dive_reach(shot flight time)
};

struct ShadowOptions {
    DiveBudget dive_budget = DiveBudget::MaxDiveTime;
};

struct ShadowSet {
    double position_shadow = 0.0;
    double goal_shadow = 0.0;
    double dive_shadow = 0.0;
};

// Triangle O (shooter), B (right post), C (left post).
Triangle2 shot_triangle(PitchPoint shooter, const GoalConfig& goal);

// S(ABC ∩ OBC) / S(OBC) with A the goalkeeper. Throws DegenerateShotTriangle
// when the shooter is collinear with the posts or behind the goal plane.
double position_shadow(PitchPoint gk, PitchPoint shooter, const GoalConfig& goal);

// Fraction of the goal mouth covered by the dive rectangle aimed at `target`.
double goal_shadow(PitchPoint gk, PitchPoint shooter, GoalPoint target, const DiveModelParams& dive,
                   const GoalConfig& goal);

// Radius of the dive-shadow circle: the keeper's perpendicular distance to the
// ground-plane shot line, capped by the dive reach.
double dive_circle_radius(PitchPoint gk, PitchPoint shooter, GoalPoint target, const DiveModelParams& dive,
                          const ShadowOptions& opts = {});

// S(Circle(A, radius) ∩ OBC) / S(OBC). The circle is not clipped to the
// half-plane in front of the goal line; OBC already lies there.
double dive_shadow(PitchPoint gk, PitchPoint shooter, GoalPoint target, const DiveModelParams& dive,
                   const GoalConfig& goal, const ShadowOptions& opts = {});

ShadowSet shadow_set(PitchPoint gk, PitchPoint shooter, GoalPoint target, const DiveModelParams& dive,
                     const GoalConfig& goal, const ShadowOptions& opts = {});

}  // namespace gkpos
