#pragma once

#include "gkpos/geometry.hpp"

namespace gkpos {

// Goal mouth dimensions. Defaults are regulation size.
struct GoalConfig {
    double width = 7.32;
    double height = 2.44;

    double half_width() const { return 0.5 * width; }
    PitchPoint right_post() const { return {0.0, -half_width()}; }
    PitchPoint left_post() const { return {0.0, half_width()}; }
    RectYZ mouth() const { return {-half_width(), half_width(), 0.0, height}; }
    GoalPoint center() const { return {0.0, 0.5 * height}; }
};

struct PitchConfig {
    double length = 105.0;
    double width = 68.0;
    double margin = 5.0;  // tolerance around the lines for tracking noise
};

// Finite and inside the pitch plus margin.
bool is_valid_point(PitchPoint p, const PitchConfig& pitch);
bool is_valid_goal_point(GoalPoint p, const GoalConfig& goal);

// Clamp onto the playing area proper (no margin): x in [0, length],
// |y| <= width / 2.
PitchPoint clamp_to_pitch(PitchPoint p, const PitchConfig& pitch);

// Same point with y negated (reflection across the goal's center axis).
inline PitchPoint mirrored(PitchPoint p) { return {p.x, -p.y}; }
inline GoalPoint mirrored(GoalPoint p) { return {-p.y, p.z}; }

}  // namespace gkpos
