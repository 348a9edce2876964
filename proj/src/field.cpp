#include "gkpos/field.hpp"

#include <algorithm>
#include <cmath>

namespace gkpos {

bool is_valid_point(PitchPoint p, const PitchConfig& pitch) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
    const double half = 0.5 * pitch.width + pitch.margin;
    return p.x >= -pitch.margin && p.x <= pitch.length + pitch.margin && std::abs(p.y) <= half;
}

bool is_valid_goal_point(GoalPoint p, const GoalConfig& goal) {
    if (!std::isfinite(p.y) || !std::isfinite(p.z)) return false;
    return std::abs(p.y) <= goal.half_width() && p.z >= 0.0 && p.z <= goal.height;
}

PitchPoint clamp_to_pitch(PitchPoint p, const PitchConfig& pitch) {
    const double half = 0.5 * pitch.width;
    return {std::clamp(p.x, 0.0, pitch.length), std::clamp(p.y, -half, half)};
}

}  // namespace gkpos
