#include "gkpos/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gkpos/errors.hpp"

namespace gkpos {

namespace {

// Lateral bound on the projected keeper position and rectangle edges.
constexpr double kMaxLateral = 1.0e4;

}  // namespace

void validate(const RunModelParams& p) {
    if (!(p.run_speed > 0.0) || !(p.radius_cap > 0.0)) {
        throw InvalidArgument("run model: run_speed and radius_cap must be > 0");
    }
}

void validate(const DiveModelParams& p) {
    const bool positive = p.reaction_time > 0.0 && p.jump_time > 0.0 && p.max_dive_time > 0.0 &&
                          p.keeper_height > 0.0 && p.vertical_bonus > 0.0 && p.dive_speed > 0.0 &&
                          p.arm_reach > 0.0 && p.ball_speed > 0.0 && p.max_projection_ratio >= 1.0;
    if (!positive) throw InvalidArgument("dive model: all parameters must be positive");
    if (!(p.reaction_time < p.max_dive_time)) {
        throw InvalidArgument("dive model: reaction_time must be below max_dive_time");
    }
}

double run_radius(double dt, const RunModelParams& p) {
    if (!(dt >= 0.0)) throw InvalidArgument("run_radius: dt must be >= 0");
    return std::min(p.run_speed * dt, p.radius_cap);
}

std::array<PitchPoint, kCandidateCount> candidate_positions(PitchPoint prev, double dt, const RunModelParams& p,
                                                            const PitchConfig& pitch) {
    const double r = run_radius(dt, p);
    std::array<PitchPoint, kCandidateCount> out{};
    out[0] = clamp_to_pitch(prev, pitch);
    for (int k = 0; k < 8; ++k) {
        const double theta = k * std::numbers::pi / 4.0;
        const PitchPoint step{r * std::cos(theta), r * std::sin(theta)};
        out[static_cast<std::size_t>(k) + 1] = clamp_to_pitch(prev + step, pitch);
    }
    return out;
}

double dive_reach(double time_available, const DiveModelParams& p) {
    const double usable = std::min(std::max(time_available, 0.0), p.max_dive_time) - p.reaction_time;
    return p.arm_reach + p.dive_speed * std::max(0.0, usable);
}

double shot_flight_time(PitchPoint shooter, GoalPoint target, const DiveModelParams& p) {
    const double dx = shooter.x;
    const double dy = shooter.y - target.y;
    return std::sqrt(dx * dx + dy * dy + target.z * target.z) / p.ball_speed;
}

double projection_ratio(PitchPoint gk, PitchPoint shooter, const DiveModelParams& p) {
    if (p.projection == DiveProjection::Orthogonal) return 1.0;
    const double depth = shooter.x - gk.x;
    // Keeper level with (or beyond) the shooter: the cone is unbounded.
    if (depth <= shooter.x / p.max_projection_ratio) return p.max_projection_ratio;
    return shooter.x / depth;
}

RectYZ dive_rect(PitchPoint gk, PitchPoint shooter, GoalPoint target, const DiveModelParams& p) {
    if (!(shooter.x > 0.0)) throw DegenerateProjection("dive_rect: shooter must be in front of the goal plane");
    if (gk.x < 0.0) throw DegenerateProjection("dive_rect: goalkeeper is behind the goal plane");

    const double ratio = projection_ratio(gk, shooter, p);
    const double center = p.projection == DiveProjection::Orthogonal
                              ? gk.y
                              : std::clamp(shooter.y + (gk.y - shooter.y) * ratio, -kMaxLateral, kMaxLateral);
    const double half = std::min(dive_reach(shot_flight_time(shooter, target, p), p) * ratio, kMaxLateral);
    return {center - half, center + half, 0.0, p.keeper_height + p.vertical_bonus};
}

}  // namespace gkpos
