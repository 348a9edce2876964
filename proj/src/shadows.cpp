#include "gkpos/shadows.hpp"

#include <algorithm>
#include <cmath>

#include "gkpos/errors.hpp"

namespace gkpos {

namespace {

constexpr double kClampTol = 1e-9;

double clamp_ratio(double r) {
    if (r > 1.0 && r <= 1.0 + kClampTol) return 1.0;
    if (r < 0.0 && r >= -kClampTol) return 0.0;
    return std::clamp(r, 0.0, 1.0);
}

double checked_shot_area(const Triangle2& obc, PitchPoint shooter) {
    if (!(shooter.x > 0.0)) throw DegenerateShotTriangle("shooter must be strictly in front of the goal plane");
    const double area = triangle_area(obc);
    if (area == 0.0) throw DegenerateShotTriangle("shot triangle OBC has zero area");
    return area;
}

}  // namespace

Triangle2 shot_triangle(PitchPoint shooter, const GoalConfig& goal) {
    return {{shooter, goal.right_post(), goal.left_post()}};
}

double position_shadow(PitchPoint gk, PitchPoint shooter, const GoalConfig& goal) {
    const Triangle2 obc = shot_triangle(shooter, goal);
    const double obc_area = checked_shot_area(obc, shooter);
    if (gk == shooter) return 1.0;
    const Triangle2 abc{{gk, goal.right_post(), goal.left_post()}};
    if (triangle_area(abc) == 0.0) return 0.0;
    const Polygon p = to_polygon(abc);
    const Polygon q = to_polygon(obc);
    return clamp_ratio(convex_poly_intersection_area(p, q) / obc_area);
}

double goal_shadow(PitchPoint gk, PitchPoint shooter, GoalPoint target, const DiveModelParams& dive,
                   const GoalConfig& goal) {
    const RectYZ reach = dive_rect(gk, shooter, target, dive);
    const RectYZ mouth = goal.mouth();
    return clamp_ratio(rect_intersection_area(reach, mouth) / mouth.area());
}

double dive_circle_radius(PitchPoint gk, PitchPoint shooter, GoalPoint target, const DiveModelParams& dive,
                          const ShadowOptions& opts) {
    const PitchPoint foot = foot_of_perpendicular(gk, {shooter, {0.0, target.y}});
    const double budget = opts.dive_budget == DiveBudget::MaxDiveTime ? dive.max_dive_time
                                                                      : shot_flight_time(shooter, target, dive);
    return std::min(distance(gk, foot), dive_reach(budget, dive));
}

double dive_shadow(PitchPoint gk, PitchPoint shooter, GoalPoint target, const DiveModelParams& dive,
                   const GoalConfig& goal, const ShadowOptions& opts) {
    const Triangle2 obc = shot_triangle(shooter, goal);
    const double obc_area = checked_shot_area(obc, shooter);
    const Circle2 circle{gk, dive_circle_radius(gk, shooter, target, dive, opts)};
    const Polygon q = to_polygon(obc);
    return clamp_ratio(circle_poly_intersection_area(circle, q) / obc_area);
}

ShadowSet shadow_set(PitchPoint gk, PitchPoint shooter, GoalPoint target, const DiveModelParams& dive,
                     const GoalConfig& goal, const ShadowOptions& opts) {
    return {position_shadow(gk, shooter, goal), goal_shadow(gk, shooter, target, dive, goal),
            dive_shadow(gk, shooter, target, dive, goal, opts)};
}

}  // namespace gkpos
