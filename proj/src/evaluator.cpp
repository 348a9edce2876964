#include "gkpos/evaluator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gkpos/errors.hpp"
#include "gkpos/probability.hpp"

namespace gkpos {

namespace {

constexpr double kTieTol = 1e-12;

constexpr std::array<std::string_view, kCandidateCount> kDirectionNames{
    "stay", "forward", "forward-left", "left", "back-left", "back", "back-right", "right", "forward-right"};

}  // namespace

std::string_view direction_name(std::size_t direction) { return kDirectionNames.at(direction); }

std::size_t mirror_direction(std::size_t direction) {
    if (direction == kStay) return kStay;
    const std::size_t k = direction - 1;
    return (8 - k) % 8 + 1;
}

bool is_backward(std::size_t direction) { return direction >= 4 && direction <= 6; }

void check_eligible(const GameState& state, const EngineConfig& cfg) {
    const PitchPoint ball = shooter_position(state);
    if (!(ball.x > 0.0)) throw IneligibleState("ball carrier is not in front of the goal plane");
    if (ball.x > cfg.eligible_zone_depth()) {
        throw IneligibleState("ball at x=" + std::to_string(ball.x) + " is outside the defended zone (x <= " +
                              std::to_string(cfg.eligible_zone_depth()) + ")");
    }
}

TargetEvaluation evaluate_target(PitchPoint gk, const GameState& state, GoalPoint target, const EngineConfig& cfg) {
    const PitchPoint shooter = shooter_position(state);
    TargetEvaluation out;
    out.target = target;
    out.p_block = p_block(block_features(shooter, target, state, cfg.block, cfg.dive), cfg.block_model);
    out.p_save =
        p_save(save_features(gk, shooter, target, state, cfg.dive, cfg.goal, cfg.save_features), cfg.save_model);
    out.p_goal = p_goal(out.p_block, out.p_save);
    return out;
}

PositionEvaluation evaluate_position(PitchPoint gk, const GameState& state, const EngineConfig& cfg) {
    check_eligible(state, cfg);
    PositionEvaluation ev;
    ev.position = gk;
    ev.per_target.reserve(cfg.targets.size());
    for (const GoalPoint& t : cfg.targets) ev.per_target.push_back(evaluate_target(gk, state, t, cfg));
    for (std::size_t i = 0; i < ev.per_target.size(); ++i) {
        if (i == 0 || ev.per_target[i].p_goal > ev.metric) {
            ev.metric = ev.per_target[i].p_goal;
            ev.worst_index = i;
        }
    }
    return ev;
}

MoveDecision best_move(PitchPoint prev_gk, double dt, const GameState& state, const EngineConfig& cfg) {
    check_eligible(state, cfg);
    MoveDecision d;
    d.previous = prev_gk;
    d.radius = run_radius(dt, cfg.run);
    const auto positions = candidate_positions(prev_gk, dt, cfg.run, cfg.pitch);
    for (std::size_t i = 0; i < kCandidateCount; ++i) d.candidates[i] = evaluate_position(positions[i], state, cfg);

    std::size_t best = 0;
    for (std::size_t i = 1; i < kCandidateCount; ++i) {
        const double mi = d.candidates[i].metric;
        const double mb = d.candidates[best].metric;
        if (mi < mb - kTieTol) {
            best = i;
        } else if (std::abs(mi - mb) <= kTieTol) {
            const double di = distance(prev_gk, positions[i]);
            const double db = distance(prev_gk, positions[best]);
            if (di < db - kTieTol) best = i;
        }
    }
    d.chosen_index = best;
    return d;
}

std::size_t classify_move(PitchPoint from, PitchPoint to, double radius, double stay_fraction) {
    const PitchPoint delta = to - from;
    const double len = norm(delta);
    if (len < std::max(0.1, stay_fraction * radius)) return kStay;
    const double angle = std::atan2(delta.y, delta.x);
    long k = std::lround(angle / (std::numbers::pi / 4.0));
    k = ((k % 8) + 8) % 8;
    return static_cast<std::size_t>(k) + 1;
}

double DirectionHistogram::backward_share() const {
    double s = 0.0;
    for (std::size_t i = 0; i < kCandidateCount; ++i) {
        if (is_backward(i)) s += frequencies[i];
    }
    return s;
}

DirectionHistogram move_distribution(std::span<const MoveDecision> decisions) {
    if (decisions.empty()) throw InvalidArgument("move_distribution: no decisions");
    DirectionHistogram h;
    std::array<std::size_t, kCandidateCount> actual{};
    for (const MoveDecision& d : decisions) {
        ++h.counts.at(d.chosen_index);
        ++h.total;
        if (d.actual_direction) {
            ++actual.at(*d.actual_direction);
            ++h.actual_total;
        }
    }
    for (std::size_t i = 0; i < kCandidateCount; ++i) {
        h.frequencies[i] = static_cast<double>(h.counts[i]) / static_cast<double>(h.total);
    }
    if (h.actual_total > 0) {
        std::array<double, kCandidateCount> freq{};
        for (std::size_t i = 0; i < kCandidateCount; ++i) {
            freq[i] = static_cast<double>(actual[i]) / static_cast<double>(h.actual_total);
        }
        h.actual_counts = actual;
        h.actual_frequencies = freq;
    }
    return h;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DimensionMismatch("total_variation: distributions differ in support size");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
    return 0.5 * acc;
}

DivergenceReport compare_model_vs_actual(std::span<const MoveDecision> decisions) {
    if (decisions.empty()) throw InvalidArgument("compare_model_vs_actual: no decisions");
    for (const MoveDecision& d : decisions) {
        if (!d.actual_direction) throw InvalidArgument("compare_model_vs_actual: decision without observed move");
    }
    const DirectionHistogram h = move_distribution(decisions);
    DivergenceReport r;
    r.model = h.frequencies;
    r.actual = *h.actual_frequencies;
    r.total_variation = total_variation(r.model, r.actual);
    return r;
}

GoalPoint least_protected_target(PitchPoint gk, const GameState& state, const EngineConfig& cfg) {
    return evaluate_position(gk, state, cfg).worst_target();
}

GoalPoint heatmap_cell_center(int row, int col, const HeatmapGrid& grid, const GoalConfig& goal) {
    const double cell_w = goal.width / grid.cols;
    const double cell_h = goal.height / grid.rows;
    return {-goal.half_width() + (col + 0.5) * cell_w, goal.height - (row + 0.5) * cell_h};
}

Heatmap goal_heatmap(PitchPoint gk, const GameState& state, const HeatmapGrid& grid, const EngineConfig& cfg) {
    if (grid.rows < 1 || grid.cols < 1) throw InvalidArgument("goal_heatmap: grid must be at least 1x1");
    check_eligible(state, cfg);
    Heatmap h;
    h.rows = grid.rows;
    h.cols = grid.cols;
    h.values.reserve(static_cast<std::size_t>(grid.rows * grid.cols));
    for (int r = 0; r < grid.rows; ++r) {
        for (int c = 0; c < grid.cols; ++c) {
            h.values.push_back(evaluate_target(gk, state, heatmap_cell_center(r, c, grid, cfg.goal), cfg).p_goal);
        }
    }
    return h;
}

}  // namespace gkpos
