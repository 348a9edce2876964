#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gkpos/config.hpp"
#include "gkpos/game_state.hpp"
#include "gkpos/kinematics.hpp"

namespace gkpos {

struct TargetEvaluation {
    GoalPoint target{};
    double p_block = 0.0;
    double p_save = 0.0;
    double p_goal = 0.0;
};

// P(goal | position): the worst case over the simulated shot targets.
struct PositionEvaluation {
    PitchPoint position{};
    std::vector<TargetEvaluation> per_target;
    double metric = 0.0;
    std::size_t worst_index = 0;

    GoalPoint worst_target() const { return per_target.at(worst_index).target; }
};

// Direction indices: 0 = stay, k + 1 = moved at angle k * pi / 4 (k = 0 points
// away from the goal, k = 2 toward the left post side, k = 4 toward the goal
// line).
inline constexpr std::size_t kStay = 0;
std::string_view direction_name(std::size_t direction);
std::size_t mirror_direction(std::size_t direction);
// Direction has a component toward the goal line (back, back-left, back-right).
bool is_backward(std::size_t direction);

struct MoveDecision {
    PitchPoint previous{};
    double radius = 0.0;
    std::array<PositionEvaluation, kCandidateCount> candidates{};
    std::size_t chosen_index = kStay;
    std::optional<PitchPoint> actual_position;
    std::optional<std::size_t> actual_direction;

    const PositionEvaluation& chosen() const { return candidates[chosen_index]; }
};

// Throws IneligibleState unless an attacker holds the ball inside the
// eligible zone (ball.x <= eligible_zone_fraction * pitch length, x > 0).
void check_eligible(const GameState& state, const EngineConfig& cfg);

// P(goal) for one simulated shot at `target`.
TargetEvaluation evaluate_target(PitchPoint gk, const GameState& state, GoalPoint target, const EngineConfig& cfg);

PositionEvaluation evaluate_position(PitchPoint gk, const GameState& state, const EngineConfig& cfg);

// Evaluates the nine run-model candidates around prev_gk and picks the lowest
// metric. Ties (within 1e-12) go to the smaller displacement from prev_gk,
// then the lower direction index.
MoveDecision best_move(PitchPoint prev_gk, double dt, const GameState& state, const EngineConfig& cfg);

// Quantize an observed keeper move to a direction index. Moves shorter than
// stay_fraction * radius (or 0.1 m) count as staying.
std::size_t classify_move(PitchPoint from, PitchPoint to, double radius, double stay_fraction = 0.3);

struct DirectionHistogram {
    std::size_t total = 0;
    std::array<std::size_t, kCandidateCount> counts{};
    std::array<double, kCandidateCount> frequencies{};
    // Present when at least one decision carries an observed move.
    std::size_t actual_total = 0;
    std::optional<std::array<std::size_t, kCandidateCount>> actual_counts;
    std::optional<std::array<double, kCandidateCount>> actual_frequencies;

    double backward_share() const;
};

// Throws InvalidArgument on an empty input.
DirectionHistogram move_distribution(std::span<const MoveDecision> decisions);

struct DivergenceReport {
    std::array<double, kCandidateCount> model{};
    std::array<double, kCandidateCount> actual{};
    double total_variation = 0.0;
};

double total_variation(std::span<const double> p, std::span<const double> q);

// Throws InvalidArgument if the list is empty or any decision lacks an
// observed direction.
DivergenceReport compare_model_vs_actual(std::span<const MoveDecision> decisions);

// Target with the highest P(goal); ties go to the lowest index.
GoalPoint least_protected_target(PitchPoint gk, const GameState& state, const EngineConfig& cfg);

struct Heatmap {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;  // row-major, row 0 at the crossbar, column 0 at -y (front view from the pitch)

    double at(int r, int c) const { return values.at(static_cast<std::size_t>(r * cols + c)); }
};

GoalPoint heatmap_cell_center(int row, int col, const HeatmapGrid& grid, const GoalConfig& goal);

// P(goal) for a simulated shot to every cell center of the goal mouth.
Heatmap goal_heatmap(PitchPoint gk, const GameState& state, const HeatmapGrid& grid, const EngineConfig& cfg);

}  // namespace gkpos
