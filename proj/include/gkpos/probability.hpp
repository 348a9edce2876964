#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gkpos/field.hpp"
#include "gkpos/game_state.hpp"
#include "gkpos/kinematics.hpp"
#include "gkpos/shadows.hpp"

namespace gkpos {

// ---------------------------------------------------------------------------
// Linear-logistic classifier

struct ProbabilityModel {
    std::vector<std::string> feature_names;
    std::vector<double> weights;
    double bias = 0.0;

    // logistic(bias + w . x). Throws DimensionMismatch if x has the wrong size.
    double predict(std::span<const double> x) const;
};

// Numerically stable sigmoid, kept strictly inside (0, 1).
double logistic(double z);

// Throws DimensionMismatch / ModelFormatError if the model does not match the
// expected feature schema (same names, same order) or holds non-finite values.
void validate_schema(const ProbabilityModel& m, std::span<const std::string> expected_names);

// ---------------------------------------------------------------------------
// Block model

struct BlockParams {
    double corridor_half_width = 0.5;  // m on each side of the shot line
    double defender_speed = 6.0;       // m/s
    double no_defender_margin = 99.0;  // sentinel when nobody can intercept
};

struct BlockFeatures {
    double corridor_density = 0.0;         // defenders in corridor per meter of shot
    double min_time_margin = 0.0;          // s, defender minus ball arrival, best defender
    double n_defenders_in_corridor = 0.0;

    static const std::vector<std::string>& names();
    std::array<double, 3> values() const { return {corridor_density, min_time_margin, n_defenders_in_corridor}; }
};

// Shot line runs from the shooter to the target's ground footprint (0, y).
// For every outfield defender the nearest point on that segment is the
// interception point; its margin is (defender time) - (ball time), so a
// negative margin means the defender gets there first.
BlockFeatures block_features(PitchPoint shooter, GoalPoint target, const GameState& state, const BlockParams& bp,
                             const DiveModelParams& dive);

double p_block(const BlockFeatures& f, const ProbabilityModel& m);

// ---------------------------------------------------------------------------
// Save model

// Which direction the keeper angle is measured against at the shooter.
enum class KeeperAngleMode {
    GoalCenter,  // keeper direction vs goal-center direction
    ShotLine,    // keeper direction vs direction to the shot target
};

struct SaveFeatureOptions {
    KeeperAngleMode angle_mode = KeeperAngleMode::ShotLine;
    ShadowOptions shadows{};
};

struct SaveFeatures {
    ShadowSet shadows{};
    double shot_distance = 0.0;     // m, shooter to goal center
    double shot_angle = 0.0;        // rad subtended by the posts at the shooter
    double gk_shooter_angle = 0.0;  // rad at the shooter, see KeeperAngleMode
    bool under_pressure = false;

    static const std::vector<std::string>& names();
    std::array<double, 7> values() const;
};

// Unsigned angle at `apex` between the directions to a and b, in [0, pi].
// Zero if either direction is degenerate.
double angle_between(PitchPoint apex, PitchPoint a, PitchPoint b);

SaveFeatures save_features(PitchPoint gk, PitchPoint shooter, GoalPoint target, const GameState& state,
                           const DiveModelParams& dive, const GoalConfig& goal, const SaveFeatureOptions& opts = {});

double p_save(const SaveFeatures& f, const ProbabilityModel& m);

// (1 - p_blocked) * (1 - p_saved_given_not_blocked). Throws InvalidArgument
// for inputs outside [0, 1].
double p_goal(double p_blocked, double p_saved_given_not_blocked);

ProbabilityModel default_block_model();
ProbabilityModel default_save_model();

// ---------------------------------------------------------------------------
// Training

struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;  // 0 or 1
};

struct FitOptions {
    int iterations = 3000;
    int checkpoint_every = 100;
    double l2 = 0.0;          // penalty on raw weights (not bias)
    std::uint64_t seed = 0;   // 0: zero init, otherwise small seeded jitter
};

struct FitResult {
    ProbabilityModel model;
    std::vector<double> loss_checkpoints;  // mean loss at iteration 0, every checkpoint, and the end
};

// Mean negative log-likelihood plus (l2 / 2) * |w|^2.
double logistic_loss(const ProbabilityModel& m, const Dataset& d, double l2 = 0.0);

// Gradient of logistic_loss: one entry per weight, then the bias.
std::vector<double> logistic_loss_gradient(const ProbabilityModel& m, const Dataset& d, double l2 = 0.0);

// Maximum-likelihood fit by full-batch gradient descent on standardized
// features with backtracking, so the loss never increases between steps.
// Throws TrainingError for empty or single-class data or non-finite features.
FitResult fit_logistic(const Dataset& d, const FitOptions& opts = {});

// ---------------------------------------------------------------------------
// Weights file: one `name<TAB>weight` line per feature, in schema order, then
// `__bias__<TAB>value`.

void export_model(std::ostream& out, const ProbabilityModel& m);
std::string export_model(const ProbabilityModel& m);
ProbabilityModel import_model(std::istream& in, std::span<const std::string> expected_names);
ProbabilityModel import_model_file(const std::string& path, std::span<const std::string> expected_names);

}  // namespace gkpos
