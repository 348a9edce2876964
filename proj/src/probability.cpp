#include "gkpos/probability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "gkpos/errors.hpp"

namespace gkpos {

namespace {

constexpr double kProbFloor = 1e-15;
constexpr const char* kBiasKey = "__bias__";

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double linear_score(const ProbabilityModel& m, std::span<const double> x) {
    double z = m.bias;
    for (std::size_t i = 0; i < x.size(); ++i) z += m.weights[i] * x[i];
    return z;
}

void check_dataset(const Dataset& d) {
    if (d.rows.size() != d.labels.size()) throw TrainingError("dataset rows and labels differ in length");
    if (d.rows.empty()) throw TrainingError("dataset is empty");
    for (const auto& row : d.rows) {
        if (row.size() != d.feature_names.size()) throw DimensionMismatch("dataset row has the wrong width");
        for (double v : row) {
            if (!std::isfinite(v)) throw TrainingError("dataset contains non-finite features");
        }
    }
    bool has0 = false;
    bool has1 = false;
    for (int y : d.labels) {
        if (y != 0 && y != 1) throw TrainingError("labels must be 0 or 1");
        (y == 1 ? has1 : has0) = true;
    }
    if (!has0 || !has1) throw TrainingError("dataset must contain both classes");
}

}  // namespace

double logistic(double z) {
    double p;
    if (z >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-z));
    } else {
        const double e = std::exp(z);
        p = e / (1.0 + e);
    }
    return std::clamp(p, kProbFloor, 1.0 - kProbFloor);
}

double ProbabilityModel::predict(std::span<const double> x) const {
    if (x.size() != weights.size()) {
        throw DimensionMismatch("model expects " + std::to_string(weights.size()) + " features, got " +
                                std::to_string(x.size()));
    }
    return logistic(linear_score(*this, x));
}

void validate_schema(const ProbabilityModel& m, std::span<const std::string> expected_names) {
    if (m.weights.size() != m.feature_names.size()) {
        throw DimensionMismatch("model has " + std::to_string(m.weights.size()) + " weights for " +
                                std::to_string(m.feature_names.size()) + " features");
    }
    if (m.feature_names.size() != expected_names.size()) {
        throw DimensionMismatch("model has " + std::to_string(m.feature_names.size()) + " features, schema expects " +
                                std::to_string(expected_names.size()));
    }
    for (std::size_t i = 0; i < expected_names.size(); ++i) {
        if (m.feature_names[i] != expected_names[i]) {
            throw ModelFormatError("feature " + std::to_string(i) + " is '" + m.feature_names[i] + "', expected '" +
                                   expected_names[i] + "'");
        }
    }
    for (double w : m.weights) {
        if (!std::isfinite(w)) throw ModelFormatError("model weight is not finite");
    }
    if (!std::isfinite(m.bias)) throw ModelFormatError("model bias is not finite");
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& BlockFeatures::names() {
    static const std::vector<std::string> n{"corridor_density", "min_time_margin", "n_defenders_in_corridor"};
    return n;
}

BlockFeatures block_features(PitchPoint shooter, GoalPoint target, const GameState& state, const BlockParams& bp,
                             const DiveModelParams& dive) {
    if (!(shooter.x > 0.0)) throw DegenerateProjection("block_features: shooter must be in front of the goal plane");
    const PitchPoint end{0.0, target.y};
    const double length = distance(shooter, end);

    BlockFeatures f;
    f.min_time_margin = bp.no_defender_margin;
    int in_corridor = 0;
    for (const PitchPoint& d : state.defenders) {
        const SegmentProjection proj = project_onto_segment(d, shooter, end);
        if (proj.distance <= bp.corridor_half_width) ++in_corridor;
        const double ball_time = proj.t * length / dive.ball_speed;
        const double defender_time = proj.distance / bp.defender_speed;
        f.min_time_margin = std::min(f.min_time_margin, defender_time - ball_time);
    }
    f.n_defenders_in_corridor = in_corridor;
    f.corridor_density = in_corridor / length;
    return f;
}

double p_block(const BlockFeatures& f, const ProbabilityModel& m) {
    const auto v = f.values();
    return m.predict(v);
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& SaveFeatures::names() {
    static const std::vector<std::string> n{"position_shadow", "goal_shadow", "dive_shadow",   "shot_distance",
                                            "shot_angle",      "gk_shooter_angle", "under_pressure"};
    return n;
}

std::array<double, 7> SaveFeatures::values() const {
    return {shadows.position_shadow, shadows.goal_shadow, shadows.dive_shadow, shot_distance, shot_angle,
            gk_shooter_angle,        under_pressure ? 1.0 : 0.0};
}

double angle_between(PitchPoint apex, PitchPoint a, PitchPoint b) {
    const PitchPoint u = a - apex;
    const PitchPoint v = b - apex;
    if (norm(u) == 0.0 || norm(v) == 0.0) return 0.0;
    return std::abs(std::atan2(cross(u, v), dot(u, v)));
}

SaveFeatures save_features(PitchPoint gk, PitchPoint shooter, GoalPoint target, const GameState& state,
                           const DiveModelParams& dive, const GoalConfig& goal, const SaveFeatureOptions& opts) {
    SaveFeatures f;
    f.shadows = shadow_set(gk, shooter, target, dive, goal, opts.shadows);
    f.shot_distance = distance(shooter, {0.0, 0.0});
    f.shot_angle = angle_between(shooter, goal.right_post(), goal.left_post());
    const PitchPoint reference =
        opts.angle_mode == KeeperAngleMode::GoalCenter ? PitchPoint{0.0, 0.0} : PitchPoint{0.0, target.y};
    f.gk_shooter_angle = angle_between(shooter, gk, reference);
    f.under_pressure = state.under_pressure;
    return f;
}

double p_save(const SaveFeatures& f, const ProbabilityModel& m) {
    const auto v = f.values();
    return m.predict(v);
}

double p_goal(double p_blocked, double p_saved_given_not_blocked) {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(p_blocked) || !in_unit(p_saved_given_not_blocked)) {
        throw InvalidArgument("p_goal: probabilities must lie in [0, 1]");
    }
    return (1.0 - p_blocked) * (1.0 - p_saved_given_not_blocked);
}

ProbabilityModel default_block_model() {
    return {BlockFeatures::names(), {3.0, -1.5, 1.0}, -1.0};
}

ProbabilityModel default_save_model() {
    // Hand-set; the angle term outweighs the near-side shrink of the dive circle.
    return {SaveFeatures::names(), {0.5, 0.5, 3.0, 0.06, -1.0, -12.0, 0.3}, -0.5};
}

// ---------------------------------------------------------------------------

double logistic_loss(const ProbabilityModel& m, const Dataset& d, double l2) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        const double z = linear_score(m, d.rows[i]);
        acc += softplus(z) - d.labels[i] * z;
    }
    double penalty = 0.0;
    for (double w : m.weights) penalty += w * w;
    return acc / static_cast<double>(d.rows.size()) + 0.5 * l2 * penalty;
}

std::vector<double> logistic_loss_gradient(const ProbabilityModel& m, const Dataset& d, double l2) {
    const std::size_t k = m.weights.size();
    std::vector<double> g(k + 1, 0.0);
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        const double z = linear_score(m, d.rows[i]);
        // Unclamped sigmoid so the gradient is exact.
        const double p = z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
        const double r = p - d.labels[i];
        for (std::size_t j = 0; j < k; ++j) g[j] += r * d.rows[i][j];
        g[k] += r;
    }
    const double n = static_cast<double>(d.rows.size());
    for (std::size_t j = 0; j < k; ++j) g[j] = g[j] / n + l2 * m.weights[j];
    g[k] /= n;
    return g;
}

FitResult fit_logistic(const Dataset& d, const FitOptions& opts) {
    check_dataset(d);
    const std::size_t k = d.feature_names.size();
    const double n = static_cast<double>(d.rows.size());

    // Standardize columns; constant columns keep scale 1 and end with weight 0.
    std::vector<double> mean(k, 0.0);
    std::vector<double> scale(k, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (const auto& row : d.rows) s += row[j];
        mean[j] = s / n;
        double v = 0.0;
        for (const auto& row : d.rows) v += (row[j] - mean[j]) * (row[j] - mean[j]);
        const double sd = std::sqrt(v / n);
        if (sd > 0.0) scale[j] = sd;
    }
    Dataset z{d.feature_names, d.rows, d.labels};
    for (auto& row : z.rows) {
        for (std::size_t j = 0; j < k; ++j) row[j] = (row[j] - mean[j]) / scale[j];
    }

    // Raw-space penalty l2*|w|^2/2 becomes l2*|v/scale|^2/2 in standardized space.
    auto to_raw = [&](const ProbabilityModel& sm) {
        ProbabilityModel raw{d.feature_names, std::vector<double>(k), sm.bias};
        for (std::size_t j = 0; j < k; ++j) {
            raw.weights[j] = sm.weights[j] / scale[j];
            raw.bias -= raw.weights[j] * mean[j];
        }
        return raw;
    };
    auto objective = [&](const ProbabilityModel& sm) { return logistic_loss(to_raw(sm), d, opts.l2); };

    ProbabilityModel sm{d.feature_names, std::vector<double>(k, 0.0), 0.0};
    if (opts.seed != 0) {
        std::mt19937_64 rng(opts.seed);
        for (auto& w : sm.weights) w = 0.01 * (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
    }

    // Lipschitz bound of the standardized loss gradient: (1 + k) / 4.
    double step = 4.0 / (1.0 + static_cast<double>(k));
    double loss = objective(sm);
    FitResult result;
    result.loss_checkpoints.push_back(loss);

    for (int it = 1; it <= opts.iterations; ++it) {
        std::vector<double> g = logistic_loss_gradient(sm, z, 0.0);
        for (std::size_t j = 0; j < k; ++j) g[j] += opts.l2 * sm.weights[j] / (scale[j] * scale[j]);

        ProbabilityModel next = sm;
        double next_loss = loss;
        for (int tries = 0; tries < 40; ++tries) {
            for (std::size_t j = 0; j < k; ++j) next.weights[j] = sm.weights[j] - step * g[j];
            next.bias = sm.bias - step * g[k];
            next_loss = objective(next);
            if (next_loss <= loss) break;
            step *= 0.5;
        }
        if (next_loss <= loss) {
            sm = std::move(next);
            loss = next_loss;
        }
        if (opts.checkpoint_every > 0 && it % opts.checkpoint_every == 0) result.loss_checkpoints.push_back(loss);
    }
    if (opts.checkpoint_every <= 0 || opts.iterations % opts.checkpoint_every != 0) {
        result.loss_checkpoints.push_back(loss);
    }
    result.model = to_raw(sm);
    return result;
}

// ---------------------------------------------------------------------------

void export_model(std::ostream& out, const ProbabilityModel& m) {
    if (m.weights.size() != m.feature_names.size()) throw DimensionMismatch("model names and weights differ");
    const auto old = out.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < m.weights.size(); ++i) out << m.feature_names[i] << '\t' << m.weights[i] << '\n';
    out << kBiasKey << '\t' << m.bias << '\n';
    out.precision(old);
}

std::string export_model(const ProbabilityModel& m) {
    std::ostringstream os;
    export_model(os, m);
    return os.str();
}

ProbabilityModel import_model(std::istream& in, std::span<const std::string> expected_names) {
    ProbabilityModel m;
    bool have_bias = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = "weights line " + std::to_string(lineno) + ": ";
        if (have_bias) throw ModelFormatError(where + "content after the bias line");
        const auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            throw ModelFormatError(where + "expected `name<TAB>value`");
        }
        const std::string name = line.substr(0, tab);
        const std::string text = line.substr(tab + 1);
        char* end = nullptr;
        const double value = std::strtod(text.c_str(), &end);
        if (name.empty() || text.empty() || end != text.c_str() + text.size() || !std::isfinite(value)) {
            throw ModelFormatError(where + "malformed entry");
        }
        if (name == kBiasKey) {
            m.bias = value;
            have_bias = true;
        } else {
            m.feature_names.push_back(name);
            m.weights.push_back(value);
        }
    }
    if (!have_bias) throw ModelFormatError("weights file has no __bias__ line");
    validate_schema(m, expected_names);
    return m;
}

ProbabilityModel import_model_file(const std::string& path, std::span<const std::string> expected_names) {
    std::ifstream in(path);
    if (!in) throw ModelFormatError("cannot open weights file: " + path);
    return import_model(in, expected_names);
}

}  // namespace gkpos
