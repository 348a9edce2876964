#include <algorithm>
#include <cmath>
#include <string>

#include "gkpos/errors.hpp"
#include "gkpos/match.hpp"

namespace gkpos {

namespace {

// SplitMix64: tiny, fast, and fully specified, so output is identical on
// every platform (std:: distributions are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }
    bool chance(double p) { return uniform() < p; }

private:
    std::uint64_t state_;
};

enum class Scenario { Normal, EmptyDefense, CrowdedBox, KeeperOnLine };

// Synthetic coordinates are rounded to centimeters, like tracking feeds.
double cm(double v) { return std::round(v * 100.0) / 100.0; }
PitchPoint cm(PitchPoint p) { return {cm(p.x), cm(p.y)}; }

PitchPoint clamp_field(PitchPoint p) { return {std::clamp(p.x, 0.5, 104.5), std::clamp(p.y, -33.5, 33.5)}; }

std::vector<PitchPoint> place_defenders(Rng& rng, Scenario sc, PitchPoint ball) {
    std::vector<PitchPoint> out;
    int n = 0;
    switch (sc) {
        case Scenario::EmptyDefense: n = 0; break;
        case Scenario::CrowdedBox: n = rng.integer(9, 10); break;
        default: n = rng.integer(3, 8); break;
    }
    for (int i = 0; i < n; ++i) {
        PitchPoint p;
        if (sc == Scenario::CrowdedBox) {
            p = {rng.uniform(2.0, 16.0), rng.uniform(-16.0, 16.0)};
        } else if (rng.chance(0.5)) {
            // Between the ball and the goal.
            const double t = rng.uniform(0.15, 0.9);
            p = {ball.x * t + rng.uniform(-2.0, 2.0), ball.y * t + rng.uniform(-6.0, 6.0)};
        } else {
            p = {rng.uniform(4.0, std::max(8.0, ball.x + 10.0)), rng.uniform(-25.0, 25.0)};
        }
        out.push_back(cm(clamp_field(p)));
    }
    return out;
}

std::vector<PitchPoint> place_attackers(Rng& rng, PitchPoint ball) {
    std::vector<PitchPoint> out{ball};
    const int n = rng.integer(2, 6);
    for (int i = 0; i < n; ++i) {
        out.push_back(cm(clamp_field({rng.uniform(6.0, std::max(12.0, ball.x + 15.0)), rng.uniform(-28.0, 28.0)})));
    }
    return out;
}

// Real keepers in the data step toward the ball most of the time, sometimes
// sideways, and rarely hold their ground.
PitchPoint move_keeper(Rng& rng, PitchPoint gk, PitchPoint ball, double dt) {
    const double reach = std::min(5.0 * dt, 10.0);
    PitchPoint dir = ball - gk;
    const double len = norm(dir);
    dir = len > 0.0 ? (1.0 / len) * dir : PitchPoint{1.0, 0.0};
    const double roll = rng.uniform();
    PitchPoint next = gk;
    if (roll < 0.65) {
        next = gk + rng.uniform(0.4, 0.9) * reach * dir;
    } else if (roll < 0.85) {
        const PitchPoint side = ball.y >= gk.y ? PitchPoint{0.0, 1.0} : PitchPoint{0.0, -1.0};
        next = gk + rng.uniform(0.4, 0.8) * reach * side;
    } else if (roll < 0.95) {
        next = gk + PitchPoint{rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05)};
    } else {
        next = gk + rng.uniform(0.4, 0.8) * reach * PitchPoint{-1.0, 0.0};
    }
    return {std::clamp(next.x, 0.0, 12.0), std::clamp(next.y, -6.0, 6.0)};
}

}  // namespace

Match generate_synthetic(std::uint64_t seed, int n_episodes) {
    if (n_episodes < 1) throw InvalidArgument("generate_synthetic: n_episodes must be >= 1");
    Rng rng(seed);
    Match m;
    m.id = "synthetic-" + std::to_string(seed);
    int next_id = 1;
    auto make_id = [&] { return "e" + std::to_string(next_id++); };

    double t = 0.0;
    for (int ep = 0; ep < n_episodes; ++ep) {
        // Fixed rotation guarantees every corner case appears in small corpora.
        Scenario sc = Scenario::Normal;
        switch (ep % 8) {
            case 1: sc = Scenario::KeeperOnLine; break;
            case 3: sc = Scenario::EmptyDefense; break;
            case 5: sc = Scenario::CrowdedBox; break;
            default: break;
        }
        t += rng.uniform(20.0, 40.0);

        // Defending-side possession before the buildup.
        const int n_def_events = rng.integer(0, 2);
        for (int i = 0; i < n_def_events; ++i) {
            Event e;
            e.id = make_id();
            e.timestamp = cm(t);
            e.type = rng.chance(0.5) ? EventType::Clearance : EventType::Pass;
            e.team = Team::Defending;
            e.ball = cm(PitchPoint{rng.uniform(10.0, 70.0), rng.uniform(-30.0, 30.0)});
            if (rng.chance(0.7)) {
                GameState s;
                s.goalkeeper = cm(PitchPoint{rng.uniform(1.0, 8.0), rng.uniform(-2.0, 2.0)});
                s.defenders = place_defenders(rng, Scenario::Normal, e.ball);
                s.defenders.push_back(e.ball);
                if (s.defenders.size() > 10) s.defenders.erase(s.defenders.begin());
                s.attackers = place_attackers(rng, e.ball);
                s.attackers.erase(s.attackers.begin());
                e.freeze_frame = s;
            }
            m.events.push_back(std::move(e));
            t += rng.uniform(1.5, 4.0);
        }

        const int n_build = rng.integer(3, 7);
        const PitchPoint start{rng.uniform(34.0, 48.0), rng.uniform(-25.0, 25.0)};
        const PitchPoint shot_at{rng.uniform(7.0, 26.0), rng.uniform(-14.0, 14.0)};
        PitchPoint gk = sc == Scenario::KeeperOnLine ? PitchPoint{0.0, rng.uniform(-1.0, 1.0)}
                                                     : PitchPoint{rng.uniform(1.0, 5.0), rng.uniform(-1.5, 1.5)};
        gk = cm(gk);
        double prev_t = t;
        for (int k = 0; k <= n_build; ++k) {
            const bool is_shot = k == n_build;
            const double frac = static_cast<double>(k) / n_build;
            PitchPoint ball = start + frac * (shot_at - start);
            if (!is_shot) ball = ball + PitchPoint{rng.uniform(-3.0, 3.0), rng.uniform(-4.0, 4.0)};
            ball = cm(clamp_field(ball));

            Event e;
            e.id = make_id();
            e.timestamp = cm(t);
            e.type = is_shot ? EventType::Shot : (rng.chance(0.6) ? EventType::Pass : EventType::Carry);
            e.team = Team::Attacking;
            e.ball = ball;

            // Keeper-on-line scenes keep the keeper on the line until the shot.
            if (k > 0 && sc != Scenario::KeeperOnLine) gk = cm(move_keeper(rng, gk, ball, e.timestamp - prev_t));

            const bool drop_frame = !is_shot && k > 0 && rng.chance(0.08);
            if (!drop_frame) {
                GameState s;
                if (!rng.chance(0.06)) s.goalkeeper = gk;
                s.defenders = place_defenders(rng, sc, ball);
                s.attackers = place_attackers(rng, ball);
                s.ball_carrier = 0;
                double nearest = 1e9;
                for (const auto& d : s.defenders) nearest = std::min(nearest, distance(d, ball));
                s.under_pressure = nearest < 2.0;
                e.under_pressure = s.under_pressure;
                e.freeze_frame = s;
            }
            m.events.push_back(std::move(e));
            prev_t = m.events.back().timestamp;
            t += rng.uniform(1.2, 2.8);
        }
    }
    return m;
}

}  // namespace gkpos
