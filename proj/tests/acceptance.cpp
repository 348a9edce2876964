// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"

#include "gkpos/analysis.hpp"
#include "gkpos/evaluator.hpp"
#include "gkpos/service.hpp"
#include "gkpos/shadows.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace gkpos;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

Outcome geometry_oracle() {
    constexpr int kConfigs = 100;
    constexpr std::size_t kSamples = 1000000;
    constexpr double kTol = 2e-3;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_tt = 0.0, worst_rr = 0.0, worst_ct = 0.0;

    for (int i = 0; i < kConfigs; ++i) {
        const Triangle2 a = oracle::random_triangle(rng);
        const Triangle2 b = oracle::random_triangle(rng);
        const double exact = convex_poly_intersection_area(to_polygon(a), to_polygon(b));
        const double mc = oracle::monte_carlo_area(
            oracle::overlap(oracle::bbox(a), oracle::bbox(b)),
            [&](PitchPoint p) { return oracle::in_triangle(p, a) && oracle::in_triangle(p, b); }, kSamples, rng);
        worst_tt = std::max(worst_tt, std::abs(exact - mc));
    }
    for (int i = 0; i < kConfigs; ++i) {
        auto rect = [&] {
            const double y0 = u(rng), y1 = u(rng), z0 = u(rng), z1 = u(rng);
            return RectYZ{std::min(y0, y1), std::max(y0, y1), std::min(z0, z1), std::max(z0, z1)};
        };
        const RectYZ a = rect(), b = rect();
        const double exact = rect_intersection_area(a, b);
        // Sample the union box so the hit rate is informative.
        const oracle::Box box{std::min(a.y0, b.y0), std::max(a.y1, b.y1), std::min(a.z0, b.z0), std::max(a.z1, b.z1)};
        auto inside = [](PitchPoint p, const RectYZ& r) { return p.x >= r.y0 && p.x <= r.y1 && p.y >= r.z0 && p.y <= r.z1; };
        const double mc = oracle::monte_carlo_area(
            box, [&](PitchPoint p) { return inside(p, a) && inside(p, b); }, kSamples, rng);
        worst_rr = std::max(worst_rr, std::abs(exact - mc));
    }
    std::uniform_real_distribution<double> ur(0.05, 0.6);
    for (int i = 0; i < kConfigs; ++i) {
        const Triangle2 t = oracle::random_triangle(rng);
        const Circle2 c{{u(rng), u(rng)}, ur(rng)};
        const double exact = circle_poly_intersection_area(c, to_polygon(t));
        const double mc = oracle::monte_carlo_area(
            oracle::overlap(oracle::bbox(c), oracle::bbox(t)),
            [&](PitchPoint p) { return oracle::in_circle(p, c) && oracle::in_triangle(p, t); }, kSamples, rng);
        worst_ct = std::max(worst_ct, std::abs(exact - mc));
    }
    const double elapsed = seconds_since(t0);
    const bool pass = worst_tt < kTol && worst_rr < kTol && worst_ct < kTol && elapsed < 120.0;
    return {pass, fmt("max |err| tri-tri %.2e, rect-rect %.2e, circle-tri %.2e (tol 2e-3); %.1f s (limit 120 s)",
                      worst_tt, worst_rr, worst_ct, elapsed)};
}

Outcome position_shadow_closed_form() {
    const GoalConfig goal;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ox(0.5, 31.5), oy(-30.0, 30.0), u(1e-6, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const PitchPoint o{ox(rng), oy(rng)};
        double a = u(rng), b = u(rng), c = u(rng);
        const double s = a + b + c;
        const PitchPoint gk = (a / s) * o + (b / s) * goal.right_post() + (c / s) * goal.left_post();
        // dist(A, goal line) / dist(O, goal line); the goal line is x = 0.
        worst = std::max(worst, std::abs(position_shadow(gk, o, goal) - gk.x / o.x));
    }
    return {worst < 1e-9, fmt("1000 states, max |err| %.2e (tol 1e-9)", worst)};
}

Outcome exact_endpoints() {
    const GoalConfig goal;
    const DiveModelParams dive;
    int failures = 0;
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ox(0.5, 31.5), oy(-30.0, 30.0), gy(-3.66, 3.66), ty(-3.46, 3.46),
        f(0.05, 0.95);
    for (int i = 0; i < 200; ++i) {
        const PitchPoint o{ox(rng), oy(rng)};
        if (position_shadow(o, o, goal) != 1.0) ++failures;
        if (position_shadow({0.0, gy(rng)}, o, goal) != 0.0) ++failures;
        const GoalPoint t{ty(rng), 1.0};
        const double k = f(rng);
        const PitchPoint on_line{(1 - k) * o.x, (1 - k) * o.y + k * t.y};
        if (dive_circle_radius(on_line, o, t, dive) < 1e-12 && dive_shadow(on_line, o, t, dive, goal) > 1e-12) ++failures;
    }
    // Exactly representable on-line point: shooter on axis, target at center.
    if (dive_shadow({5, 0}, {20, 0}, {0, 1}, dive, goal) != 0.0) ++failures;
    for (double s : {0.0, 0.3, 1.0}) {
        if (p_goal(1.0, s) != 0.0) ++failures;
    }
    if (p_goal(0.0, 0.0) != 1.0) ++failures;
    return {failures == 0, fmt("A=O -> 1, keeper on goal line -> 0, on shot line -> 0, p_goal endpoints; %d failures",
                               failures)};
}

Outcome dive_constants() {
    const DiveModelParams p;
    bool ok = p.reaction_time == 0.2 && p.jump_time == 0.5 && p.max_dive_time == 1.2 && p.vertical_bonus == 0.5;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ox(1.0, 31.5), oy(-20.0, 20.0), gx(0.0, 0.9), gy(-4.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const PitchPoint o{ox(rng), oy(rng)};
        const RectYZ r = dive_rect({gx(rng) * o.x, gy(rng)}, o, {0.0, 1.0}, p);
        ok = ok && r.z0 == 0.0 && r.z1 == p.keeper_height + 0.5;
    }
    const double cap = dive_reach(1.2, p);
    for (double t = 1.2; t <= 10.0; t += 0.1) ok = ok && dive_reach(t, p) == cap;
    for (double t = 0.25; t < 1.19; t += 0.05) ok = ok && dive_reach(t, p) < cap;
    ok = ok && cap == p.arm_reach + p.dive_speed * (p.max_dive_time - p.reaction_time);
    return {ok, fmt("rect top = %.2f m (height %.2f + 0.5), reach saturates at %.1f s with %.3f m", p.keeper_height + 0.5,
                    p.keeper_height, p.max_dive_time, cap)};
}

Outcome minimax_consistency() {
    const EngineConfig cfg;
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> dt(0.0, 2.5);
    int mismatches = 0, worse_than_stay = 0;
    for (int i = 0; i < 1000; ++i) {
        const GameState s = oracle::random_scene(rng);
        const PitchPoint gk = *s.goalkeeper;
        const PitchPoint shooter = s.attackers[*s.ball_carrier];
        std::vector<double> per;
        for (const GoalPoint& t : cfg.targets) {
            const double pb = p_block(block_features(shooter, t, s, cfg.block, cfg.dive), cfg.block_model);
            const double ps =
                p_save(save_features(gk, shooter, t, s, cfg.dive, cfg.goal, cfg.save_features), cfg.save_model);
            per.push_back((1.0 - pb) * (1.0 - ps));
        }
        const auto [best, idx] = oracle::brute_max(per);
        const PositionEvaluation ev = evaluate_position(gk, s, cfg);
        if (ev.metric != best || ev.worst_index != idx) ++mismatches;
        const MoveDecision d = best_move(gk, dt(rng), s, cfg);
        if (d.chosen().metric > d.candidates[kStay].metric) ++worse_than_stay;
    }
    return {mismatches == 0 && worse_than_stay == 0,
            fmt("1000 states: %d metric mismatches vs brute force, %d choices worse than stay", mismatches,
                worse_than_stay)};
}

Outcome mirror_symmetry() {
    const EngineConfig cfg;
    std::vector<std::size_t> mirror_target(cfg.targets.size());
    for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
        const GoalPoint m = mirrored(cfg.targets[i]);
        for (std::size_t j = 0; j < cfg.targets.size(); ++j) {
            if (cfg.targets[j] == m) mirror_target[i] = j;
        }
    }
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> dt(0.1, 2.0);
    double worst = 0.0;
    int direction_mismatch = 0, ties = 0;
    for (int i = 0; i < 500; ++i) {
        const GameState s = oracle::random_scene(rng);
        const GameState m = mirrored(s);
        const double step = dt(rng);
        const MoveDecision a = best_move(*s.goalkeeper, step, s, cfg);
        const MoveDecision b = best_move(*m.goalkeeper, step, m, cfg);
        for (std::size_t k = 0; k < kCandidateCount; ++k) {
            const auto& ca = a.candidates[k];
            const auto& cb = b.candidates[mirror_direction(k)];
            for (std::size_t t = 0; t < cfg.targets.size(); ++t) {
                const auto& x = ca.per_target[t];
                const auto& y = cb.per_target[mirror_target[t]];
                worst = std::max({worst, std::abs(x.p_block - y.p_block), std::abs(x.p_save - y.p_save),
                                  std::abs(x.p_goal - y.p_goal)});
            }
        }
        if (b.chosen_index != mirror_direction(a.chosen_index)) {
            // Only a genuine tie (mirror-image candidates equally good) may pick differently.
            const double gap = std::abs(b.candidates[mirror_direction(a.chosen_index)].metric - b.chosen().metric);
            if (gap <= 1e-9) {
                ++ties;
            } else {
                ++direction_mismatch;
            }
        }
    }
    return {worst <= 1e-9 && direction_mismatch == 0,
            fmt("500 states: max probability diff %.2e (tol 1e-9); %d unmirrored choices, %d exact ties", worst,
                direction_mismatch, ties)};
}

Outcome logistic_trainer() {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> u(-2.0, 2.0), p(0.0, 1.0);
    Dataset d;
    d.feature_names = {"a", "b", "c", "d"};
    // Large enough that sampling noise in the null fit stays well inside the tolerance.
    for (int i = 0; i < 20000; ++i) {
        std::vector<double> row{u(rng), u(rng) * 4.0 + 10.0, u(rng), p(rng) < 0.3 ? 1.0 : 0.0};
        const double z = -0.4 + 1.3 * row[0] - 0.2 * row[1] + 0.8 * row[3];
        d.labels.push_back(p(rng) < 1.0 / (1.0 + std::exp(-z)) ? 1 : 0);
        d.rows.push_back(std::move(row));
    }
    const FitResult fit = fit_logistic(d);

    double grad_err = 0.0;
    for (const ProbabilityModel& m : {fit.model, ProbabilityModel{d.feature_names, {0.5, -0.1, 0.3, -0.7}, 0.2}}) {
        const auto g = logistic_loss_gradient(m, d);
        const double h = 1e-6;
        for (std::size_t j = 0; j <= m.weights.size(); ++j) {
            ProbabilityModel up = m, dn = m;
            (j < m.weights.size() ? up.weights[j] : up.bias) += h;
            (j < m.weights.size() ? dn.weights[j] : dn.bias) -= h;
            const double fd = (logistic_loss(up, d) - logistic_loss(dn, d)) / (2 * h);
            grad_err = std::max(grad_err, std::abs(fd - g[j]));
        }
    }
    bool monotone = fit.loss_checkpoints.size() >= 2;
    for (std::size_t i = 1; i < fit.loss_checkpoints.size(); ++i) {
        monotone = monotone && fit.loss_checkpoints[i] <= fit.loss_checkpoints[i - 1];
    }

    Dataset shuffled = d;
    std::shuffle(shuffled.labels.begin(), shuffled.labels.end(), rng);
    const double base =
        std::accumulate(shuffled.labels.begin(), shuffled.labels.end(), 0.0) / static_cast<double>(shuffled.labels.size());
    const FitResult null_fit = fit_logistic(shuffled);
    double spread = 0.0;
    for (const auto& row : shuffled.rows) spread = std::max(spread, std::abs(null_fit.model.predict(row) - base));

    return {grad_err < 1e-5 && monotone && spread <= 0.05,
            fmt("gradient vs finite differences %.2e (tol 1e-5); loss nonincreasing over %zu checkpoints: %s; "
                "shuffled labels max |p - base| %.3f (tol 0.05)",
                grad_err, fit.loss_checkpoints.size(), monotone ? "yes" : "no", spread)};
}

Outcome figure6_reproduction() {
    const EngineConfig base;
    const Match m = generate_synthetic(7, 300);
    const EngineConfig cfg = config_for_match(base, m.meta);
    const auto decisions = match_decisions(m, cfg);
    if (decisions.size() < 500) return {false, fmt("only %zu eligible decisions (need >= 500)", decisions.size())};
    const DirectionHistogram h = move_distribution(decisions);
    const DivergenceReport r = compare_model_vs_actual(decisions);
    double actual_back = 0.0;
    for (std::size_t k = 0; k < kCandidateCount; ++k) {
        if (is_backward(k)) actual_back += r.actual[k];
    }
    return {h.backward_share() > 0.5 && r.total_variation > 0.1,
            fmt("%zu decisions; model backward share %.3f (> 0.5), observed %.3f; total variation %.3f (> 0.1)",
                decisions.size(), h.backward_share(), actual_back, r.total_variation)};
}

Outcome data_layer() {
    int roundtrip_failures = 0, episode_failures = 0, flag_failures = 0;
    std::size_t episodes = 0;
    for (int seed = 1; seed <= 100; ++seed) {
        const Match m = generate_synthetic(static_cast<std::uint64_t>(seed), 3 + seed % 8);
        const std::string text = serialize_match(m);
        const Match back = parse_match(text);
        if (!(back == m) || serialize_match(back) != text) ++roundtrip_failures;
        for (const auto& ep : segment_episodes(back)) {
            ++episodes;
            if (ep.events.empty() || ep.shot().type != EventType::Shot) ++episode_failures;
        }
    }
    const double depth = EngineConfig{}.eligible_zone_depth();
    const auto fixture = fixture::eligibility_fixture();
    for (const auto& f : fixture) {
        if (flag_event(f.event, depth) != f.expect) ++flag_failures;
    }
    return {roundtrip_failures == 0 && episode_failures == 0 && flag_failures == 0 && fixture.size() == 12,
            fmt("100 matches: %d round-trip failures; %zu episodes, %d not ending in a shot; %zu-event fixture, %d "
                "flag mismatches",
                roundtrip_failures, episodes, episode_failures, fixture.size(), flag_failures)};
}

json full_scene(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> px(0.0, 40.0), py(-30.0, 30.0), sx(4.0, 30.0), sy(-20.0, 20.0),
        gx(0.0, 6.0), gy(-3.5, 3.5);
    json defenders = json::array(), attackers = json::array();
    for (int i = 0; i < 10; ++i) defenders.push_back({px(rng), py(rng)});
    attackers.push_back({sx(rng), sy(rng)});
    for (int i = 0; i < 10; ++i) attackers.push_back({px(rng), py(rng)});
    return {{"state", {{"defenders", defenders}, {"attackers", attackers}, {"ball_carrier", 0}}},
            {"goalkeeper", {gx(rng), gy(rng)}},
            {"simulated_goalkeeper", {gx(rng), gy(rng)}},
            {"grid", {{"rows", 4}, {"cols", 12}}}};
}

Outcome service_contract() {
    const EngineConfig cfg;
    const Service service(cfg, {});
    HttpServer server(service);
    const int port = server.bind("127.0.0.1", 0);
    if (port <= 0) return {false, "could not bind an ephemeral port"};
    std::thread th([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    httplib::Client cli("127.0.0.1", port);

    std::mt19937_64 rng(17);
    // Stability: identical requests, identical bytes.
    const std::string body = full_scene(rng).dump();
    std::string first;
    int unstable = 0, errors = 0;
    for (int i = 0; i < 50; ++i) {
        auto res = cli.Post("/api/v1/simulate", body, "application/json");
        if (!res || res->status != 200) {
            ++errors;
            continue;
        }
        if (i == 0) first = res->body;
        if (res->body != first) ++unstable;
    }

    // Latency: 22 players, 12x4 grid, over HTTP.
    std::vector<double> ms;
    for (int i = 0; i < 200; ++i) {
        const std::string b = full_scene(rng).dump();
        const auto t0 = Clock::now();
        auto res = cli.Post("/api/v1/simulate", b, "application/json");
        ms.push_back(seconds_since(t0) * 1000.0);
        if (!res || res->status != 200) ++errors;
    }
    std::sort(ms.begin(), ms.end());
    const double p95 = ms[static_cast<std::size_t>(0.95 * static_cast<double>(ms.size())) - 1];

    // Equivalence with direct library calls.
    int mismatches = 0;
    for (int i = 0; i < 20; ++i) {
        const json req = full_scene(rng);
        auto res = cli.Post("/api/v1/simulate", req.dump(), "application/json");
        if (!res || res->status != 200) {
            ++errors;
            continue;
        }
        const json got = json::parse(res->body);
        GameState st = game_state_from_json(req["state"]);
        const PitchPoint gk{req["goalkeeper"][0].get<double>(), req["goalkeeper"][1].get<double>()};
        const PitchPoint sim{req["simulated_goalkeeper"][0].get<double>(), req["simulated_goalkeeper"][1].get<double>()};
        st.goalkeeper = gk;
        const PositionEvaluation actual = evaluate_position(gk, st, cfg);
        const PositionEvaluation simulated = evaluate_position(sim, st, cfg);
        const MoveDecision move = best_move(gk, cfg.simulator_dt, st, cfg);
        const Heatmap heat = goal_heatmap(sim, st, cfg.heatmap, cfg);
        bool same = got["actual"]["metric"] == actual.metric && got["simulated"]["metric"] == simulated.metric;
        for (std::size_t t = 0; t < actual.per_target.size(); ++t) {
            same = same && got["actual"]["per_target"][t]["p_goal"] == actual.per_target[t].p_goal &&
                   got["simulated"]["per_target"][t]["p_goal"] == simulated.per_target[t].p_goal;
        }
        same = same && got["red_line"]["to"]["y"] == least_protected_target(gk, st, cfg).y &&
               got["green_line"]["to"]["y"] == least_protected_target(sim, st, cfg).y &&
               got["suggested"]["chosen_index"] == move.chosen_index;
        for (int r = 0; r < heat.rows; ++r) {
            for (int c = 0; c < heat.cols; ++c) same = same && got["heatmap"]["values"][r][c] == heat.at(r, c);
        }
        if (!same) ++mismatches;
    }
    server.stop();
    th.join();
    return {errors == 0 && unstable == 0 && p95 < 100.0 && mismatches == 0,
            fmt("50 repeats: %d differing bodies; P95 %.2f ms over 200 requests (limit 100 ms); 20 scenes: %d "
                "mismatches vs library; %d request errors",
                unstable, p95, mismatches, errors)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"geometry oracle suite", geometry_oracle},
        {"position shadow closed form", position_shadow_closed_form},
        {"exact endpoint cases", exact_endpoints},
        {"dive constants", dive_constants},
        {"minimax consistency", minimax_consistency},
        {"mirror symmetry", mirror_symmetry},
        {"logistic trainer", logistic_trainer},
        {"direction distribution (synthetic corpus)", figure6_reproduction},
        {"data layer", data_layer},
        {"service contract", service_contract},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
