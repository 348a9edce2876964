#include "gkpos/analysis.hpp"

#include <cstdio>
#include <sstream>

#include "gkpos/errors.hpp"

namespace gkpos {

using nlohmann::json;

EngineConfig config_for_match(const EngineConfig& base, const MatchMeta& meta) {
    EngineConfig cfg = base;
    cfg.pitch.length = meta.pitch_length;
    cfg.pitch.width = meta.pitch_width;
    cfg.goal.width = meta.goal_width;
    cfg.goal.height = meta.goal_height;
    return cfg;
}

std::vector<MoveDecision> episode_decisions(const Episode& ep, const EngineConfig& cfg) {
    std::vector<MoveDecision> out;
    for (std::size_t i = 1; i < ep.events.size(); ++i) {
        const Event& prev = ep.events[i - 1];
        const Event& cur = ep.events[i];
        if (!is_green(flag_event(cur, cfg.eligible_zone_depth()))) continue;
        if (!prev.freeze_frame || !prev.freeze_frame->goalkeeper) continue;
        const PitchPoint from = *prev.freeze_frame->goalkeeper;
        const PitchPoint to = *cur.freeze_frame->goalkeeper;
        MoveDecision d = best_move(from, cur.timestamp - prev.timestamp, *cur.freeze_frame, cfg);
        d.actual_position = to;
        d.actual_direction = classify_move(from, to, d.radius);
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<MoveDecision> match_decisions(const Match& m, const EngineConfig& cfg) {
    std::vector<MoveDecision> out;
    for (const Episode& ep : segment_episodes(m)) {
        auto part = episode_decisions(ep, cfg);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

json goal_point_json(GoalPoint p) { return {{"y", p.y}, {"z", p.z}}; }

json to_json(const PositionEvaluation& ev) {
    json targets = json::array();
    for (const auto& t : ev.per_target) {
        targets.push_back({{"target", goal_point_json(t.target)},
                           {"p_block", t.p_block},
                           {"p_save", t.p_save},
                           {"p_goal", t.p_goal}});
    }
    return {{"position", point_json(ev.position)},
            {"per_target", targets},
            {"metric", ev.metric},
            {"worst_index", ev.worst_index},
            {"worst_target", goal_point_json(ev.worst_target())}};
}

json to_json(const MoveDecision& d) {
    json candidates = json::array();
    for (std::size_t i = 0; i < d.candidates.size(); ++i) {
        candidates.push_back({{"direction", std::string(direction_name(i))},
                              {"position", point_json(d.candidates[i].position)},
                              {"metric", d.candidates[i].metric},
                              {"worst_target", goal_point_json(d.candidates[i].worst_target())}});
    }
    json out = {{"previous", point_json(d.previous)},
                {"radius", d.radius},
                {"candidates", candidates},
                {"chosen_index", d.chosen_index},
                {"chosen_direction", std::string(direction_name(d.chosen_index))}};
    if (d.actual_position) out["actual_position"] = point_json(*d.actual_position);
    if (d.actual_direction) out["actual_direction"] = std::string(direction_name(*d.actual_direction));
    return out;
}

json to_json(const DirectionHistogram& h) {
    json model = json::object();
    for (std::size_t i = 0; i < kCandidateCount; ++i) {
        model[std::string(direction_name(i))] = {{"count", h.counts[i]}, {"frequency", h.frequencies[i]}};
    }
    json out = {{"decisions", h.total}, {"model", model}, {"model_backward_share", h.backward_share()}};
    if (h.actual_counts) {
        json actual = json::object();
        double back = 0.0;
        for (std::size_t i = 0; i < kCandidateCount; ++i) {
            actual[std::string(direction_name(i))] = {{"count", (*h.actual_counts)[i]},
                                                      {"frequency", (*h.actual_frequencies)[i]}};
            if (is_backward(i)) back += (*h.actual_frequencies)[i];
        }
        out["actual"] = actual;
        out["actual_backward_share"] = back;
    }
    return out;
}

json to_json(const DivergenceReport& r) {
    json rows = json::array();
    for (std::size_t i = 0; i < kCandidateCount; ++i) {
        rows.push_back({{"direction", std::string(direction_name(i))}, {"model", r.model[i]}, {"actual", r.actual[i]}});
    }
    return {{"directions", rows}, {"total_variation", r.total_variation}};
}

json analysis_report(const Match& m, const EngineConfig& base) {
    const EngineConfig cfg = config_for_match(base, m.meta);
    const auto episodes = segment_episodes(m);
    std::size_t green = 0;
    std::size_t events = 0;
    for (const auto& ep : episodes) {
        for (auto f : flag_eligibility(ep, cfg.eligible_zone_depth())) {
            ++events;
            if (is_green(f)) ++green;
        }
    }
    const auto decisions = match_decisions(m, cfg);
    json report = {{"match", m.id},
                   {"episodes", episodes.size()},
                   {"episode_events", events},
                   {"green_events", green},
                   {"decisions", decisions.size()}};
    if (decisions.empty()) {
        report["distribution"] = nullptr;
        report["comparison"] = nullptr;
        return report;
    }
    report["distribution"] = to_json(move_distribution(decisions));
    report["comparison"] = to_json(compare_model_vs_actual(decisions));
    return report;
}

std::string direction_chart_svg(const DirectionHistogram& h) {
    constexpr int kBarW = 28;
    constexpr int kGroupW = 80;
    constexpr int kPlotH = 200;
    constexpr int kLeft = 40;
    constexpr int kTop = 20;
    const int width = kLeft + kGroupW * static_cast<int>(kCandidateCount) + 20;
    const int height = kTop + kPlotH + 60;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + kPlotH << "\" x2=\"" << width - 10 << "\" y2=\""
       << kTop + kPlotH << "\" stroke=\"black\"/>\n";
    char buf[64];
    for (std::size_t i = 0; i < kCandidateCount; ++i) {
        const int x = kLeft + static_cast<int>(i) * kGroupW + 8;
        auto bar = [&](double f, int dx, const char* color) {
            const int bh = static_cast<int>(f * kPlotH + 0.5);
            os << "<rect x=\"" << x + dx << "\" y=\"" << kTop + kPlotH - bh << "\" width=\"" << kBarW
               << "\" height=\"" << bh << "\" fill=\"" << color << "\"/>\n";
            std::snprintf(buf, sizeof buf, "%.2f", f);
            os << "<text x=\"" << x + dx << "\" y=\"" << kTop + kPlotH - bh - 3 << "\">" << buf << "</text>\n";
        };
        bar(h.frequencies[i], 0, "#3b6fd8");
        if (h.actual_frequencies) bar((*h.actual_frequencies)[i], kBarW + 2, "#d83b3b");
        os << "<text x=\"" << x << "\" y=\"" << kTop + kPlotH + 16 << "\">" << direction_name(i) << "</text>\n";
    }
    os << "<text x=\"" << kLeft << "\" y=\"" << height - 12
       << "\"><tspan fill=\"#3b6fd8\">model</tspan> / <tspan fill=\"#d83b3b\">observed</tspan></text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace gkpos
