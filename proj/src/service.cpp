#include "gkpos/service.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <set>

#include "httplib.h"

#include "gkpos/analysis.hpp"
#include "gkpos/errors.hpp"

namespace gkpos {

using nlohmann::json;

namespace {

PitchPoint request_point(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw RequestError(400, std::string(where) + ": expected an [x, y] pair of numbers");
    }
    const PitchPoint p{j[0].get<double>(), j[1].get<double>()};
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw RequestError(400, std::string(where) + ": not finite");
    return p;
}

void check_placement(PitchPoint p, const EngineConfig& cfg, const char* where) {
    if (!is_valid_point(p, cfg.pitch)) throw RequestError(422, std::string(where) + " is outside the pitch");
    if (p.x < 0.0) throw RequestError(422, std::string(where) + " is behind the goal line");
}

json heatmap_json(const Heatmap& h) {
    json rows = json::array();
    for (int r = 0; r < h.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < h.cols; ++c) row.push_back(h.at(r, c));
        rows.push_back(row);
    }
    return {{"rows", h.rows}, {"cols", h.cols}, {"values", rows}};
}

}  // namespace

ApiResponse error_response(int status, const std::string& message) {
    return {status, {{"error", message}, {"status", status}}};
}

// ---------------------------------------------------------------------------
// Simulator

SimulationRequest parse_simulation_request(const std::string& body, const EngineConfig& cfg) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error& e) {
        throw RequestError(400, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw RequestError(400, "request body must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        static const std::set<std::string> known{"state", "goalkeeper", "simulated_goalkeeper", "previous_goalkeeper",
                                                 "dt", "grid"};
        if (!known.count(key)) throw RequestError(400, "unknown field '" + key + "'");
    }
    if (!j.contains("state")) throw RequestError(400, "missing field 'state'");

    SimulationRequest req;
    try {
        req.state = game_state_from_json(j["state"], "state");
    } catch (const MatchFormatError& e) {
        throw RequestError(400, e.what());
    }
    try {
        validate(req.state, cfg.pitch);
    } catch (const InvalidArgument& e) {
        throw RequestError(422, std::string("state: ") + e.what());
    }

    if (j.contains("goalkeeper") && !j["goalkeeper"].is_null()) {
        req.goalkeeper = request_point(j["goalkeeper"], "goalkeeper");
        req.state.goalkeeper = req.goalkeeper;
    } else if (req.state.goalkeeper) {
        req.goalkeeper = *req.state.goalkeeper;
    } else {
        throw RequestError(422, "no goalkeeper position given");
    }
    check_placement(req.goalkeeper, cfg, "goalkeeper");
    if (req.state.defenders.size() + 1 > kMaxPlayersPerSide) {
        throw RequestError(422, "defending side has more than 11 players");
    }

    if (j.contains("simulated_goalkeeper") && !j["simulated_goalkeeper"].is_null()) {
        req.simulated_goalkeeper = request_point(j["simulated_goalkeeper"], "simulated_goalkeeper");
        check_placement(*req.simulated_goalkeeper, cfg, "simulated_goalkeeper");
    }
    req.previous_goalkeeper = req.goalkeeper;
    if (j.contains("previous_goalkeeper") && !j["previous_goalkeeper"].is_null()) {
        req.previous_goalkeeper = request_point(j["previous_goalkeeper"], "previous_goalkeeper");
        check_placement(req.previous_goalkeeper, cfg, "previous_goalkeeper");
    }

    req.dt = cfg.simulator_dt;
    if (j.contains("dt")) {
        if (!j["dt"].is_number()) throw RequestError(400, "dt: expected a number");
        req.dt = j["dt"].get<double>();
        if (!(req.dt >= 0.0) || !std::isfinite(req.dt)) throw RequestError(422, "dt must be finite and >= 0");
    }

    req.grid = cfg.heatmap;
    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (!g.is_object()) throw RequestError(400, "grid: expected an object");
        for (const char* key : {"rows", "cols"}) {
            if (!g.contains(key)) continue;
            if (!g[key].is_number_integer()) throw RequestError(400, std::string("grid.") + key + ": expected an integer");
        }
        if (g.contains("rows")) req.grid.rows = g["rows"].get<int>();
        if (g.contains("cols")) req.grid.cols = g["cols"].get<int>();
        if (req.grid.rows < 1 || req.grid.cols < 1 || req.grid.rows > 100 || req.grid.cols > 100) {
            throw RequestError(422, "grid must be between 1x1 and 100x100");
        }
    }

    try {
        check_eligible(req.state, cfg);
    } catch (const IneligibleState& e) {
        throw RequestError(422, e.what());
    }
    return req;
}

SimulationResponse simulate(const SimulationRequest& req, const EngineConfig& cfg) {
    SimulationResponse r;
    r.shooter = shooter_position(req.state);
    r.actual = evaluate_position(req.goalkeeper, req.state, cfg);
    r.red_target = r.actual.worst_target();
    if (req.simulated_goalkeeper) {
        r.simulated = evaluate_position(*req.simulated_goalkeeper, req.state, cfg);
        r.green_target = r.simulated->worst_target();
    }
    r.suggested = best_move(req.previous_goalkeeper, req.dt, req.state, cfg);
    r.heatmap = goal_heatmap(req.simulated_goalkeeper.value_or(req.goalkeeper), req.state, req.grid, cfg);
    return r;
}

json to_json(const SimulationResponse& r) {
    json out = {
        {"actual", to_json(r.actual)},
        {"simulated", r.simulated ? to_json(*r.simulated) : json(nullptr)},
        {"red_line", {{"from", point_json(r.shooter)}, {"to", goal_point_json(r.red_target)}}},
        {"green_line",
         r.green_target ? json{{"from", point_json(r.shooter)}, {"to", goal_point_json(*r.green_target)}}
                        : json(nullptr)},
        {"suggested", to_json(r.suggested)},
        {"heatmap", heatmap_json(r.heatmap)},
    };
    out["heatmap"]["goalkeeper"] = r.simulated ? "simulated" : "actual";
    return out;
}

// ---------------------------------------------------------------------------
// Service

Service::Service(EngineConfig cfg, std::vector<Match> matches) : cfg_(std::move(cfg)) {
    validate(cfg_);
    for (auto& m : matches) {
        LoadedMatch lm;
        lm.cfg = config_for_match(cfg_, m.meta);
        lm.match = std::move(m);
        if (lm.match.id.empty()) lm.match.id = "match" + std::to_string(matches_.size() + 1);
        if (match_index_.count(lm.match.id)) throw InvalidArgument("duplicate match id '" + lm.match.id + "'");
        lm.episodes = segment_episodes(lm.match);
        const std::size_t mi = matches_.size();
        match_index_[lm.match.id] = mi;
        for (std::size_t e = 0; e < lm.episodes.size(); ++e) episode_index_[lm.episodes[e].id] = {mi, e};
        matches_.push_back(std::move(lm));
    }
}

ApiResponse Service::get_config() const { return {200, to_json(cfg_)}; }

ApiResponse Service::list_matches() const {
    json out = json::array();
    for (const auto& lm : matches_) {
        out.push_back({{"id", lm.match.id},
                       {"events", lm.match.events.size()},
                       {"episodes", lm.episodes.size()},
                       {"meta",
                        {{"pitch_length", lm.match.meta.pitch_length},
                         {"pitch_width", lm.match.meta.pitch_width},
                         {"goal_width", lm.match.meta.goal_width},
                         {"goal_height", lm.match.meta.goal_height}}}});
    }
    return {200, out};
}

json Service::episode_summary(const LoadedMatch& lm, const Episode& ep) const {
    std::size_t green = 0;
    for (auto f : flag_eligibility(ep, lm.cfg.eligible_zone_depth())) green += is_green(f) ? 1 : 0;
    return {{"id", ep.id},
            {"match", lm.match.id},
            {"start", ep.start},
            {"end", ep.end},
            {"duration", ep.duration()},
            {"events", ep.events.size()},
            {"green_events", green},
            {"shot_event", ep.shot().id}};
}

ApiResponse Service::match_episodes(const std::string& match_id, std::size_t offset,
                                    std::optional<std::size_t> limit) const {
    const auto it = match_index_.find(match_id);
    if (it == match_index_.end()) return error_response(404, "unknown match '" + match_id + "'");
    const LoadedMatch& lm = matches_[it->second];
    const std::size_t total = lm.episodes.size();
    const std::size_t begin = std::min(offset, total);
    const std::size_t end = limit ? std::min(total, begin + *limit) : total;
    json items = json::array();
    for (std::size_t i = begin; i < end; ++i) items.push_back(episode_summary(lm, lm.episodes[i]));
    return {200,
            {{"match", match_id},
             {"total", total},
             {"offset", begin},
             {"limit", limit ? json(*limit) : json(nullptr)},
             {"episodes", items}}};
}

ApiResponse Service::episode(const std::string& episode_id) const {
    const auto it = episode_index_.find(episode_id);
    if (it == episode_index_.end()) return error_response(404, "unknown episode '" + episode_id + "'");
    const LoadedMatch& lm = matches_[it->second.match];
    const Episode& ep = lm.episodes[it->second.episode];
    json body = episode_summary(lm, ep);
    json events = json::array();
    const auto flags = flag_eligibility(ep, lm.cfg.eligible_zone_depth());
    for (std::size_t i = 0; i < ep.events.size(); ++i) {
        json e = to_json(ep.events[i]);
        e["eligibility"] = std::string(to_string(flags[i]));
        e["color"] = is_green(flags[i]) ? "green" : "black";
        events.push_back(std::move(e));
    }
    body["event_list"] = events;
    return {200, body};
}

ApiResponse Service::frame(const std::string& episode_id, const std::optional<std::string>& t_text) const {
    const auto it = episode_index_.find(episode_id);
    if (it == episode_index_.end()) return error_response(404, "unknown episode '" + episode_id + "'");
    if (!t_text) return error_response(400, "query parameter 't' is required");
    double t = 0.0;
    const auto* first = t_text->data();
    const auto* last = first + t_text->size();
    const auto [ptr, ec] = std::from_chars(first, last, t);
    if (ec != std::errc() || ptr != last || !std::isfinite(t)) return error_response(400, "t must be a number");

    const LoadedMatch& lm = matches_[it->second.match];
    const Episode& ep = lm.episodes[it->second.episode];
    if (t < ep.start || t > ep.end) {
        return error_response(422, "t is outside the episode [" + std::to_string(ep.start) + ", " +
                                       std::to_string(ep.end) + "]");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < ep.events.size(); ++i) {
        if (ep.events[i].timestamp <= t) idx = i;
    }
    // Latest freeze frame at or before the event (some events carry none).
    std::optional<std::size_t> frame_idx;
    for (std::size_t i = 0; i <= idx; ++i) {
        if (ep.events[i].freeze_frame) frame_idx = i;
    }
    const Event& ev = ep.events[idx];
    const Eligibility flag = flag_event(ev, lm.cfg.eligible_zone_depth());

    json body = {{"episode", ep.id},
                 {"t", t},
                 {"event_index", idx},
                 {"event", to_json(ev)},
                 {"eligibility", std::string(to_string(flag))},
                 {"color", is_green(flag) ? "green" : "black"},
                 {"frame_event_index", frame_idx ? json(*frame_idx) : json(nullptr)},
                 {"frame", frame_idx ? to_json(*ep.events[*frame_idx].freeze_frame) : json(nullptr)},
                 {"evaluation", nullptr}};
    if (is_green(flag)) {
        const GameState& state = *ev.freeze_frame;
        const PitchPoint gk = *state.goalkeeper;
        json evaluation = to_json(evaluate_position(gk, state, lm.cfg));
        evaluation["least_protected"] = evaluation["worst_target"];
        evaluation["suggested"] = nullptr;
        if (idx > 0) {
            const Event& prev = ep.events[idx - 1];
            if (prev.freeze_frame && prev.freeze_frame->goalkeeper) {
                evaluation["suggested"] =
                    to_json(best_move(*prev.freeze_frame->goalkeeper, ev.timestamp - prev.timestamp, state, lm.cfg));
            }
        }
        body["evaluation"] = std::move(evaluation);
    }
    return {200, body};
}

ApiResponse Service::simulate(const std::string& body) const {
    try {
        const SimulationRequest req = parse_simulation_request(body, cfg_);
        return {200, to_json(gkpos::simulate(req, cfg_))};
    } catch (const RequestError& e) {
        return error_response(e.status(), e.what());
    } catch (const Error& e) {
        return error_response(422, e.what());
    }
}

// ---------------------------------------------------------------------------
// HTTP

struct HttpServer::Impl {
    explicit Impl(const Service& s) : service(s) {}
    const Service& service;
    httplib::Server server;
};

namespace {

void reply(httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
}

std::optional<std::size_t> size_param(const httplib::Request& req, const char* key) {
    if (!req.has_param(key)) return std::nullopt;
    const std::string v = req.get_param_value(key);
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw RequestError(400, std::string(key) + " must be an integer >= 0");
    return out;
}

}  // namespace

HttpServer::HttpServer(const Service& service, std::optional<std::string> ui_dir)
    : impl_(std::make_unique<Impl>(service)) {
    auto& srv = impl_->server;
    const Service* svc = &service;

    srv.Get("/api/v1/config", [svc](const httplib::Request&, httplib::Response& res) { reply(res, svc->get_config()); });
    srv.Get("/api/v1/matches", [svc](const httplib::Request&, httplib::Response& res) { reply(res, svc->list_matches()); });
    srv.Get(R"(/api/v1/matches/([^/]+)/episodes)", [svc](const httplib::Request& req, httplib::Response& res) {
        try {
            const auto offset = size_param(req, "offset").value_or(0);
            reply(res, svc->match_episodes(req.matches[1], offset, size_param(req, "limit")));
        } catch (const RequestError& e) {
            reply(res, error_response(e.status(), e.what()));
        }
    });
    srv.Get(R"(/api/v1/episodes/([^/]+)/frames)", [svc](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::string> t;
        if (req.has_param("t")) t = req.get_param_value("t");
        reply(res, svc->frame(req.matches[1], t));
    });
    srv.Get(R"(/api/v1/episodes/([^/]+))", [svc](const httplib::Request& req, httplib::Response& res) {
        reply(res, svc->episode(req.matches[1]));
    });
    srv.Post("/api/v1/simulate", [svc](const httplib::Request& req, httplib::Response& res) {
        reply(res, svc->simulate(req.body));
    });

    bool mounted = false;
    if (ui_dir && std::filesystem::is_directory(*ui_dir)) mounted = srv.set_mount_point("/", *ui_dir);
    if (!mounted) {
        srv.Get("/", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(
                "<!doctype html><title>gkpos</title><h1>gkpos API</h1>"
                "<p>UI assets are not installed. API root: <a href=\"/api/v1/matches\">/api/v1/matches</a>, "
                "<a href=\"/api/v1/config\">/api/v1/config</a>.</p>",
                "text/html");
        });
    }
    srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            res.set_content(error_response(res.status, httplib::status_message(res.status)).body.dump(),
                            "application/json");
        }
    });
    srv.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        reply(res, error_response(500, what));
    });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace gkpos
