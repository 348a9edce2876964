#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gkpos/config.hpp"
#include "gkpos/evaluator.hpp"
#include "gkpos/match.hpp"

namespace gkpos {

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

// What-if request for the simulator: a full player placement plus an
// optional simulated goalkeeper position.
struct SimulationRequest {
    GameState state;
    PitchPoint goalkeeper{};                      // actual keeper
    std::optional<PitchPoint> simulated_goalkeeper;
    PitchPoint previous_goalkeeper{};             // run-model origin for suggestions
    double dt = 1.0;
    HeatmapGrid grid{};
};

struct SimulationResponse {
    PositionEvaluation actual;
    std::optional<PositionEvaluation> simulated;
    PitchPoint shooter{};
    GoalPoint red_target{};                   // least protected for the actual keeper
    std::optional<GoalPoint> green_target;    // least protected for the simulated keeper
    MoveDecision suggested;
    Heatmap heatmap;                          // for the simulated keeper when present
};

// Parse a /simulate body. Throws RequestError(400) for malformed JSON or
// wrong types and RequestError(422) for invalid placements.
class RequestError : public std::runtime_error {
public:
    RequestError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
    int status() const { return status_; }

private:
    int status_;
};

SimulationRequest parse_simulation_request(const std::string& body, const EngineConfig& cfg);
SimulationResponse simulate(const SimulationRequest& req, const EngineConfig& cfg);
nlohmann::json to_json(const SimulationResponse& r);

// Request handlers over immutable loaded data. Every method is const and
// safe to call concurrently.
class Service {
public:
    Service(EngineConfig cfg, std::vector<Match> matches);

    const EngineConfig& config() const { return cfg_; }

    ApiResponse get_config() const;
    ApiResponse list_matches() const;
    ApiResponse match_episodes(const std::string& match_id, std::size_t offset, std::optional<std::size_t> limit) const;
    ApiResponse episode(const std::string& episode_id) const;
    // `t` is the raw query value; missing or non-numeric gives 400.
    ApiResponse frame(const std::string& episode_id, const std::optional<std::string>& t) const;
    ApiResponse simulate(const std::string& body) const;

private:
    struct LoadedMatch {
        Match match;
        EngineConfig cfg;
        std::vector<Episode> episodes;
    };
    struct EpisodeRef {
        std::size_t match = 0;
        std::size_t episode = 0;
    };

    nlohmann::json episode_summary(const LoadedMatch& lm, const Episode& ep) const;

    EngineConfig cfg_;
    std::vector<LoadedMatch> matches_;
    std::map<std::string, std::size_t> match_index_;
    std::map<std::string, EpisodeRef> episode_index_;
};

ApiResponse error_response(int status, const std::string& message);

// HTTP/1.1 front end. Routes live under /api/v1; static UI assets, when a
// directory is given, are served from /.
class HttpServer {
public:
    HttpServer(const Service& service, std::optional<std::string> ui_dir = std::nullopt);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Returns the bound port (an ephemeral one when port == 0), or -1.
    int bind(const std::string& host, int port);
    // Blocks until stop() is called.
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace gkpos
