// gkpos command-line front end: analysis reports, synthetic data, and the
// HTTP service.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gkpos/analysis.hpp"
#include "gkpos/config.hpp"
#include "gkpos/errors.hpp"
#include "gkpos/match.hpp"
#include "gkpos/service.hpp"

namespace {

gkpos::HttpServer* g_server = nullptr;

void handle_signal(int) {
    if (g_server) g_server->stop();
}

gkpos::EngineConfig engine_config(const std::string& path) {
    return path.empty() ? gkpos::EngineConfig{} : gkpos::load_config(path);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gkpos::Error("cannot write " + path);
    out << content;
    if (!out) throw gkpos::Error("failed writing " + path);
}

int run_analyze(const std::string& match_file, const std::string& report, const std::string& svg,
                const std::string& config) {
    const auto cfg = engine_config(config);
    const auto match = gkpos::load_match(match_file);
    const auto out = gkpos::analysis_report(match, cfg);
    if (report.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        write_file(report, out.dump(2) + "\n");
        std::cerr << "wrote " << report << "\n";
    }
    if (!svg.empty()) {
        const auto decisions = gkpos::match_decisions(match, gkpos::config_for_match(cfg, match.meta));
        if (decisions.empty()) throw gkpos::Error("no eligible decisions to plot");
        write_file(svg, gkpos::direction_chart_svg(gkpos::move_distribution(decisions)));
        std::cerr << "wrote " << svg << "\n";
    }
    return 0;
}

int run_eval_episode(const std::string& match_file, const std::string& episode_id, const std::string& config) {
    const auto base = engine_config(config);
    const auto match = gkpos::load_match(match_file);
    const auto cfg = gkpos::config_for_match(base, match.meta);
    for (const auto& ep : gkpos::segment_episodes(match)) {
        if (ep.id != episode_id) continue;
        nlohmann::json events = nlohmann::json::array();
        const auto flags = gkpos::flag_eligibility(ep, cfg.eligible_zone_depth());
        for (std::size_t i = 0; i < ep.events.size(); ++i) {
            const auto& e = ep.events[i];
            nlohmann::json row = {{"id", e.id},
                                  {"timestamp", e.timestamp},
                                  {"type", std::string(gkpos::to_string(e.type))},
                                  {"eligibility", std::string(gkpos::to_string(flags[i]))},
                                  {"evaluation", nullptr}};
            if (gkpos::is_green(flags[i])) {
                row["evaluation"] = gkpos::to_json(
                    gkpos::evaluate_position(*e.freeze_frame->goalkeeper, *e.freeze_frame, cfg));
            }
            events.push_back(std::move(row));
        }
        nlohmann::json decisions = nlohmann::json::array();
        for (const auto& d : gkpos::episode_decisions(ep, cfg)) decisions.push_back(gkpos::to_json(d));
        const nlohmann::json out = {{"episode", ep.id},
                                    {"start", ep.start},
                                    {"end", ep.end},
                                    {"events", events},
                                    {"decisions", decisions}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    throw gkpos::NotFound("unknown episode '" + episode_id + "'");
}

int run_serve(const std::vector<std::string>& files, std::optional<int> port, const std::string& host,
              const std::string& ui_dir, const std::string& config) {
    std::vector<gkpos::Match> matches;
    for (const auto& f : files) matches.push_back(gkpos::load_match(f));
    const gkpos::Service service(engine_config(config), std::move(matches));

    int listen_port = 8080;
    if (const char* env = std::getenv("PORT")) listen_port = std::stoi(env);
    if (port) listen_port = *port;

    gkpos::HttpServer server(service, ui_dir.empty() ? std::nullopt : std::optional<std::string>(ui_dir));
    const int bound = server.bind(host, listen_port);
    if (bound < 0) throw gkpos::Error("cannot bind " + host + ":" + std::to_string(listen_port));
    g_server = &server;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cerr << "serving " << files.size() << " match file(s) on http://" << host << ":" << bound << "\n";
    const bool ok = server.listen_after_bind();
    g_server = nullptr;
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Goalkeeper positioning evaluation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config;
    app.add_option("--config", config, "Engine configuration file (JSON)");

    auto* analyze = app.add_subcommand("analyze", "Model vs observed keeper move distributions for a match");
    std::string analyze_file, report, svg;
    analyze->add_option("match-file", analyze_file)->required()->check(CLI::ExistingFile);
    analyze->add_option("--report", report, "Write the JSON report here instead of stdout");
    analyze->add_option("--svg", svg, "Also write a direction histogram chart (SVG)");

    auto* serve = app.add_subcommand("serve", "Serve the HTTP API (and UI assets)");
    std::vector<std::string> serve_files;
    std::optional<int> port;
    std::string host = "127.0.0.1";
    std::string ui_dir;
    serve->add_option("match-file", serve_files)->required()->check(CLI::ExistingFile);
    serve->add_option("--port", port, "Listen port (default: $PORT or 8080)");
    serve->add_option("--host", host, "Listen address");
    serve->add_option("--ui-dir", ui_dir, "Directory of static UI assets served at /");

    auto* gen = app.add_subcommand("gen-synthetic", "Write a deterministic synthetic match file");
    std::uint64_t seed = 1;
    int episodes = 100;
    std::string out;
    gen->add_option("--seed", seed, "Random seed");
    gen->add_option("--episodes", episodes, "Number of shot episodes")->check(CLI::PositiveNumber);
    gen->add_option("--out", out, "Output path")->required();

    auto* eval = app.add_subcommand("eval-episode", "Evaluate every eligible event of one episode");
    std::string eval_file, episode_id;
    eval->add_option("match-file", eval_file)->required()->check(CLI::ExistingFile);
    eval->add_option("episode-id", episode_id)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return run_analyze(analyze_file, report, svg, config);
        if (*serve) return run_serve(serve_files, port, host, ui_dir, config);
        if (*gen) {
            write_file(out, gkpos::serialize_match(gkpos::generate_synthetic(seed, episodes)));
            std::cerr << "wrote " << out << "\n";
            return 0;
        }
        if (*eval) return run_eval_episode(eval_file, episode_id, config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
