#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gkpos/field.hpp"
#include "gkpos/game_state.hpp"

namespace gkpos {

inline constexpr int kMatchSchemaVersion = 1;

enum class EventType { Pass, Carry, Shot, Clearance, Other };
enum class Team { Attacking, Defending };

std::string_view to_string(EventType t);
std::string_view to_string(Team t);

struct Event {
    std::string id;
    double timestamp = 0.0;  // s from kickoff
    EventType type = EventType::Other;
    Team team = Team::Attacking;
    PitchPoint ball{};
    bool under_pressure = false;
    std::optional<GameState> freeze_frame;

    friend bool operator==(const Event&, const Event&) = default;
};

struct MatchMeta {
    double pitch_length = 105.0;
    double pitch_width = 68.0;
    double goal_width = 7.32;
    double goal_height = 2.44;

    friend bool operator==(const MatchMeta&, const MatchMeta&) = default;
};

struct Match {
    std::string id;
    MatchMeta meta{};
    std::vector<Event> events;

    friend bool operator==(const Match&, const Match&) = default;
};

// Events are copied in timestamp order; the last one is a shot.
struct Episode {
    std::string id;
    std::vector<Event> events;
    double start = 0.0;
    double end = 0.0;

    double duration() const { return end - start; }
    const Event& shot() const { return events.back(); }
};

// Parse and validate a match document. Throws MatchFormatError naming the
// offending field (e.g. `events[3].freeze_frame.defenders[2]`), or the
// line/column for JSON syntax errors.
Match parse_match(std::string_view text);
Match match_from_json(const nlohmann::json& doc);
Match load_match(const std::string& path);

nlohmann::json to_json(const Match& m);
nlohmann::json to_json(const Event& e);
std::string serialize_match(const Match& m);
nlohmann::json to_json(const GameState& s);
// `where` prefixes error messages.
GameState game_state_from_json(const nlohmann::json& j, const std::string& where = "state");
nlohmann::json point_json(PitchPoint p);

inline constexpr double kEpisodeWindow = 15.0;  // s of buildup kept before a shot
inline constexpr double kEpisodeMaxDuration = 30.0;

// One episode per shot: the contiguous run of attacking-team events ending
// at the shot, cut to the kEpisodeWindow seconds before it and never reaching
// back to (or past) the previous shot.
std::vector<Episode> segment_episodes(const Match& m);

enum class Eligibility {
    Green,
    NoFreezeFrame,
    NoGoalkeeper,
    DefendingPossession,
    OutsideZone,
};

std::string_view to_string(Eligibility e);
inline bool is_green(Eligibility e) { return e == Eligibility::Green; }

// Green iff the freeze frame has a goalkeeper, the attacking team has the
// ball and the ball lies within zone_depth meters of the goal line.
Eligibility flag_event(const Event& e, double zone_depth);
std::vector<Eligibility> flag_eligibility(const Episode& ep, double zone_depth);

// Deterministic synthetic match with n_episodes shot buildups. Covers a
// keeper on the goal line, empty defenses, crowded boxes and every ineligibility
// reason. Keepers in the data move toward the ball more often than not.
Match generate_synthetic(std::uint64_t seed, int n_episodes);

}  // namespace gkpos
