#include "gkpos/match.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gkpos/errors.hpp"

namespace gkpos {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw MatchFormatError(where + ": " + what);
}

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required) {
    if (!j.is_object()) fail(where, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items()) {
        if (!ok.count(key)) fail(where, "unknown field '" + key + "'");
    }
    for (const char* key : required) {
        if (!j.contains(key)) fail(where, "missing field '" + std::string(key) + "'");
    }
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(where, "must be finite");
    return v;
}

bool boolean(const json& j, const std::string& where) {
    if (!j.is_boolean()) fail(where, "expected true or false");
    return j.get<bool>();
}

std::string string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

PitchPoint point(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) fail(where, "expected an [x, y] pair");
    return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

std::vector<PitchPoint> points(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of [x, y] pairs");
    std::vector<PitchPoint> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

EventType event_type(const std::string& s, const std::string& where) {
    if (s == "pass") return EventType::Pass;
    if (s == "carry") return EventType::Carry;
    if (s == "shot") return EventType::Shot;
    if (s == "clearance") return EventType::Clearance;
    if (s == "other") return EventType::Other;
    fail(where, "unknown event type '" + s + "'");
}

Team team(const std::string& s, const std::string& where) {
    if (s == "attacking") return Team::Attacking;
    if (s == "defending") return Team::Defending;
    fail(where, "team must be 'attacking' or 'defending'");
}

}  // namespace

std::string_view to_string(EventType t) {
    switch (t) {
        case EventType::Pass: return "pass";
        case EventType::Carry: return "carry";
        case EventType::Shot: return "shot";
        case EventType::Clearance: return "clearance";
        case EventType::Other: return "other";
    }
    return "other";
}

std::string_view to_string(Team t) { return t == Team::Attacking ? "attacking" : "defending"; }

std::string_view to_string(Eligibility e) {
    switch (e) {
        case Eligibility::Green: return "green";
        case Eligibility::NoFreezeFrame: return "no_freeze_frame";
        case Eligibility::NoGoalkeeper: return "no_goalkeeper";
        case Eligibility::DefendingPossession: return "defending_possession";
        case Eligibility::OutsideZone: return "outside_zone";
    }
    return "unknown";
}

json point_json(PitchPoint p) { return json::array({p.x, p.y}); }

GameState game_state_from_json(const json& j, const std::string& where) {
    require_keys(j, where, {"goalkeeper", "defenders", "attackers", "ball_carrier", "under_pressure"},
                 {"defenders", "attackers"});
    GameState s;
    if (j.contains("goalkeeper") && !j["goalkeeper"].is_null()) s.goalkeeper = point(j["goalkeeper"], where + ".goalkeeper");
    s.defenders = points(j["defenders"], where + ".defenders");
    s.attackers = points(j["attackers"], where + ".attackers");
    if (j.contains("ball_carrier") && !j["ball_carrier"].is_null()) {
        const json& bc = j["ball_carrier"];
        if (!bc.is_number_integer() || bc.get<long long>() < 0) fail(where + ".ball_carrier", "expected an index >= 0");
        s.ball_carrier = bc.get<std::size_t>();
    }
    if (j.contains("under_pressure")) s.under_pressure = boolean(j["under_pressure"], where + ".under_pressure");
    return s;
}

json to_json(const GameState& s) {
    json defenders = json::array();
    for (const auto& p : s.defenders) defenders.push_back(point_json(p));
    json attackers = json::array();
    for (const auto& p : s.attackers) attackers.push_back(point_json(p));
    return {
        {"goalkeeper", s.goalkeeper ? point_json(*s.goalkeeper) : json(nullptr)},
        {"defenders", defenders},
        {"attackers", attackers},
        {"ball_carrier", s.ball_carrier ? json(*s.ball_carrier) : json(nullptr)},
        {"under_pressure", s.under_pressure},
    };
}

Match match_from_json(const json& doc) {
    require_keys(doc, "match", {"schema_version", "id", "meta", "events"}, {"schema_version", "meta", "events"});
    if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kMatchSchemaVersion) {
        fail("schema_version", "unsupported (expected " + std::to_string(kMatchSchemaVersion) + ")");
    }
    Match m;
    if (doc.contains("id")) m.id = string(doc["id"], "id");

    const json& meta = doc["meta"];
    require_keys(meta, "meta", {"pitch_length", "pitch_width", "goal_width", "goal_height"},
                 {"pitch_length", "pitch_width", "goal_width", "goal_height"});
    m.meta.pitch_length = number(meta["pitch_length"], "meta.pitch_length");
    m.meta.pitch_width = number(meta["pitch_width"], "meta.pitch_width");
    m.meta.goal_width = number(meta["goal_width"], "meta.goal_width");
    m.meta.goal_height = number(meta["goal_height"], "meta.goal_height");
    if (m.meta.pitch_length <= 0 || m.meta.pitch_width <= 0 || m.meta.goal_width <= 0 || m.meta.goal_height <= 0) {
        fail("meta", "dimensions must be positive");
    }
    const PitchConfig pitch{m.meta.pitch_length, m.meta.pitch_width, PitchConfig{}.margin};

    const json& events = doc["events"];
    if (!events.is_array()) fail("events", "expected an array");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const std::string where = "events[" + std::to_string(i) + "]";
        const json& ej = events[i];
        require_keys(ej, where, {"id", "timestamp", "type", "team", "ball", "under_pressure", "freeze_frame"},
                     {"id", "timestamp", "type", "team", "ball"});
        Event e;
        e.id = string(ej["id"], where + ".id");
        if (e.id.empty()) fail(where + ".id", "must not be empty");
        if (!ids.insert(e.id).second) fail(where + ".id", "duplicate event id '" + e.id + "'");
        e.timestamp = number(ej["timestamp"], where + ".timestamp");
        if (e.timestamp < 0.0) fail(where + ".timestamp", "must be >= 0");
        if (!m.events.empty() && e.timestamp < m.events.back().timestamp) {
            fail(where + ".timestamp", "timestamps must be nondecreasing");
        }
        e.type = event_type(string(ej["type"], where + ".type"), where + ".type");
        e.team = team(string(ej["team"], where + ".team"), where + ".team");
        e.ball = point(ej["ball"], where + ".ball");
        if (!is_valid_point(e.ball, pitch)) fail(where + ".ball", "outside the pitch");
        if (ej.contains("under_pressure")) e.under_pressure = boolean(ej["under_pressure"], where + ".under_pressure");
        if (ej.contains("freeze_frame") && !ej["freeze_frame"].is_null()) {
            const std::string fw = where + ".freeze_frame";
            e.freeze_frame = game_state_from_json(ej["freeze_frame"], fw);
            try {
                validate(*e.freeze_frame, pitch);
            } catch (const InvalidArgument& err) {
                fail(fw, err.what());
            }
            if (e.team == Team::Attacking && !e.freeze_frame->ball_carrier) {
                fail(fw + ".ball_carrier", "attacking-team freeze frames must name the ball carrier");
            }
        }
        if (e.type == EventType::Shot && !e.freeze_frame) fail(where, "shot events must carry a freeze_frame");
        m.events.push_back(std::move(e));
    }
    return m;
}

Match parse_match(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports "line L, column C" in the message.
        throw MatchFormatError(std::string("syntax error: ") + e.what());
    }
    return match_from_json(doc);
}

Match load_match(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MatchFormatError("cannot open match file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_match(ss.str());
    } catch (const MatchFormatError& e) {
        throw MatchFormatError(path + ": " + e.what());
    }
}

json to_json(const Event& e) {
    return {
        {"id", e.id},
        {"timestamp", e.timestamp},
        {"type", std::string(to_string(e.type))},
        {"team", std::string(to_string(e.team))},
        {"ball", point_json(e.ball)},
        {"under_pressure", e.under_pressure},
        {"freeze_frame", e.freeze_frame ? to_json(*e.freeze_frame) : json(nullptr)},
    };
}

json to_json(const Match& m) {
    json events = json::array();
    for (const Event& e : m.events) events.push_back(to_json(e));
    return {
        {"schema_version", kMatchSchemaVersion},
        {"id", m.id},
        {"meta",
         {{"pitch_length", m.meta.pitch_length},
          {"pitch_width", m.meta.pitch_width},
          {"goal_width", m.meta.goal_width},
          {"goal_height", m.meta.goal_height}}},
        {"events", events},
    };
}

std::string serialize_match(const Match& m) { return to_json(m).dump(2) + "\n"; }

std::vector<Episode> segment_episodes(const Match& m) {
    std::vector<Episode> out;
    std::ptrdiff_t previous_shot = -1;
    for (std::size_t i = 0; i < m.events.size(); ++i) {
        const Event& shot = m.events[i];
        if (shot.type != EventType::Shot || shot.team != Team::Attacking) continue;
        std::size_t first = i;
        for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) - 1; j > previous_shot; --j) {
            const Event& e = m.events[static_cast<std::size_t>(j)];
            if (e.team != Team::Attacking || e.timestamp < shot.timestamp - kEpisodeWindow) break;
            first = static_cast<std::size_t>(j);
        }
        Episode ep;
        ep.id = (m.id.empty() ? std::string("match") : m.id) + "-e" + std::to_string(out.size() + 1);
        ep.events.assign(m.events.begin() + static_cast<std::ptrdiff_t>(first),
                         m.events.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        ep.start = ep.events.front().timestamp;
        ep.end = shot.timestamp;
        out.push_back(std::move(ep));
        previous_shot = static_cast<std::ptrdiff_t>(i);
    }
    return out;
}

Eligibility flag_event(const Event& e, double zone_depth) {
    if (!e.freeze_frame) return Eligibility::NoFreezeFrame;
    if (!e.freeze_frame->goalkeeper) return Eligibility::NoGoalkeeper;
    if (e.team != Team::Attacking) return Eligibility::DefendingPossession;
    if (!(e.ball.x > 0.0) || e.ball.x > zone_depth) return Eligibility::OutsideZone;
    return Eligibility::Green;
}

std::vector<Eligibility> flag_eligibility(const Episode& ep, double zone_depth) {
    std::vector<Eligibility> out;
    out.reserve(ep.events.size());
    for (const Event& e : ep.events) out.push_back(flag_event(e, zone_depth));
    return out;
}

}  // namespace gkpos
