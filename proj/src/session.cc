// Copyright 2026 The qga Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qga/session.h"

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "qga/codec.h"

namespace qga {

using nlohmann::json;

namespace {

ApiResponse error(int status, const std::string &message) {
    return {status, json{{"error", message}}.dump()};
}

json scoreboard_json(const Scoreboard &s) {
    return {
        {"trials_completed", s.trials_completed},
        {"accepted", s.accepted},
        {"wins_among_accepted", s.wins_among_accepted},
    };
}

std::string random_token() {
    static std::mutex mu;
    static std::random_device rd;
    std::lock_guard<std::mutex> lock(mu);
    std::string out;
    static const char *hex = "0123456789abcdef";
    for (int i = 0; i < 4; i++) {
        uint32_t x = rd();
        for (int j = 0; j < 8; j++) {
            out.push_back(hex[(x >> (4 * j)) & 0xf]);
        }
    }
    return out;
}

uint64_t random_seed() {
    static std::mutex mu;
    static std::random_device rd;
    std::lock_guard<std::mutex> lock(mu);
    return (static_cast<uint64_t>(rd()) << 32) | rd();
}

int status_for(IllegalMove::Reason r) {
    switch (r) {
        case IllegalMove::Reason::kWrongTurn:
        case IllegalMove::Reason::kTerminal:
            return 409;
        default:
            return 422;
    }
}

}  // namespace

std::string render_view_response(
    const std::string &session_id, uint64_t trial_index, const RoleView &current,
    const std::optional<RoleView> &last_trial, const Scoreboard &scoreboard) {
    json out;
    out["session_id"] = session_id;
    out["trial"] = trial_index;
    out["role"] = std::string(to_string(current.role));
    out["to_move"] = current.to_move ? json(std::string(to_string(*current.to_move))) : json(nullptr);
    out["your_turn"] = current.to_move == current.role;
    out["view"] = to_json(current);
    out["last_trial"] = last_trial ? to_json(*last_trial) : json(nullptr);
    out["scoreboard"] = scoreboard_json(scoreboard);
    return out.dump();
}

struct SessionManager::Session {
    std::mutex mu;
    std::string id;
    GameKind kind = GameKind::kThreeBox;
    GameConfig config;
    uint64_t seed = 0;
    bool series = true;
    bool closed = false;
    std::map<std::string, Role> token_roles;
    std::string auditor_token;
    std::set<Role> humans;
    std::map<Role, Policy> engine;

    uint64_t trial_index = 0;
    RandomStream rng{0, 0};
    GameState state;
    std::map<Role, RoleView> last_views;
    Scoreboard score;
    std::vector<json> completed;
    std::optional<std::string> persist_path;

    void start_trial() {
        rng = RandomStream(seed, trial_index);
        state = new_game(kind, config, rng);
        state.game_id = trial_index;
    }

    void finish_trial() {
        auto out = payoff(state);
        score.trials_completed++;
        if (out.counted) {
            score.accepted++;
            score.wins_among_accepted += out.win;
        }
        json record = audit_json(state);
        record["trial"] = trial_index;
        record["rng_draws"] = rng.draws();
        if (persist_path) {
            std::ofstream f(*persist_path, std::ios::app);
            f << json{{"session_id", id}, {"seed", seed}, {"record", record}}.dump() << "\n";
        }
        completed.push_back(std::move(record));
        for (Role r : roles_of(kind)) {
            last_views[r] = view(state, r);
        }
    }

    /// Engine roles move until a human must act or the trial ends; in
    /// series mode a finished trial is recorded and the next one starts.
    void advance() {
        for (;;) {
            while (!is_terminal(state)) {
                Role r = *to_move(state);
                if (humans.count(r)) {
                    return;
                }
                Move m = engine.at(r)(view(state, r), rng);
                state = apply_move(state, r, m, rng);
            }
            finish_trial();
            if (!series) {
                return;
            }
            trial_index++;
            start_trial();
        }
    }

    std::string render(Role role) const {
        std::optional<RoleView> last;
        if (auto it = last_views.find(role); it != last_views.end()) {
            last = it->second;
        }
        return render_view_response(id, state.game_id, view(state, role), last, score);
    }
};

SessionManager::SessionManager(SessionManagerOptions options) : options_(std::move(options)) {
    if (options_.persist_dir) {
        std::filesystem::create_directories(*options_.persist_dir);
    }
}

SessionManager::~SessionManager() = default;

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string &session_id) const {
    std::lock_guard<std::mutex> lock(table_mutex_);
    auto it = sessions_.find(session_id);
    return it == sessions_.end() ? nullptr : it->second;
}

ApiResponse SessionManager::create(const std::string &body) {
    auto s = std::make_shared<Session>();
    std::map<std::string, std::string> policy_names;
    try {
        json req = json::parse(body);
        if (!req.is_object()) {
            return error(400, "request body must be a JSON object");
        }
        s->kind = parse_game_kind(req.at("game").get<std::string>());
        s->config = config_from_json(req.value("config", json::object()));
        auto game_roles = roles_of(s->kind);
        for (const auto &name : req.at("human_roles")) {
            Role r = parse_role(name.get<std::string>());
            if (std::find(game_roles.begin(), game_roles.end(), r) == game_roles.end()) {
                return error(400, "role " + name.get<std::string>() + " does not take part in " +
                                      std::string(to_string(s->kind)));
            }
            s->humans.insert(r);
        }
        s->seed = req.contains("seed") ? req.at("seed").get<uint64_t>() : random_seed();
        s->series = req.value("series", true);
        if (req.contains("policies")) {
            policy_names = req.at("policies").get<std::map<std::string, std::string>>();
        }
    } catch (const json::exception &e) {
        return error(400, std::string("malformed request: ") + e.what());
    } catch (const std::invalid_argument &e) {
        return error(400, e.what());
    }

    try {
        auto profile = build_profile(s->kind, policy_names, s->config);
        s->engine = make_policies(profile, s->config);
    } catch (const std::invalid_argument &e) {
        return error(400, e.what());
    }
    bool human_moves = false;
    for (Role r : s->humans) {
        human_moves = human_moves || s->engine.count(r) > 0;
    }
    if (s->series && !human_moves) {
        return error(400, "series mode needs at least one human role that moves");
    }

    s->id = random_token().substr(0, 16);
    json tokens = json::object();
    Role auditor = auditor_of(s->kind);
    for (Role r : s->humans) {
        auto t = random_token();
        s->token_roles[t] = r;
        tokens[std::string(to_string(r))] = t;
        if (r == auditor) {
            s->auditor_token = t;
        }
    }
    if (s->auditor_token.empty()) {
        s->auditor_token = random_token();
        s->token_roles[s->auditor_token] = auditor;
    }
    if (options_.persist_dir) {
        s->persist_path = (std::filesystem::path(*options_.persist_dir) / (s->id + ".jsonl")).string();
    }
    {
        std::lock_guard<std::mutex> lock(s->mu);
        s->start_trial();
        s->advance();
    }
    {
        std::lock_guard<std::mutex> lock(table_mutex_);
        sessions_[s->id] = s;
    }
    json out{
        {"session_id", s->id},
        {"game", std::string(to_string(s->kind))},
        {"seed", s->seed},
        {"series", s->series},
        {"tokens", tokens},
        {"auditor_token", s->auditor_token},
    };
    return {201, out.dump()};
}

ApiResponse SessionManager::get_view(const std::string &session_id, const std::string &token) {
    auto s = find(session_id);
    if (!s) {
        return error(404, "unknown session");
    }
    std::lock_guard<std::mutex> lock(s->mu);
    auto it = s->token_roles.find(token);
    if (it == s->token_roles.end()) {
        return error(403, "bad role token");
    }
    return {200, s->render(it->second)};
}

ApiResponse SessionManager::post_move(const std::string &session_id, const std::string &token, const std::string &body) {
    auto s = find(session_id);
    if (!s) {
        return error(404, "unknown session");
    }
    std::lock_guard<std::mutex> lock(s->mu);
    auto it = s->token_roles.find(token);
    if (it == s->token_roles.end()) {
        return error(403, "bad role token");
    }
    Role role = it->second;
    if (s->closed) {
        return error(409, "session is closed");
    }
    Move move;
    try {
        json req = json::parse(body);
        if (!req.is_object() || !req.contains("move")) {
            return error(422, "body must be {\"move\": {...}}");
        }
        if (req.contains("trial")) {
            if (!req.at("trial").is_number_unsigned() || req.at("trial").get<uint64_t>() != s->state.game_id) {
                return error(409, "move is for a trial that is no longer running");
            }
        }
        move = move_from_json(req.at("move"));
    } catch (const json::exception &e) {
        return error(422, std::string("malformed move: ") + e.what());
    } catch (const IllegalMove &e) {
        return error(status_for(e.reason()), e.what());
    }
    try {
        check_legal(s->state, role, move);
        s->state = apply_move(s->state, role, move, s->rng);
    } catch (const IllegalMove &e) {
        return error(status_for(e.reason()), e.what());
    } catch (const std::invalid_argument &e) {
        return error(422, e.what());
    }
    s->advance();
    return {200, s->render(role)};
}

ApiResponse SessionManager::close(const std::string &session_id, const std::string &token) {
    auto s = find(session_id);
    if (!s) {
        return error(404, "unknown session");
    }
    std::lock_guard<std::mutex> lock(s->mu);
    if (!s->token_roles.count(token)) {
        return error(403, "bad role token");
    }
    s->closed = true;
    return {200, json{{"session_id", s->id}, {"closed", true}, {"scoreboard", scoreboard_json(s->score)}}.dump()};
}

ApiResponse SessionManager::result(const std::string &session_id, const std::string &token) {
    auto s = find(session_id);
    if (!s) {
        return error(404, "unknown session");
    }
    std::lock_guard<std::mutex> lock(s->mu);
    if (token != s->auditor_token) {
        return error(403, "the result log is for the auditor token only");
    }
    if (!s->closed) {
        return error(409, "session is still open");
    }
    json out{
        {"session_id", s->id},
        {"game", std::string(to_string(s->kind))},
        {"seed", s->seed},
        {"config", to_json(s->config)},
        {"scoreboard", scoreboard_json(s->score)},
        {"trials", s->completed},
    };
    out["unfinished"] = is_terminal(s->state) || s->state.log.empty() ? json(nullptr) : audit_json(s->state);
    return {200, out.dump()};
}

std::optional<GameState> SessionManager::snapshot(const std::string &session_id) const {
    auto s = find(session_id);
    if (!s) {
        return std::nullopt;
    }
    std::lock_guard<std::mutex> lock(s->mu);
    return s->state;
}

void install_routes(httplib::Server &server, SessionManager &manager) {
    server.set_default_headers({
        {"Access-Control-Allow-Origin", "*"},
        {"Access-Control-Allow-Headers", "Content-Type, X-Role-Token"},
        {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
    });
    auto reply = [](httplib::Response &res, const ApiResponse &r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    server.Options(R"(/api/v1/.*)", [](const httplib::Request &, httplib::Response &res) { res.status = 204; });
    server.Post("/api/v1/sessions", [&manager, reply](const httplib::Request &req, httplib::Response &res) {
        reply(res, manager.create(req.body));
    });
    server.Get(
        R"(/api/v1/sessions/([^/]+)/view)", [&manager, reply](const httplib::Request &req, httplib::Response &res) {
            reply(res, manager.get_view(req.matches[1], req.get_header_value("X-Role-Token")));
        });
    server.Post(
        R"(/api/v1/sessions/([^/]+)/moves)", [&manager, reply](const httplib::Request &req, httplib::Response &res) {
            reply(res, manager.post_move(req.matches[1], req.get_header_value("X-Role-Token"), req.body));
        });
    server.Post(
        R"(/api/v1/sessions/([^/]+)/close)", [&manager, reply](const httplib::Request &req, httplib::Response &res) {
            reply(res, manager.close(req.matches[1], req.get_header_value("X-Role-Token")));
        });
    server.Get(
        R"(/api/v1/sessions/([^/]+)/result)", [&manager, reply](const httplib::Request &req, httplib::Response &res) {
            reply(res, manager.result(req.matches[1], req.get_header_value("X-Role-Token")));
        });
}

int serve(const std::string &host, int port, SessionManagerOptions options) {
    SessionManager manager(std::move(options));
    httplib::Server server;
    install_routes(server, manager);
    if (!server.listen(host, port)) {
        return 1;
    }
    return 0;
}

}  // namespace qga
