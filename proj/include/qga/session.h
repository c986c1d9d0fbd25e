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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qga/games.h"
#include "qga/strategy.h"

namespace httplib {
class Server;
}

namespace qga {

/// Public per-session aggregates. Never derived from anything but completed
/// trials' payoffs.
struct Scoreboard {
    int64_t trials_completed = 0;
    int64_t accepted = 0;
    int64_t wins_among_accepted = 0;
};

/// The whole body of a view response. Everything in it comes from the
/// caller's own role views and the public scoreboard, so two sessions that
/// agree on those produce byte-identical responses.
std::string render_view_response(
    const std::string &session_id, uint64_t trial_index, const RoleView &current,
    const std::optional<RoleView> &last_trial, const Scoreboard &scoreboard);

struct ApiResponse {
    int status = 200;
    std::string body;
};

struct SessionManagerOptions {
    /// Append-only JSON-lines log of completed trials, one file per session.
    std::optional<std::string> persist_dir;
};

/// In-memory sessions. Each session holds its own mutex; the session table
/// has another. All methods are safe to call from many threads.
class SessionManager {
   public:
    explicit SessionManager(SessionManagerOptions options = {});
    ~SessionManager();

    /// Body: {"game", "config"?, "human_roles", "seed"?, "series"?,
    /// "policies"?}. `policies` picks the engine's rules by name as in
    /// build_profile. 201 {"session_id", "tokens", "auditor_token"}.
    ApiResponse create(const std::string &body);
    ApiResponse get_view(const std::string &session_id, const std::string &token);
    /// Body: {"move": {...}, "trial"?: n}. A stale trial index is 409.
    ApiResponse post_move(const std::string &session_id, const std::string &token, const std::string &body);
    /// Any role token of the session may close it.
    ApiResponse close(const std::string &session_id, const std::string &token);
    /// Full audit log; auditor token only, closed sessions only.
    ApiResponse result(const std::string &session_id, const std::string &token);

    /// Hidden state of the running trial. For tests and diagnostics.
    std::optional<GameState> snapshot(const std::string &session_id) const;

   private:
    struct Session;
    std::shared_ptr<Session> find(const std::string &session_id) const;

    SessionManagerOptions options_;
    mutable std::mutex table_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
};

/// Registers the /api/v1/sessions routes (and CORS preflight) on `server`.
void install_routes(httplib::Server &server, SessionManager &manager);

/// Blocks serving on host:port until the process is stopped.
int serve(const std::string &host, int port, SessionManagerOptions options = {});

}  // namespace qga
