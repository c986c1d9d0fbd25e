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

#include <json.hpp>

#include "qga/games.h"

namespace qga {

/// JSON wire formats shared by the CLI, reports and the session service.
/// Amplitudes are {"re": x, "im": y} objects; moves are objects tagged by
/// their stable "type" name.

nlohmann::json to_json(Amplitude a);
Amplitude amplitude_from_json(const nlohmann::json &j);

nlohmann::json to_json(const Move &move);
/// Throws IllegalMove (kMalformed) on anything it cannot decode.
Move move_from_json(const nlohmann::json &j);

nlohmann::json to_json(const GameConfig &config);
/// Starts from defaults and overrides the keys present. Unknown keys and
/// type errors throw std::invalid_argument; the result is validated.
GameConfig config_from_json(const nlohmann::json &j);

nlohmann::json to_json(const RoleView &view);

/// Complete audit record of a trial, hidden state included. Only for the
/// trusted party's closed-session log and persistence.
nlohmann::json audit_json(const GameState &state);

}  // namespace qga
