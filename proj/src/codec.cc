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

#include "qga/codec.h"

#include <cmath>

namespace qga {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void malformed(const std::string &what) {
    throw IllegalMove(IllegalMove::Reason::kMalformed, what);
}

json amps_json(std::span<const Amplitude> amps) {
    json out = json::array();
    for (auto a : amps) {
        out.push_back(to_json(a));
    }
    return out;
}

std::vector<Amplitude> amps_from(const json &j, const char *key) {
    if (!j.contains(key) || !j[key].is_array()) {
        malformed(std::string("missing amplitude array '") + key + "'");
    }
    std::vector<Amplitude> out;
    for (const auto &e : j[key]) {
        out.push_back(amplitude_from_json(e));
    }
    return out;
}

Box box_from(const json &j) {
    if (!j.contains("box") || !j["box"].is_string()) {
        malformed("missing 'box'");
    }
    auto b = j["box"].get<std::string>();
    if (b == "A") {
        return Box::kA;
    }
    if (b == "B") {
        return Box::kB;
    }
    if (b == "C" || b == "elsewhere") {
        return Box::kC;
    }
    malformed("unknown box '" + b + "'");
}

json view_value_json(const ViewValue &v) {
    return std::visit([](const auto &x) { return json(x); }, v);
}

json state_json(const StateVector &s) {
    json out;
    out["basis"] = s.basis().labels();
    out["amps"] = amps_json(s.amps());
    return out;
}

json bytes_json(const std::vector<uint8_t> &v) {
    json out = json::array();
    for (auto b : v) {
        out.push_back(static_cast<int>(b));
    }
    return out;
}

}  // namespace

json to_json(Amplitude a) {
    return json{{"re", a.real()}, {"im", a.imag()}};
}

Amplitude amplitude_from_json(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0};
    }
    if (!j.is_object() || !j.contains("re") || !j["re"].is_number()) {
        malformed("amplitude must be a number or {\"re\": x, \"im\": y}");
    }
    double im = 0;
    if (j.contains("im")) {
        if (!j["im"].is_number()) {
            malformed("amplitude 'im' must be a number");
        }
        im = j["im"].get<double>();
    }
    return {j["re"].get<double>(), im};
}

json to_json(const Move &move) {
    json out{{"type", std::string(move_name(move))}};
    std::visit(
        overloaded{
            [&](const moves::ClassicalPlace &m) { out["box"] = std::string(to_string(m.box)); },
            [&](const moves::QuantumPrepare &m) { out["amps"] = amps_json(m.amps); },
            [&](const moves::Open &m) { out["box"] = std::string(to_string(m.box)); },
            [&](const moves::MeasureOnto &m) { out["target"] = amps_json(m.target); },
            [&](const moves::ApplyUnitary &m) {
                json rows = json::array();
                for (size_t r = 0; r < m.op.dim(); r++) {
                    json row = json::array();
                    for (size_t c = 0; c < m.op.dim(); c++) {
                        row.push_back(to_json(m.op.at(r, c)));
                    }
                    rows.push_back(row);
                }
                out["matrix"] = rows;
            },
            [&](const moves::Answer &m) { out["value"] = m.value; },
            [&](const moves::MeasureQubit &m) { out["axis"] = std::string(to_string(m.axis)); },
            [&](const moves::EveActions &m) {
                std::string photons;
                for (const auto &a : m.photons) {
                    photons.push_back(!a.intercept ? '.' : a.basis == PhotonBasis::kRectilinear ? '+' : 'x');
                }
                out["photons"] = photons;
            },
            [](const auto &) {},
        },
        move);
    return out;
}

Move move_from_json(const json &j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        malformed("move must be an object with a string 'type'");
    }
    auto type = j["type"].get<std::string>();
    if (type == "classical_place") {
        return moves::ClassicalPlace{box_from(j)};
    }
    if (type == "quantum_prepare") {
        auto amps = amps_from(j, "amps");
        if (amps.size() != 3) {
            malformed("quantum_prepare takes exactly three amplitudes (A, B, C)");
        }
        return moves::QuantumPrepare{std::move(amps)};
    }
    if (type == "cheat_two_particles") {
        return moves::CheatTwoParticles{};
    }
    if (type == "open") {
        return moves::Open{box_from(j)};
    }
    if (type == "inspect_both") {
        return moves::InspectBoth{};
    }
    if (type == "measure_onto") {
        return moves::MeasureOnto{amps_from(j, "target")};
    }
    if (type == "accept") {
        return moves::Accept{};
    }
    if (type == "cancel") {
        return moves::Cancel{};
    }
    if (type == "flip") {
        return moves::Flip{};
    }
    if (type == "no_flip") {
        return moves::NoFlip{};
    }
    if (type == "unitary") {
        if (!j.contains("matrix") || !j["matrix"].is_array()) {
            malformed("unitary needs a 'matrix'");
        }
        const auto &rows = j["matrix"];
        size_t d = rows.size();
        std::vector<Amplitude> entries;
        for (const auto &row : rows) {
            if (!row.is_array() || row.size() != d) {
                malformed("unitary matrix must be square");
            }
            for (const auto &e : row) {
                entries.push_back(amplitude_from_json(e));
            }
        }
        try {
            return moves::ApplyUnitary{UnitaryOp::make(d, entries)};
        } catch (const std::invalid_argument &e) {
            malformed(e.what());
        }
    }
    if (type == "answer") {
        if (!j.contains("value") || !j["value"].is_number_integer()) {
            malformed("answer needs an integer 'value'");
        }
        return moves::Answer{j["value"].get<int>()};
    }
    if (type == "measure_qubit") {
        auto axis = j.value("axis", std::string());
        if (axis != "x" && axis != "y") {
            malformed("measure_qubit axis must be 'x' or 'y'");
        }
        return moves::MeasureQubit{axis == "x" ? Axis::kX : Axis::kY};
    }
    if (type == "eve_actions") {
        if (!j.contains("photons") || !j["photons"].is_string()) {
            malformed("eve_actions needs a 'photons' string of '.', '+', 'x'");
        }
        moves::EveActions m;
        for (char c : j["photons"].get<std::string>()) {
            if (c == '.') {
                m.photons.push_back({});
            } else if (c == '+' || c == 'x') {
                m.photons.push_back(
                    {.intercept = true, .basis = c == '+' ? PhotonBasis::kRectilinear : PhotonBasis::kDiagonal});
            } else {
                malformed("unknown photon action character");
            }
        }
        return m;
    }
    if (type == "declare_eavesdropping") {
        return moves::DeclareEavesdropping{};
    }
    if (type == "declare_clean") {
        return moves::DeclareClean{};
    }
    malformed("unknown move type '" + type + "'");
}

json to_json(const GameConfig &c) {
    return json{
        {"dephasing_p", c.dephasing_p},
        {"disturbance_delta", c.disturbance_delta},
        {"inspect_prob", c.inspect_prob},
        {"bb84_n_photons", c.bb84_n_photons},
        {"bb84_check_bits", c.bb84_check_bits},
        {"bb84_error_threshold", c.bb84_error_threshold},
        {"payoffs",
         {
             {"three_box_win", c.payoffs.three_box_win},
             {"three_box_loss", c.payoffs.three_box_loss},
             {"cheat_caught_penalty", c.payoffs.cheat_caught_penalty},
             {"catch_reward", c.payoffs.catch_reward},
             {"false_alarm_penalty", c.payoffs.false_alarm_penalty},
             {"eve_correct_bit_reward", c.payoffs.eve_correct_bit_reward},
         }},
    };
}

GameConfig config_from_json(const json &j) {
    GameConfig c;
    if (j.is_null()) {
        return c;
    }
    if (!j.is_object()) {
        throw std::invalid_argument("config must be a JSON object");
    }
    auto number = [](const json &v, const std::string &key) {
        if (!v.is_number()) {
            throw std::invalid_argument("config field '" + key + "' must be a number");
        }
        return v.get<double>();
    };
    auto integer = [](const json &v, const std::string &key) {
        if (!v.is_number_integer()) {
            throw std::invalid_argument("config field '" + key + "' must be an integer");
        }
        return v.get<int>();
    };
    for (const auto &[key, v] : j.items()) {
        if (key == "dephasing_p") {
            c.dephasing_p = number(v, key);
        } else if (key == "disturbance_delta") {
            c.disturbance_delta = number(v, key);
        } else if (key == "inspect_prob") {
            c.inspect_prob = number(v, key);
        } else if (key == "bb84_n_photons") {
            c.bb84_n_photons = integer(v, key);
        } else if (key == "bb84_check_bits") {
            c.bb84_check_bits = integer(v, key);
        } else if (key == "bb84_error_threshold") {
            c.bb84_error_threshold = number(v, key);
        } else if (key == "payoffs") {
            if (!v.is_object()) {
                throw std::invalid_argument("payoffs must be an object");
            }
            for (const auto &[pk, pv] : v.items()) {
                double x = number(pv, pk);
                if (pk == "three_box_win") {
                    c.payoffs.three_box_win = x;
                } else if (pk == "three_box_loss") {
                    c.payoffs.three_box_loss = x;
                } else if (pk == "cheat_caught_penalty") {
                    c.payoffs.cheat_caught_penalty = x;
                } else if (pk == "catch_reward") {
                    c.payoffs.catch_reward = x;
                } else if (pk == "false_alarm_penalty") {
                    c.payoffs.false_alarm_penalty = x;
                } else if (pk == "eve_correct_bit_reward") {
                    c.payoffs.eve_correct_bit_reward = x;
                } else {
                    throw std::invalid_argument("unknown payoff field '" + pk + "'");
                }
            }
        } else {
            throw std::invalid_argument("unknown config field '" + key + "'");
        }
    }
    c.validate();
    return c;
}

json to_json(const RoleView &v) {
    json out;
    out["game"] = std::string(to_string(v.game));
    out["role"] = std::string(to_string(v.role));
    out["stage"] = v.stage;
    out["to_move"] = v.to_move ? json(std::string(to_string(*v.to_move))) : json(nullptr);
    out["terminal"] = v.terminal;
    out["own_moves"] = json::array();
    for (const auto &m : v.own_moves) {
        out["own_moves"].push_back(to_json(m));
    }
    out["observations"] = json::object();
    for (const auto &[k, val] : v.observations) {
        out["observations"][k] = view_value_json(val);
    }
    return out;
}

json audit_json(const GameState &s) {
    json out;
    out["game"] = std::string(to_string(s.kind));
    out["game_id"] = s.game_id;
    out["stage"] = s.stage;
    out["config"] = to_json(s.config);
    out["log"] = json::array();
    for (const auto &lm : s.log) {
        out["log"].push_back({{"role", std::string(to_string(lm.role))}, {"move", to_json(lm.move)}});
    }
    out["found"] = s.found ? json(*s.found) : json(nullptr);
    out["caught_cheating"] = s.caught_cheating;
    out["accepted"] = s.accepted ? json(*s.accepted) : json(nullptr);
    json hidden;
    std::visit(
        overloaded{
            [&](const ThreeBoxHidden &h) {
                hidden["particle"] = h.particle ? state_json(*h.particle) : json(nullptr);
                hidden["two_particles"] = h.two_particles;
                hidden["inspected"] = h.inspected;
                hidden["disturbed"] = h.disturbed ? json(*h.disturbed) : json(nullptr);
            },
            [&](const MeyerHidden &h) {
                hidden["coin"] = state_json(h.coin);
                hidden["heads"] = h.heads ? json(*h.heads) : json(nullptr);
            },
            [&](const GhzHidden &h) {
                std::string q;
                for (auto a : h.questions) {
                    q += to_string(a);
                }
                hidden["questions"] = q;
                hidden["shared"] = state_json(h.shared);
            },
            [&](const Bb84Hidden &h) {
                hidden["sender_bits"] = bytes_json(h.sender_bits);
                hidden["sender_bases"] = bytes_json(h.sender_bases);
                hidden["receiver_bases"] = bytes_json(h.receiver_bases);
                hidden["received"] = bytes_json(h.received);
                hidden["eve_results"] = bytes_json(h.eve_results);
                hidden["mismatches"] = h.mismatches;
                hidden["eve_correct"] = h.eve_correct;
                hidden["eve_touched"] = h.eve_touched;
            },
        },
        s.hidden);
    out["hidden"] = hidden;
    if (is_terminal(s)) {
        auto o = payoff(s);
        json p;
        for (const auto &[r, x] : o.payoffs) {
            p[std::string(to_string(r))] = x;
        }
        out["payoffs"] = p;
        out["counted"] = o.counted;
        out["win"] = o.win;
    }
    return out;
}

}  // namespace qga
