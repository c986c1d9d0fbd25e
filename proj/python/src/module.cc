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

// Python bindings. Configs, policies and results cross the boundary as JSON
// text; the qga package wraps them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qga/codec.h"
#include "qga/harness.h"
#include "qga/session.h"
#include "qga/strategy.h"

namespace py = pybind11;
using nlohmann::json;

namespace {

using namespace qga;

GameConfig parse_config(const std::string &config_json) {
    return config_from_json(json::parse(config_json.empty() ? "{}" : config_json));
}

std::string value_json(const GameValue &v) {
    json details = json::object();
    for (const auto &[k, x] : v.details) {
        details[k] = to_string(x);
    }
    return json{
        {"value", to_string(v.value)},
        {"decimal", v.decimal()},
        {"details", details},
        {"argmax", v.argmax},
    }
        .dump();
}

std::string value(const std::string &game, const std::string &side, const std::string &config_json) {
    GameKind kind = parse_game_kind(game);
    GameConfig config = parse_config(config_json);
    if (side == "classical") {
        return value_json(classical_value(kind, config));
    }
    if (side == "quantum") {
        return value_json(quantum_value(kind, config));
    }
    throw std::invalid_argument("side must be 'classical' or 'quantum'");
}

std::string evaluate_named(
    const std::string &game, const std::map<std::string, std::string> &policies, const std::string &config_json) {
    GameKind kind = parse_game_kind(game);
    GameConfig config = parse_config(config_json);
    return value_json(evaluate(kind, build_profile(kind, policies, config), config));
}

std::string simulate(
    const std::string &game, const std::map<std::string, std::string> &policies, const std::string &config_json,
    int64_t trials, uint64_t seed, unsigned threads) {
    GameKind kind = parse_game_kind(game);
    GameConfig config = parse_config(config_json);
    Profile profile = build_profile(kind, policies, config);
    RunReport report;
    {
        py::gil_scoped_release release;
        report = run_trials(kind, profile, config, trials, seed, threads);
    }
    return to_json(report).dump();
}

std::vector<std::pair<std::string, std::string>> enumerate_profiles(
    const std::string &game, const std::vector<std::string> &roles, const std::string &config_json) {
    GameKind kind = parse_game_kind(game);
    GameConfig config = parse_config(config_json);
    std::set<Role> role_set;
    for (const auto &r : roles) {
        role_set.insert(parse_role(r));
    }
    if (role_set.empty()) {
        for (Role r : roles_of(kind)) {
            if (r != auditor_of(kind)) {
                role_set.insert(r);
            }
        }
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &e : enumerate_deterministic(kind, role_set)) {
        out.emplace_back(e.description, to_string(evaluate(kind, e.profile, config).value));
    }
    return out;
}

py::tuple reply(const ApiResponse &r) {
    return py::make_tuple(r.status, r.body);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "qga native core";

    py::register_exception<NotEnumerable>(m, "NotEnumerable", PyExc_ValueError);
    py::register_exception<NonReducible>(m, "NonReducible", PyExc_ValueError);
    py::register_exception<InfeasibleProfile>(m, "InfeasibleProfile", PyExc_ValueError);

    m.def("games", [] {
        return std::vector<std::string>{"three-box", "meyer-coin", "ghz", "bb84-eaves"};
    });
    m.def("default_config", [] { return to_json(GameConfig{}).dump(); });
    m.def("config_hash", [](const std::string &config_json) { return config_hash(parse_config(config_json)); });
    m.def("value", &value, py::arg("game"), py::arg("side"), py::arg("config_json") = "");
    m.def("evaluate", &evaluate_named, py::arg("game"), py::arg("policies"), py::arg("config_json") = "");
    m.def(
        "simulate", &simulate, py::arg("game"), py::arg("policies"), py::arg("config_json"), py::arg("trials"),
        py::arg("seed"), py::arg("threads") = 0);
    m.def("enumerate", &enumerate_profiles, py::arg("game"), py::arg("roles"), py::arg("config_json") = "");
    m.def(
        "wilson_interval",
        [](int64_t k, int64_t n) {
            auto w = wilson_interval(k, n);
            return std::make_pair(w[0], w[1]);
        },
        py::arg("successes"), py::arg("n"));

    py::class_<SessionManager>(m, "SessionManager")
        .def(py::init<>())
        .def("create", [](SessionManager &s, const std::string &body) { return reply(s.create(body)); })
        .def("view", [](SessionManager &s, const std::string &id, const std::string &token) {
            return reply(s.get_view(id, token));
        })
        .def("move", [](SessionManager &s, const std::string &id, const std::string &token, const std::string &body) {
            return reply(s.post_move(id, token, body));
        })
        .def("close", [](SessionManager &s, const std::string &id, const std::string &token) {
            return reply(s.close(id, token));
        })
        .def("result", [](SessionManager &s, const std::string &id, const std::string &token) {
            return reply(s.result(id, token));
        });
}
