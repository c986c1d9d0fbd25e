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

// qga: command-line front end.
//
//   qga simulate --game three-box --alice quantum --bob uniform --trials 100000 --seed 42 --out r.json
//   qga value --game ghz --side classical
//   qga enumerate --game meyer-coin
//   qga serve --port 8080
//
// Exit status: 0 success, 2 usage error, 1 runtime error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "qga/codec.h"
#include "qga/harness.h"
#include "qga/session.h"
#include "qga/strategy.h"

namespace {

using namespace qga;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigFlags {
    std::optional<double> delta;
    std::optional<double> dephase;
    std::optional<double> inspect_prob;
    std::optional<int> photons;
    std::optional<int> check_bits;
    std::optional<double> threshold;

    void attach(CLI::App *cmd) {
        cmd->add_option("--delta", delta, "careless-Bob leak probability (three-box)");
        cmd->add_option("--dephase", dephase, "dephasing strength after Bob's move (meyer-coin)");
        cmd->add_option("--inspect-prob", inspect_prob, "Bob's anti-cheat inspection frequency");
        cmd->add_option("--photons", photons, "photons per BB84 round");
        cmd->add_option("--check-bits", check_bits, "sifted bits sacrificed for checking");
        cmd->add_option("--threshold", threshold, "tolerated check-bit error fraction");
    }

    GameConfig build() const {
        GameConfig c;
        if (delta) c.disturbance_delta = *delta;
        if (dephase) c.dephasing_p = *dephase;
        if (inspect_prob) c.inspect_prob = *inspect_prob;
        if (photons) c.bb84_n_photons = *photons;
        if (check_bits) c.bb84_check_bits = *check_bits;
        if (threshold) c.bb84_error_threshold = *threshold;
        try {
            c.validate();
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        return c;
    }
};

struct PolicyFlags {
    std::optional<std::string> alice, bob, players, eve;

    void attach(CLI::App *cmd) {
        cmd->add_option("--alice", alice, "alice policy (three-box, meyer-coin)");
        cmd->add_option("--bob", bob, "bob policy (three-box, meyer-coin)");
        cmd->add_option("--players", players, "player policy (ghz)");
        cmd->add_option("--eve", eve, "eve policy: intercept, pass, or a fraction (bb84-eaves)");
    }

    Profile build(GameKind kind, const GameConfig &config) const {
        std::map<std::string, std::string> m;
        if (alice) m["alice"] = *alice;
        if (bob) m["bob"] = *bob;
        if (players) m["players"] = *players;
        if (eve) m["eve"] = *eve;
        try {
            return build_profile(kind, m, config);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
};

GameKind game_of(const std::string &name) {
    try {
        return parse_game_kind(name);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

void print_value(const GameValue &v, const std::string &format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["value"] = to_string(v.value);
        j["decimal"] = v.decimal();
        j["details"] = nlohmann::ordered_json::object();
        for (const auto &[k, x] : v.details) {
            j["details"][k] = to_string(x);
        }
        j["argmax"] = v.argmax;
        std::cout << j.dump() << "\n";
        return;
    }
    std::cout << to_string(v.value) << "\n";
    std::cout << "decimal: " << v.decimal() << "\n";
    for (const auto &[k, x] : v.details) {
        std::cout << k << ": " << to_string(x) << "\n";
    }
    std::cout << "argmax: " << v.argmax << "\n";
}

std::set<Role> parse_roles(GameKind kind, const std::vector<std::string> &names) {
    std::set<Role> out;
    if (names.empty()) {
        for (Role r : roles_of(kind)) {
            if (r != auditor_of(kind)) {
                out.insert(r);
            }
        }
        return out;
    }
    for (const auto &n : names) {
        try {
            out.insert(parse_role(n));
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum game simulation and verification"};
    app.require_subcommand(1);

    std::string game;
    ConfigFlags config_flags;
    PolicyFlags policy_flags;

    auto *simulate = app.add_subcommand("simulate", "run Monte Carlo trials and emit a report");
    int64_t trials = 100000;
    std::optional<uint64_t> seed;
    std::string out_path = "-";
    std::string format = "json";
    unsigned threads = 0;
    simulate->add_option("--game", game, "three-box, meyer-coin, ghz, bb84-eaves")->required();
    policy_flags.attach(simulate);
    config_flags.attach(simulate);
    simulate->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "global seed (default: $QGA_SEED, else 42)");
    simulate->add_option("--out", out_path, "report path, - for stdout");
    simulate->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    simulate->add_option("--threads", threads, "worker threads (0 = all cores)");

    auto *value = app.add_subcommand("value", "exact game values");
    std::string side = "quantum";
    std::string value_format = "text";
    value->add_option("--game", game, "game name")->required();
    value->add_option("--side", side, "classical or quantum")->check(CLI::IsMember({"classical", "quantum"}));
    value->add_option("--format", value_format, "text or json")->check(CLI::IsMember({"text", "json"}));
    config_flags.attach(value);

    auto *enumerate = app.add_subcommand("enumerate", "list deterministic classical profiles with exact values");
    std::vector<std::string> roles;
    enumerate->add_option("--game", game, "game name")->required();
    enumerate->add_option("--roles", roles, "roles to enumerate (default: every moving role)")->delimiter(',');
    config_flags.attach(enumerate);

    auto *serve_cmd = app.add_subcommand("serve", "start the session HTTP service");
    std::string host = "127.0.0.1";
    int port = 8080;
    std::optional<std::string> persist_dir;
    serve_cmd->add_option("--host", host, "bind address");
    serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--persist-dir", persist_dir, "append completed trials as JSON lines here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*simulate) {
            GameKind kind = game_of(game);
            GameConfig config = config_flags.build();
            Profile profile = policy_flags.build(kind, config);
            uint64_t s = seed ? *seed : seed_from_env(42);
            auto report = run_trials(kind, profile, config, trials, s, threads);
            emit_report(report, parse_report_format(format), out_path, std::cout);
            return 0;
        }
        if (*value) {
            GameKind kind = game_of(game);
            GameConfig config = config_flags.build();
            print_value(side == "classical" ? classical_value(kind, config) : quantum_value(kind, config), value_format);
            return 0;
        }
        if (*enumerate) {
            GameKind kind = game_of(game);
            GameConfig config = config_flags.build();
            auto list = enumerate_deterministic(kind, parse_roles(kind, roles));
            std::cout << list.size() << " profiles\n";
            for (const auto &e : list) {
                auto v = evaluate(kind, e.profile, config);
                std::cout << to_string(v.value) << "\t" << e.description << "\n";
            }
            return 0;
        }
        if (*serve_cmd) {
            std::cerr << "serving on http://" << host << ":" << port << "/api/v1/sessions\n";
            return serve(host, port, {persist_dir});
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
