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

#include "qga/harness.h"

#include <chrono>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "qga/codec.h"

namespace qga {

using nlohmann::json;

void RunCounters::add(const TrialRecord &r) {
    trials++;
    if (r.counted) {
        accepted++;
        wins_accepted += r.win;
    }
    if (r.kind == GameKind::kThreeBox) {
        bool inspected = false;
        for (const auto &lm : r.moves) {
            inspected = inspected || std::holds_alternative<moves::InspectBoth>(lm.move);
        }
        auto alice = r.payoffs.find(Role::kAlice);
        if (alice != r.payoffs.end() && inspected && alice->second < 0) {
            caught_cheating++;
        }
        if (!inspected && r.found.value_or(false)) {
            found++;
            accepted_found += r.accepted.value_or(false);
        }
    }
    if (r.kind == GameKind::kBb84Eaves) {
        bool declared = false;
        bool touched = false;
        for (const auto &lm : r.moves) {
            declared = declared || std::holds_alternative<moves::DeclareEavesdropping>(lm.move);
            if (const auto *e = std::get_if<moves::EveActions>(&lm.move)) {
                for (const auto &a : e->photons) {
                    touched = touched || a.intercept;
                }
            }
        }
        false_alarms += declared && !touched;
    }
    for (const auto &[role, pay] : r.payoffs) {
        if (role == Role::kTeam1Sender || role == Role::kTeam1Receiver) {
            if (pay < 0) {
                team1_penalized++;
                break;
            }
        }
    }
}

void RunCounters::merge(const RunCounters &o) {
    trials += o.trials;
    accepted += o.accepted;
    wins_accepted += o.wins_accepted;
    found += o.found;
    accepted_found += o.accepted_found;
    caught_cheating += o.caught_cheating;
    false_alarms += o.false_alarms;
    team1_penalized += o.team1_penalized;
}

const std::vector<std::string> &report_columns() {
    static const std::vector<std::string> cols = {
        "game",
        "config_hash",
        "profile",
        "n_trials",
        "n_accepted",
        "n_wins_accepted",
        "accept_rate",
        "conditional_win_rate",
        "wilson95_lo",
        "wilson95_hi",
        "seed",
        "no_accepted_trials",
        "wall_time_ms",
    };
    return cols;
}

namespace {

GameState play_out(
    GameKind kind, const std::map<Role, Policy> &policies, const GameConfig &config, uint64_t trial_index,
    RandomStream &rng) {
    GameState s = new_game(kind, config, rng);
    s.game_id = trial_index;
    while (!is_terminal(s)) {
        Role r = *to_move(s);
        auto it = policies.find(r);
        if (it == policies.end()) {
            throw std::invalid_argument("no policy for role " + std::string(to_string(r)));
        }
        Move m = it->second(view(s, r), rng);
        s = apply_move(s, r, m, rng);
    }
    return s;
}

}  // namespace

GameState replay_trial(
    GameKind kind, const std::map<Role, Policy> &policies, const GameConfig &config, uint64_t seed,
    uint64_t trial_index) {
    RandomStream rng(seed, trial_index);
    return play_out(kind, policies, config, trial_index, rng);
}

TrialRecord play_trial(
    GameKind kind, const std::map<Role, Policy> &policies, const GameConfig &config, uint64_t seed,
    uint64_t trial_index) {
    RandomStream rng(seed, trial_index);
    GameState s = play_out(kind, policies, config, trial_index, rng);
    auto out = payoff(s);
    TrialRecord rec;
    rec.trial_index = trial_index;
    rec.kind = kind;
    rec.moves = std::move(s.log);
    rec.found = s.found;
    rec.accepted = s.accepted;
    rec.payoffs = std::move(out.payoffs);
    rec.rng_draws = rng.draws();
    rec.counted = out.counted;
    rec.win = out.win;
    return rec;
}

std::array<double, 2> wilson_interval(int64_t successes, int64_t n, double z) {
    if (n <= 0) {
        return {0, 0};
    }
    double nn = static_cast<double>(n);
    double p = static_cast<double>(successes) / nn;
    double z2 = z * z;
    double denom = 1 + z2 / nn;
    double center = (p + z2 / (2 * nn)) / denom;
    double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::string config_hash(const GameConfig &config) {
    std::string text = to_json(config).dump();
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunResult run_trials_detailed(
    GameKind kind, const Profile &profile, const GameConfig &config, int64_t n, uint64_t seed,
    const RunOptions &options) {
    if (n < 1) {
        throw std::invalid_argument("trial count must be at least 1");
    }
    config.validate();
    if (kind_of(profile) != kind) {
        throw std::invalid_argument("profile does not belong to " + std::string(to_string(kind)));
    }
    auto policies = make_policies(profile, config);
    auto start = std::chrono::steady_clock::now();

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<int64_t>(threads, n));
    std::vector<RunCounters> partial(threads);
    RunResult result;
    if (options.keep_records) {
        result.records.resize(static_cast<size_t>(n));
    }
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        int64_t lo = n * t / threads;
        int64_t hi = n * (t + 1) / threads;
        try {
            for (int64_t i = lo; i < hi; i++) {
                auto rec = play_trial(kind, policies, config, seed, static_cast<uint64_t>(i));
                partial[t].add(rec);
                if (options.keep_records) {
                    result.records[static_cast<size_t>(i)] = std::move(rec);
                }
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; t++) {
            pool.emplace_back(work, t);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    for (const auto &p : partial) {
        result.counters.merge(p);
    }

    const auto &c = result.counters;
    auto &r = result.report;
    r.game = std::string(to_string(kind));
    r.config_hash = config_hash(config);
    r.profile = describe(profile);
    r.n_trials = c.trials;
    r.n_accepted = c.accepted;
    r.n_wins_accepted = c.wins_accepted;
    r.accept_rate = static_cast<double>(c.accepted) / static_cast<double>(c.trials);
    r.no_accepted_trials = c.accepted == 0;
    r.conditional_win_rate = c.accepted ? static_cast<double>(c.wins_accepted) / static_cast<double>(c.accepted) : 0.0;
    r.wilson95 = wilson_interval(c.wins_accepted, c.accepted);
    r.seed = seed;
    r.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

RunReport run_trials(
    GameKind kind, const Profile &profile, const GameConfig &config, int64_t n, uint64_t seed, unsigned threads) {
    return run_trials_detailed(kind, profile, config, n, seed, {.threads = threads}).report;
}

// ---------------------------------------------------------------- formats

ReportFormat parse_report_format(std::string_view name) {
    if (name == "json") {
        return ReportFormat::kJson;
    }
    if (name == "csv") {
        return ReportFormat::kCsv;
    }
    throw std::invalid_argument("unknown report format '" + std::string(name) + "' (json, csv)");
}

namespace {

nlohmann::ordered_json ordered_report(const RunReport &r) {
    nlohmann::ordered_json j;
    j["game"] = r.game;
    j["config_hash"] = r.config_hash;
    j["profile"] = r.profile;
    j["n_trials"] = r.n_trials;
    j["n_accepted"] = r.n_accepted;
    j["n_wins_accepted"] = r.n_wins_accepted;
    j["accept_rate"] = r.accept_rate;
    j["conditional_win_rate"] = r.conditional_win_rate;
    j["wilson95"] = {r.wilson95[0], r.wilson95[1]};
    j["seed"] = r.seed;
    j["no_accepted_trials"] = r.no_accepted_trials;
    j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

}  // namespace

nlohmann::ordered_json to_json(const RunReport &r) {
    return ordered_report(r);
}

RunReport report_from_json(const json &j) {
    try {
        RunReport r;
        r.game = j.at("game").get<std::string>();
        r.config_hash = j.at("config_hash").get<std::string>();
        r.profile = j.at("profile").get<std::string>();
        r.n_trials = j.at("n_trials").get<int64_t>();
        r.n_accepted = j.at("n_accepted").get<int64_t>();
        r.n_wins_accepted = j.at("n_wins_accepted").get<int64_t>();
        r.accept_rate = j.at("accept_rate").get<double>();
        r.conditional_win_rate = j.at("conditional_win_rate").get<double>();
        const auto &w = j.at("wilson95");
        if (!w.is_array() || w.size() != 2) {
            throw std::invalid_argument("wilson95 must be a two-element array");
        }
        r.wilson95 = {w[0].get<double>(), w[1].get<double>()};
        r.seed = j.at("seed").get<uint64_t>();
        r.no_accepted_trials = j.at("no_accepted_trials").get<bool>();
        r.wall_time_ms = j.at("wall_time_ms").get<double>();
        return r;
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("malformed report: ") + e.what());
    }
}

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<std::string> split_csv_row(const std::string &line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (size_t i = 0; i < line.size(); i++) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                i++;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    if (quoted) {
        throw std::invalid_argument("unterminated quoted CSV field");
    }
    return out;
}

template <class T>
T parse_number(const std::string &s, const char *what) {
    std::istringstream in(s);
    T v{};
    in >> v;
    if (in.fail() || !in.eof()) {
        throw std::invalid_argument(std::string("bad CSV value for ") + what + ": '" + s + "'");
    }
    return v;
}

}  // namespace

std::string to_csv(const RunReport &r) {
    std::string out;
    const auto &cols = report_columns();
    for (size_t i = 0; i < cols.size(); i++) {
        out += (i ? "," : "") + cols[i];
    }
    out += "\n";
    std::vector<std::string> row = {
        csv_field(r.game),
        csv_field(r.config_hash),
        csv_field(r.profile),
        std::to_string(r.n_trials),
        std::to_string(r.n_accepted),
        std::to_string(r.n_wins_accepted),
        num(r.accept_rate),
        num(r.conditional_win_rate),
        num(r.wilson95[0]),
        num(r.wilson95[1]),
        std::to_string(r.seed),
        r.no_accepted_trials ? "true" : "false",
        num(r.wall_time_ms),
    };
    for (size_t i = 0; i < row.size(); i++) {
        out += (i ? "," : "") + row[i];
    }
    return out + "\n";
}

RunReport report_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string header, line;
    if (!std::getline(in, header) || !std::getline(in, line)) {
        throw std::invalid_argument("CSV report needs a header and one row");
    }
    if (split_csv_row(header) != report_columns()) {
        throw std::invalid_argument("CSV header does not match the report schema");
    }
    auto f = split_csv_row(line);
    if (f.size() != report_columns().size()) {
        throw std::invalid_argument("CSV row has the wrong number of fields");
    }
    RunReport r;
    r.game = f[0];
    r.config_hash = f[1];
    r.profile = f[2];
    r.n_trials = parse_number<int64_t>(f[3], "n_trials");
    r.n_accepted = parse_number<int64_t>(f[4], "n_accepted");
    r.n_wins_accepted = parse_number<int64_t>(f[5], "n_wins_accepted");
    r.accept_rate = std::strtod(f[6].c_str(), nullptr);
    r.conditional_win_rate = std::strtod(f[7].c_str(), nullptr);
    r.wilson95 = {std::strtod(f[8].c_str(), nullptr), std::strtod(f[9].c_str(), nullptr)};
    r.seed = parse_number<uint64_t>(f[10], "seed");
    if (f[11] != "true" && f[11] != "false") {
        throw std::invalid_argument("bad CSV value for no_accepted_trials");
    }
    r.no_accepted_trials = f[11] == "true";
    r.wall_time_ms = std::strtod(f[12].c_str(), nullptr);
    return r;
}

void emit_report(const RunReport &report, ReportFormat format, const std::string &path, std::ostream &out) {
    std::string text;
    if (format == ReportFormat::kJson) {
        text = ordered_report(report).dump(2) + "\n";
    } else {
        text = to_csv(report);
    }
    if (path.empty() || path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << text;
    f.close();
    if (!f) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

RunReport read_report(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << f.rdbuf();
    std::string text = buf.str();
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return report_from_json(json::parse(text));
    }
    return report_from_csv(text);
}

uint64_t seed_from_env(uint64_t fallback) {
    const char *v = std::getenv("QGA_SEED");
    if (!v || !*v) {
        return fallback;
    }
    char *end = nullptr;
    errno = 0;
    unsigned long long s = std::strtoull(v, &end, 10);
    if (errno || *end || v[0] == '-') {
        return fallback;
    }
    return s;
}

}  // namespace qga
