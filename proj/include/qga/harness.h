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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qga/games.h"
#include "qga/strategy.h"

namespace qga {

/// One played trial, reconstructible from (seed, trial_index, config, profile).
struct TrialRecord {
    uint64_t trial_index = 0;
    GameKind kind = GameKind::kThreeBox;
    std::vector<LoggedMove> moves;
    std::optional<bool> found;
    std::optional<bool> accepted;
    std::map<Role, double> payoffs;
    uint64_t rng_draws = 0;
    bool counted = false;
    bool win = false;
};

/// Integer tallies; merging is associative and commutative, so any split of
/// the trial range across threads gives the same totals.
struct RunCounters {
    int64_t trials = 0;
    int64_t accepted = 0;
    int64_t wins_accepted = 0;
    /// Three-box: Bob found the particle on a non-inspection trial.
    int64_t found = 0;
    int64_t accepted_found = 0;
    int64_t caught_cheating = 0;
    /// BB84: Team 1 declared eavesdropping although Eve touched nothing.
    int64_t false_alarms = 0;
    /// Trials where some Team 1 role received a negative payoff.
    int64_t team1_penalized = 0;

    void add(const TrialRecord &r);
    void merge(const RunCounters &o);
    bool operator==(const RunCounters &) const = default;
};

struct RunReport {
    std::string game;
    std::string config_hash;
    std::string profile;
    int64_t n_trials = 0;
    int64_t n_accepted = 0;
    int64_t n_wins_accepted = 0;
    double accept_rate = 0;
    double conditional_win_rate = 0;
    std::array<double, 2> wilson95{0, 0};
    uint64_t seed = 0;
    bool no_accepted_trials = true;
    double wall_time_ms = 0;

    bool operator==(const RunReport &) const = default;
};

/// Column order of the CSV form; identical to the JSON field order with the
/// interval split in two.
const std::vector<std::string> &report_columns();

struct RunOptions {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    bool keep_records = false;
};

struct RunResult {
    RunReport report;
    RunCounters counters;
    /// Ordered by trial index; empty unless keep_records.
    std::vector<TrialRecord> records;
};

/// Plays trial `trial_index` with its own stream (seed, trial_index).
TrialRecord play_trial(
    GameKind kind, const std::map<Role, Policy> &policies, const GameConfig &config, uint64_t seed,
    uint64_t trial_index);

/// Replays a trial from its coordinates and returns the terminal state.
GameState replay_trial(
    GameKind kind, const std::map<Role, Policy> &policies, const GameConfig &config, uint64_t seed,
    uint64_t trial_index);

RunResult run_trials_detailed(
    GameKind kind, const Profile &profile, const GameConfig &config, int64_t n, uint64_t seed,
    const RunOptions &options = {});

RunReport run_trials(
    GameKind kind, const Profile &profile, const GameConfig &config, int64_t n, uint64_t seed, unsigned threads = 0);

/// Wilson score interval at z = 1.96. (0, 0) when n = 0.
std::array<double, 2> wilson_interval(int64_t successes, int64_t n, double z = 1.959963984540054);

/// 16 hex digits of FNV-1a over the canonical config JSON.
std::string config_hash(const GameConfig &config);

enum class ReportFormat { kJson, kCsv };
ReportFormat parse_report_format(std::string_view name);

nlohmann::ordered_json to_json(const RunReport &report);
RunReport report_from_json(const nlohmann::json &j);
/// Header line plus one row.
std::string to_csv(const RunReport &report);
RunReport report_from_csv(const std::string &text);

/// Writes to `path`, or to `out` when path is empty or "-". Throws
/// std::runtime_error on I/O failure.
void emit_report(const RunReport &report, ReportFormat format, const std::string &path, std::ostream &out);
RunReport read_report(const std::string &path);

/// QGA_SEED when set and numeric, else `fallback`.
uint64_t seed_from_env(uint64_t fallback);

}  // namespace qga
