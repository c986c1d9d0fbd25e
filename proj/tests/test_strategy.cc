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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qga/harness.h"
#include "qga/strategy.h"
#include "testkit/oracles.h"
#include "testkit/properties.h"

namespace qga {
namespace {

const std::set<Role> kThreeBoxRoles{Role::kAlice, Role::kBob};
const std::set<Role> kGhzRoles{Role::kPlayer1, Role::kPlayer2, Role::kPlayer3};

GameConfig with_delta(double d) {
    GameConfig c;
    c.disturbance_delta = d;
    return c;
}

GameConfig with_dephase(double p) {
    GameConfig c;
    c.dephasing_p = p;
    return c;
}

// ------------------------------------------------------------ enumeration

TEST(Enumerate, GhzSixtyFourProfiles) {
    auto list = enumerate_deterministic(GameKind::kGhz, kGhzRoles);
    EXPECT_EQ(list.size(), 64u);
    EXPECT_EQ(testkit::ghz_classical_count().profiles, 64);
    std::set<std::string> names;
    for (const auto &e : list) {
        names.insert(e.description);
    }
    EXPECT_EQ(names.size(), 64u);
}

TEST(Enumerate, MeyerEightProfiles) {
    auto list = enumerate_deterministic(GameKind::kMeyerCoin, {Role::kAlice, Role::kBob});
    EXPECT_EQ(list.size(), 8u);
    EXPECT_EQ(enumerate_deterministic(GameKind::kMeyerCoin, {Role::kAlice}).size(), 4u);
    EXPECT_EQ(enumerate_deterministic(GameKind::kMeyerCoin, {Role::kBob}).size(), 2u);
}

TEST(Enumerate, ThreeBoxPlacements) {
    auto alice = enumerate_deterministic(GameKind::kThreeBox, {Role::kAlice});
    std::set<std::string> placements;
    for (const auto &e : alice) {
        const auto &p = std::get<ThreeBoxProfile>(e.profile);
        const auto &place = std::get<ThreeBoxProfile::Place>(p.prepare);
        for (int i = 0; i < 3; i++) {
            if (place.weights[i] == 1) {
                placements.insert(std::string(to_string(static_cast<Box>(i))));
            }
        }
    }
    EXPECT_EQ(placements, (std::set<std::string>{"A", "B", "C"}));
    EXPECT_EQ(enumerate_deterministic(GameKind::kThreeBox, kThreeBoxRoles).size(), 30u);
}

TEST(Enumerate, NotEnumerable) {
    EXPECT_THROW(
        enumerate_deterministic(GameKind::kThreeBox, {Role::kAlice}, MoveClass::kQuantum), NotEnumerable);
    EXPECT_THROW(enumerate_deterministic(GameKind::kBb84Eaves, {Role::kTeam2Eve}), NotEnumerable);
}

// ------------------------------------------------------------ evaluate

TEST(Evaluate, ThreeBoxQuantumExact) {
    auto v = evaluate(GameKind::kThreeBox, quantum_profile(GameKind::kThreeBox), {});
    EXPECT_EQ(v.value, Rational(1));
    EXPECT_EQ(*v.detail("accept_rate"), Rational(1, 9));
    EXPECT_EQ(*v.detail("found_rate"), Rational(1, 3));
    auto oracle = testkit::three_box_quantum(0);
    EXPECT_NEAR(to_double(*v.detail("accept_rate")), oracle.accept_rate, 1e-12);
}

TEST(Evaluate, ThreeBoxDisturbanceMonotone) {
    Rational previous = 2;
    for (Rational d : {Rational(0), Rational(1, 10), Rational(3, 10), Rational(1, 2), Rational(9, 10), Rational(1)}) {
        auto v = evaluate(GameKind::kThreeBox, quantum_profile(GameKind::kThreeBox), with_delta(to_double(d)));
        Rational agf = *v.detail("accept_given_found");
        EXPECT_EQ(agf, (1 - d) / 3);
        EXPECT_NEAR(to_double(agf), testkit::three_box_quantum(to_double(d)).accept_given_find, 1e-12);
        EXPECT_LT(agf, previous);
        previous = agf;
        if (d < 1) {
            EXPECT_EQ(v.value, Rational(1));
        } else {
            EXPECT_EQ(v.value, Rational(0));
        }
    }
}

TEST(Evaluate, MeyerQuantumBeatsAnyBobWithoutDephasing) {
    for (Rational bob : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}) {
        auto p = std::get<MeyerProfile>(quantum_profile(GameKind::kMeyerCoin));
        p.bob_flip_prob = bob;
        EXPECT_EQ(evaluate(GameKind::kMeyerCoin, p, with_dephase(0)).value, Rational(1));
        double oracle = testkit::meyer_heads(testkit::hadamard(), to_double(bob), 1, testkit::hadamard());
        EXPECT_NEAR(to_double(evaluate(GameKind::kMeyerCoin, p, with_dephase(1)).value), oracle, 1e-12);
    }
}

TEST(Evaluate, MeyerPartialDephasingMatchesOracle) {
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        auto v = evaluate(GameKind::kMeyerCoin, quantum_profile(GameKind::kMeyerCoin), with_dephase(p));
        double oracle = testkit::meyer_heads(testkit::hadamard(), 0.5, p, testkit::hadamard());
        EXPECT_NEAR(v.decimal(), oracle, 1e-12) << p;
    }
}

TEST(Evaluate, GhzQuantumIsOne) {
    auto v = evaluate(GameKind::kGhz, quantum_profile(GameKind::kGhz), {});
    EXPECT_EQ(v.value, Rational(1));
    EXPECT_NEAR(v.decimal(), testkit::ghz_quantum_win(), 1e-12);
}

TEST(Evaluate, Bb84MatchesOracle) {
    auto v = evaluate(GameKind::kBb84Eaves, quantum_profile(GameKind::kBb84Eaves), {});
    EXPECT_EQ(*v.detail("per_check_error"), Rational(1, 4));
    EXPECT_NEAR(v.decimal(), testkit::bb84_detection(128, 16, 0.25), 1e-12);
    EXPECT_NEAR(v.decimal(), 1 - std::pow(0.75, 16), 1e-4);
    for (double f : {0.0, 0.5}) {
        Bb84Profile p{to_rational(f)};
        auto w = evaluate(GameKind::kBb84Eaves, p, {});
        EXPECT_NEAR(to_double(*w.detail("per_check_error")), testkit::bb84_check_error(f), 1e-15);
        EXPECT_NEAR(w.decimal(), testkit::bb84_detection(128, 16, testkit::bb84_check_error(f)), 1e-12);
    }
}

TEST(Evaluate, InfeasibleProfileRejected) {
    auto p = std::get<ThreeBoxProfile>(quantum_profile(GameKind::kThreeBox));
    p.final = ThreeBoxProfile::AcceptIfFound{};
    EXPECT_THROW(evaluate(GameKind::kThreeBox, p, {}), InfeasibleProfile);
    EXPECT_THROW(make_policies(p, {}), InfeasibleProfile);
}

TEST(Evaluate, CancelEverythingScoresZero) {
    auto p = std::get<ThreeBoxProfile>(quantum_profile(GameKind::kThreeBox));
    p.final = ThreeBoxProfile::CancelAll{};
    auto v = evaluate(GameKind::kThreeBox, p, {});
    EXPECT_EQ(v.value, Rational(0));
    EXPECT_EQ(*v.detail("accept_rate"), Rational(0));
}

TEST(Evaluate, ValuesInUnitInterval) {
    GameConfig c;
    for (auto kind : {GameKind::kThreeBox, GameKind::kMeyerCoin, GameKind::kGhz}) {
        std::set<Role> roles;
        for (Role r : roles_of(kind)) {
            if (r != auditor_of(kind)) {
                roles.insert(r);
            }
        }
        for (const auto &e : enumerate_deterministic(kind, roles)) {
            auto v = evaluate(kind, e.profile, c);
            EXPECT_GE(v.value, 0);
            EXPECT_LE(v.value, 1);
        }
    }
}

// ------------------------------------------------------------ classical values

TEST(ClassicalValue, ThreeBoxHalf) {
    auto v = classical_value(GameKind::kThreeBox, {});
    EXPECT_EQ(v.value, Rational(1, 2));
    // Oracle: the matrix from the rules, minimax by grid over Bob's mixture.
    std::vector<std::vector<double>> m;
    for (const auto &row : testkit::three_box_matrix()) {
        m.push_back({static_cast<double>(row[0]), static_cast<double>(row[1])});
    }
    EXPECT_EQ(m, (std::vector<std::vector<double>>{{1, 0}, {0, 1}, {0, 0}}));
    EXPECT_DOUBLE_EQ(testkit::two_column_minimax_grid(m, 1000), 0.5);
}

TEST(ClassicalValue, MeyerHalf) {
    auto v = classical_value(GameKind::kMeyerCoin, {});
    EXPECT_EQ(v.value, Rational(1, 2));
    EXPECT_DOUBLE_EQ(testkit::two_column_minimax_grid(testkit::meyer_matrix(), 1000), 0.5);
    // Every one of the 8 deterministic profiles is a 0 or 1 outcome.
    for (const auto &e : enumerate_deterministic(GameKind::kMeyerCoin, {Role::kAlice, Role::kBob})) {
        auto x = evaluate(GameKind::kMeyerCoin, e.profile, {}).value;
        EXPECT_TRUE(x == 0 || x == 1) << e.description;
    }
}

TEST(ClassicalValue, GhzThreeQuarters) {
    auto v = classical_value(GameKind::kGhz, {});
    EXPECT_EQ(v.value, Rational(3, 4));
    auto oracle = testkit::ghz_classical_count();
    EXPECT_EQ(oracle.best_wins_of_4, 3);
    EXPECT_FALSE(v.argmax.empty());
}

TEST(ClassicalValue, Bb84NotReducible) {
    EXPECT_THROW(classical_value(GameKind::kBb84Eaves, {}), NonReducible);
}

TEST(ClassicalValue, QuantumDominance) {
    EXPECT_GT(quantum_value(GameKind::kThreeBox, {}).value, classical_value(GameKind::kThreeBox, {}).value);
    EXPECT_GT(quantum_value(GameKind::kGhz, {}).value, classical_value(GameKind::kGhz, {}).value);
    EXPECT_GT(
        quantum_value(GameKind::kMeyerCoin, with_dephase(0)).value, classical_value(GameKind::kMeyerCoin, {}).value);
}

TEST(ClassicalValue, GhzLinearity) {
    // Uniform mixture over the 64 profiles equals the mean per-profile value.
    Rational total = 0;
    auto list = enumerate_deterministic(GameKind::kGhz, kGhzRoles);
    for (const auto &e : list) {
        total += evaluate(GameKind::kGhz, e.profile, {}).value;
    }
    Rational mean = total / static_cast<int>(list.size());
    EXPECT_NEAR(to_double(mean), testkit::ghz_classical_count().mean_win, 1e-12);
}

TEST(MatrixGame, SolveTwoColumn) {
    auto s = solve_two_column({{1, 0}, {0, 1}, {0, 0}});
    EXPECT_EQ(s.value, Rational(1, 2));
    EXPECT_EQ(s.column0, Rational(1, 2));
    auto d = solve_two_column({{Rational(3), Rational(1)}, {Rational(2), Rational(2)}});
    EXPECT_EQ(d.value, Rational(2));
    // Matching pennies with a bias: rows (2,-1), (-1,1) -> value 1/5.
    auto b = solve_two_column({{Rational(2), Rational(-1)}, {Rational(-1), Rational(1)}});
    EXPECT_EQ(b.value, Rational(1, 5));
    std::vector<std::vector<double>> m{{2, -1}, {-1, 1}};
    EXPECT_NEAR(testkit::two_column_minimax_grid(m, 1000), 0.2, 1e-12);
}

TEST(MatrixGame, AgreesWithGridOracleOnRandomMatrices) {
    std::mt19937_64 g(8);
    for (int t = 0; t < 300; t++) {
        size_t rows = 1 + g() % 5;
        std::vector<std::array<Rational, 2>> exact;
        std::vector<std::vector<double>> approx;
        for (size_t r = 0; r < rows; r++) {
            int a = static_cast<int>(g() % 11) - 5, b = static_cast<int>(g() % 11) - 5;
            exact.push_back({a, b});
            approx.push_back({double(a), double(b)});
        }
        double grid = testkit::two_column_minimax_grid(approx, 20000);
        double got = to_double(solve_two_column(exact).value);
        // The grid overestimates by at most slope x step.
        EXPECT_LE(got, grid + 1e-12);
        EXPECT_GE(got, grid - 10.0 / 20000 - 1e-12);
    }
}

// ------------------------------------------------------------ independence

TEST(Independence, ConstantDecisions) {
    auto alice = enumerate_deterministic(GameKind::kThreeBox, kThreeBoxRoles);
    for (const auto &e : alice) {
        EXPECT_TRUE(conditional_independence_check(e.profile, {})) << e.description;
    }
    ThreeBoxProfile p;
    p.prepare = ThreeBoxProfile::Place{{1, 0, 0}};
    p.bob = {Rational(1, 2), Rational(1, 2), 0};
    p.final = ThreeBoxProfile::AcceptAll{};
    EXPECT_TRUE(conditional_independence_check(p, {}));
    p.final = ThreeBoxProfile::CancelAll{};
    EXPECT_TRUE(conditional_independence_check(p, {}));
    // The quantum strategy is the point: acceptance correlates with found.
    EXPECT_FALSE(conditional_independence_check(quantum_profile(GameKind::kThreeBox), {}));
}

TEST(Properties, ClassicalIndependenceAll) {
    auto r = testkit::classical_independence_all();
    EXPECT_TRUE(r.ok) << r.detail;
}

// ------------------------------------------------------------ build_profile

TEST(BuildProfile, NamesAndErrors) {
    GameConfig c;
    EXPECT_NO_THROW(build_profile(GameKind::kThreeBox, {{"alice", "classical"}, {"bob", "uniform-inspect"}}, c));
    EXPECT_NO_THROW(build_profile(GameKind::kBb84Eaves, {{"eve", "0.25"}}, c));
    EXPECT_THROW(build_profile(GameKind::kThreeBox, {{"alice", "wizard"}}, c), std::invalid_argument);
    EXPECT_THROW(build_profile(GameKind::kThreeBox, {{"eve", "pass"}}, c), std::invalid_argument);
    EXPECT_THROW(build_profile(GameKind::kBb84Eaves, {{"eve", "1.5"}}, c), std::invalid_argument);
    auto p = build_profile(GameKind::kGhz, {{"players", "classical"}}, c);
    EXPECT_EQ(evaluate(GameKind::kGhz, p, c).value, Rational(3, 4));
}

// ------------------------------------------------------------ MC vs exact

struct McCase {
    GameKind kind;
    std::map<std::string, std::string> policies;
    GameConfig config;
};

TEST(MonteCarlo, AgreesWithExactWithinFourSigma) {
    std::vector<McCase> cases = {
        {GameKind::kThreeBox, {{"alice", "quantum"}, {"bob", "uniform"}}, with_delta(0)},
        {GameKind::kThreeBox, {{"alice", "quantum"}, {"bob", "A"}}, with_delta(0.3)},
        {GameKind::kThreeBox, {{"alice", "classical"}, {"bob", "uniform"}}, with_delta(0)},
        {GameKind::kThreeBox, {{"alice", "place-C"}, {"bob", "uniform-inspect"}}, with_delta(0)},
        {GameKind::kMeyerCoin, {{"alice", "quantum"}, {"bob", "uniform"}}, with_dephase(1)},
        {GameKind::kMeyerCoin, {{"alice", "quantum"}, {"bob", "flip"}}, with_dephase(0.5)},
        {GameKind::kMeyerCoin, {{"alice", "classical"}, {"bob", "uniform"}}, with_dephase(1)},
        {GameKind::kGhz, {{"players", "quantum"}}, {}},
        {GameKind::kGhz, {{"players", "classical"}}, {}},
        {GameKind::kBb84Eaves, {{"eve", "0.1"}}, {}},
    };
    for (const auto &c : cases) {
        auto profile = build_profile(c.kind, c.policies, c.config);
        auto exact = evaluate(c.kind, profile, c.config);
        const int64_t n = c.kind == GameKind::kBb84Eaves ? 20000 : 100000;
        auto run = run_trials_detailed(c.kind, profile, c.config, n, 42, {0, c.kind == GameKind::kBb84Eaves});
        // Three-box reports the conditional rate; its denominator is the
        // number of accepted trials. BB84's exact value is the declaration
        // rate, read off the move logs.
        int64_t denom = c.kind == GameKind::kThreeBox ? run.counters.accepted : n;
        int64_t hits = c.kind == GameKind::kThreeBox ? run.counters.wins_accepted : run.report.n_wins_accepted;
        if (c.kind == GameKind::kBb84Eaves) {
            hits = 0;
            for (const auto &rec : run.records) {
                for (const auto &lm : rec.moves) {
                    hits += std::holds_alternative<moves::DeclareEavesdropping>(lm.move);
                }
            }
        }
        double v = exact.decimal();
        double est = denom ? static_cast<double>(hits) / denom : 0;
        double sigma = denom ? std::sqrt(v * (1 - v) / denom) : 0;
        EXPECT_NEAR(est, v, std::max(4 * sigma, 1e-12)) << describe(profile);
        if (const Rational *ar = exact.detail("accept_rate")) {
            double a = to_double(*ar);
            EXPECT_NEAR(run.report.accept_rate, a, std::max(4 * std::sqrt(a * (1 - a) / n), 1e-12));
        }
    }
}

}  // namespace
}  // namespace qga
