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
#include <map>
#include <set>

#include "qga/codec.h"
#include "qga/games.h"
#include "testkit/oracles.h"
#include "testkit/properties.h"

namespace qga {
namespace {

const double r2 = std::sqrt(0.5);  // correctly rounded 1/sqrt(2)
const double r3 = 1 / std::sqrt(3.0);

GameState start(GameKind kind, const GameConfig &config = {}, uint64_t seed = 42, uint64_t trial = 0) {
    RandomStream rng(seed, trial);
    return new_game(kind, config, rng);
}

GameState play(const GameState &s, Role r, const Move &m, RandomStream &rng) {
    return apply_move(s, r, m, rng);
}

std::set<std::string> move_names(const std::vector<Move> &ms) {
    std::set<std::string> out;
    for (const auto &m : ms) {
        out.insert(std::string(move_name(m)) + nlohmann::json(to_json(m)).value("box", ""));
    }
    return out;
}

// ------------------------------------------------------------ names

TEST(Names, GameKindsRoundTrip) {
    for (auto k : {GameKind::kThreeBox, GameKind::kMeyerCoin, GameKind::kGhz, GameKind::kBb84Eaves}) {
        EXPECT_EQ(parse_game_kind(to_string(k)), k);
    }
    EXPECT_EQ(to_string(GameKind::kMeyerCoin), "meyer-coin");
    EXPECT_EQ(parse_game_kind("meyer"), GameKind::kMeyerCoin);
    EXPECT_EQ(parse_game_kind("bb84"), GameKind::kBb84Eaves);
    EXPECT_THROW(parse_game_kind("chess"), std::invalid_argument);
}

TEST(Names, RolesRoundTrip) {
    for (auto k : {GameKind::kThreeBox, GameKind::kMeyerCoin, GameKind::kGhz, GameKind::kBb84Eaves}) {
        for (Role r : roles_of(k)) {
            EXPECT_EQ(parse_role(to_string(r)), r);
        }
    }
    EXPECT_EQ(auditor_of(GameKind::kThreeBox), Role::kTrustedParty);
    EXPECT_EQ(auditor_of(GameKind::kGhz), Role::kReferee);
    EXPECT_THROW(parse_role("dealer"), std::invalid_argument);
}

TEST(Config, Validation) {
    GameConfig c;
    EXPECT_NO_THROW(c.validate());
    c.dephasing_p = 1.1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.disturbance_delta = -0.1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.bb84_check_bits = 200;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.payoffs.false_alarm_penalty = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.inspect_prob = 2;
    RandomStream rng(0, 0);
    EXPECT_THROW(new_game(GameKind::kThreeBox, c, rng), std::invalid_argument);
}

// ------------------------------------------------------------ new_game

TEST(NewGame, MeyerStartsHeadsUp) {
    auto s = start(GameKind::kMeyerCoin);
    EXPECT_TRUE(std::get<MeyerHidden>(s.hidden).coin == basis_state(meyer::basis(), "head"));
    EXPECT_EQ(s.stage, 0);
}

TEST(NewGame, ThreeBoxHasNoParticleYet) {
    auto s = start(GameKind::kThreeBox);
    EXPECT_EQ(s.stage, 0);
    EXPECT_FALSE(std::get<ThreeBoxHidden>(s.hidden).particle.has_value());
    EXPECT_EQ(to_move(s), Role::kAlice);
}

TEST(NewGame, GhzQuestionFromTheFourElementSet) {
    std::map<std::string, int> seen;
    for (uint64_t t = 0; t < 4000; t++) {
        auto s = start(GameKind::kGhz, {}, 42, t);
        const auto &q = std::get<GhzHidden>(s.hidden).questions;
        std::string key;
        for (auto a : q) {
            key += to_string(a);
        }
        seen[key]++;
    }
    ASSERT_EQ(seen.size(), 4u);
    for (const auto &k : {"xxx", "xyy", "yxy", "yyx"}) {
        EXPECT_NEAR(seen[k], 1000, 4 * std::sqrt(4000 * 0.25 * 0.75)) << k;
    }
    auto s = start(GameKind::kGhz);
    EXPECT_TRUE(std::get<GhzHidden>(s.hidden).shared == ghz::shared_state());
}

TEST(NewGame, Bb84DrawsTeamOneBitsAndBases) {
    auto s = start(GameKind::kBb84Eaves);
    const auto &h = std::get<Bb84Hidden>(s.hidden);
    EXPECT_EQ(h.sender_bits.size(), 128u);
    EXPECT_EQ(h.sender_bases.size(), 128u);
    EXPECT_EQ(h.receiver_bases.size(), 128u);
    EXPECT_FALSE(h.transmitted);
}

// ------------------------------------------------------------ legal_moves

TEST(LegalMoves, ThreeBoxBobAtStageOne) {
    RandomStream rng(1, 1);
    auto s = play(start(GameKind::kThreeBox), Role::kAlice, moves::ClassicalPlace{Box::kA}, rng);
    EXPECT_EQ(move_names(legal_moves(s, Role::kBob)), (std::set<std::string>{"openA", "openB", "inspect_both"}));
    EXPECT_TRUE(legal_moves(s, Role::kAlice).empty());
    EXPECT_TRUE(legal_moves(s, Role::kTrustedParty).empty());
}

TEST(LegalMoves, MeyerBobFlipsOrNot) {
    RandomStream rng(1, 1);
    auto s = play(start(GameKind::kMeyerCoin), Role::kAlice, moves::ApplyUnitary{gates::hadamard()}, rng);
    EXPECT_EQ(move_names(legal_moves(s, Role::kBob)), (std::set<std::string>{"flip", "no_flip"}));
    EXPECT_TRUE(legal_moves(s, Role::kAlice).empty());
}

// ------------------------------------------------------------ check_legal

TEST(CheckLegal, Reasons) {
    auto s = start(GameKind::kThreeBox);
    auto reason = [](const GameState &st, Role r, const Move &m) {
        try {
            check_legal(st, r, m);
        } catch (const IllegalMove &e) {
            return static_cast<int>(e.reason());
        }
        return -1;
    };
    using R = IllegalMove::Reason;
    EXPECT_EQ(reason(s, Role::kBob, moves::Open{Box::kA}), static_cast<int>(R::kWrongTurn));
    EXPECT_EQ(reason(s, Role::kAlice, moves::Open{Box::kA}), static_cast<int>(R::kNotAllowed));
    EXPECT_EQ(reason(s, Role::kAlice, moves::QuantumPrepare{{1, 1, 1}}), static_cast<int>(R::kMalformed));
    EXPECT_EQ(reason(s, Role::kAlice, moves::QuantumPrepare{{1, 0}}), static_cast<int>(R::kMalformed));
    EXPECT_EQ(reason(s, Role::kAlice, moves::QuantumPrepare{{r3, r3, r3}}), -1);
    RandomStream rng(0, 0);
    auto s1 = play(s, Role::kAlice, moves::ClassicalPlace{Box::kA}, rng);
    EXPECT_EQ(reason(s1, Role::kBob, moves::Open{Box::kC}), static_cast<int>(R::kNotAllowed));
    auto s2 = play(s1, Role::kBob, moves::Open{Box::kA}, rng);
    auto s3 = play(s2, Role::kAlice, moves::Accept{}, rng);
    EXPECT_TRUE(is_terminal(s3));
    EXPECT_EQ(reason(s3, Role::kAlice, moves::Accept{}), static_cast<int>(R::kTerminal));
    // Bob opening twice in one trial: not his turn anymore.
    EXPECT_EQ(reason(s2, Role::kBob, moves::Open{Box::kA}), static_cast<int>(R::kWrongTurn));

    auto g = start(GameKind::kGhz);
    EXPECT_EQ(reason(g, Role::kPlayer1, moves::Answer{0}), static_cast<int>(R::kMalformed));
    auto b = start(GameKind::kBb84Eaves);
    EXPECT_EQ(reason(b, Role::kTeam2Eve, moves::EveActions{{}}), static_cast<int>(R::kMalformed));
    auto m = start(GameKind::kMeyerCoin);
    EXPECT_EQ(reason(m, Role::kAlice, moves::ApplyUnitary{UnitaryOp::identity(3)}), static_cast<int>(R::kMalformed));
}

TEST(ApplyMove, StageAdvancesAndLogs) {
    RandomStream rng(0, 0);
    auto s = start(GameKind::kThreeBox);
    auto s1 = play(s, Role::kAlice, moves::ClassicalPlace{Box::kB}, rng);
    EXPECT_EQ(s.stage, 0);
    EXPECT_EQ(s1.stage, 1);
    ASSERT_EQ(s1.log.size(), 1u);
    EXPECT_EQ(s1.log[0].role, Role::kAlice);
    EXPECT_THROW(play(s1, Role::kAlice, moves::Accept{}, rng), IllegalMove);
}

// ------------------------------------------------------------ three-box

TEST(ThreeBox, FindRateOneThird) {
    const int n = 100000;
    int found = 0;
    for (int t = 0; t < n; t++) {
        RandomStream rng(21, t);
        auto s = new_game(GameKind::kThreeBox, {}, rng);
        s = play(s, Role::kAlice, moves::QuantumPrepare{{r3, r3, r3}}, rng);
        s = play(s, Role::kBob, moves::Open{Box::kA}, rng);
        found += *s.found;
        EXPECT_TRUE(view(s, Role::kTrustedParty).find("found") != nullptr);
    }
    double p = 1.0 / 3;
    EXPECT_NEAR(static_cast<double>(found) / n, p, 4 * std::sqrt(p * (1 - p) / n));
}

TEST(ThreeBox, NotFoundLeavesExactSuperposition) {
    for (int t = 0; t < 100; t++) {
        RandomStream rng(22, t);
        auto s = new_game(GameKind::kThreeBox, {}, rng);
        s = play(s, Role::kAlice, moves::QuantumPrepare{{r3, r3, r3}}, rng);
        s = play(s, Role::kBob, moves::Open{Box::kA}, rng);
        if (!*s.found) {
            const auto &p = *std::get<ThreeBoxHidden>(s.hidden).particle;
            EXPECT_EQ(p.amp("A"), Amplitude(0));
            EXPECT_EQ(p.amp("B"), Amplitude(r2));
            EXPECT_EQ(p.amp("C"), Amplitude(r2));
            EXPECT_EQ(p.amp("D"), Amplitude(0));
        }
    }
}

struct ThreeBoxTally {
    int64_t accepted = 0, accepted_found = 0, found = 0, n = 0;
};

ThreeBoxTally run_quantum_alice(Box bob, double delta, int n, uint64_t seed) {
    GameConfig c;
    c.disturbance_delta = delta;
    ThreeBoxTally out;
    for (int t = 0; t < n; t++) {
        RandomStream rng(seed, t);
        auto s = new_game(GameKind::kThreeBox, c, rng);
        s = play(s, Role::kAlice, moves::QuantumPrepare{{r3, r3, r3}}, rng);
        s = play(s, Role::kBob, moves::Open{bob}, rng);
        s = play(s, Role::kAlice, moves::MeasureOnto{{r3, r3, -r3}}, rng);
        out.n++;
        out.found += *s.found;
        out.accepted += *s.accepted;
        out.accepted_found += *s.accepted && *s.found;
    }
    return out;
}

TEST(ThreeBox, ConditionalWinTheorem) {
    for (Box bob : {Box::kA, Box::kB}) {
        for (double delta : {0.0, 0.3, 1.0}) {
            auto t = run_quantum_alice(bob, delta, 100000, 100 + static_cast<int>(bob));
            // Among accepted trials, the particle was found every time.
            EXPECT_EQ(t.accepted_found, t.accepted) << "bob " << to_string(bob) << " delta " << delta;
            auto oracle = testkit::three_box_quantum(delta);
            double p = oracle.accept_rate;
            double sigma = std::sqrt(p * (1 - p) / t.n);
            EXPECT_NEAR(static_cast<double>(t.accepted) / t.n, p, std::max(4 * sigma, 1e-12));
            if (delta == 1.0) {
                EXPECT_EQ(t.accepted, 0);
            }
        }
    }
}

TEST(ThreeBox, AcceptRateOneNinthAgainstUniformBob) {
    const int n = 100000;
    int64_t accepted = 0;
    for (int t = 0; t < n; t++) {
        RandomStream rng(23, t);
        auto s = new_game(GameKind::kThreeBox, {}, rng);
        s = play(s, Role::kAlice, moves::QuantumPrepare{{r3, r3, r3}}, rng);
        s = play(s, Role::kBob, moves::Open{rng.bernoulli(0.5) ? Box::kA : Box::kB}, rng);
        s = play(s, Role::kAlice, moves::MeasureOnto{{r3, r3, -r3}}, rng);
        accepted += *s.accepted;
    }
    double p = testkit::three_box_quantum(0).accept_rate;
    EXPECT_NEAR(p, 1.0 / 9, 1e-12);
    EXPECT_NEAR(static_cast<double>(accepted) / n, p, 4 * std::sqrt(p * (1 - p) / n));
}

TEST(ThreeBox, SymmetryUnderRelabeling) {
    // Same stream, A <-> B swapped: outcomes match trial by trial, and the
    // post-states are mirror images.
    for (int t = 0; t < 20000; t++) {
        RandomStream ra(24, t), rb(24, t);
        auto a = new_game(GameKind::kThreeBox, {}, ra);
        auto b = new_game(GameKind::kThreeBox, {}, rb);
        a = play(a, Role::kAlice, moves::QuantumPrepare{{r3, r3, r3}}, ra);
        b = play(b, Role::kAlice, moves::QuantumPrepare{{r3, r3, r3}}, rb);
        a = play(a, Role::kBob, moves::Open{Box::kA}, ra);
        b = play(b, Role::kBob, moves::Open{Box::kB}, rb);
        ASSERT_EQ(*a.found, *b.found);
        const auto &pa = *std::get<ThreeBoxHidden>(a.hidden).particle;
        const auto &pb = *std::get<ThreeBoxHidden>(b.hidden).particle;
        ASSERT_EQ(pa.amp("A"), pb.amp("B"));
        ASSERT_EQ(pa.amp("B"), pb.amp("A"));
        ASSERT_EQ(pa.amp("C"), pb.amp("C"));
        a = play(a, Role::kAlice, moves::MeasureOnto{{r3, r3, -r3}}, ra);
        b = play(b, Role::kAlice, moves::MeasureOnto{{r3, r3, -r3}}, rb);
        ASSERT_EQ(*a.accepted, *b.accepted);
        ASSERT_EQ(payoff(a).payoffs, payoff(b).payoffs);
    }
}

TEST(ThreeBox, AntiCheat) {
    GameConfig c;
    for (int t = 0; t < 1000; t++) {
        RandomStream rng(25, t);
        auto s = new_game(GameKind::kThreeBox, c, rng);
        s = play(s, Role::kAlice, moves::CheatTwoParticles{}, rng);
        auto inspected = play(s, Role::kBob, moves::InspectBoth{}, rng);
        ASSERT_TRUE(inspected.caught_cheating);
        auto opened = play(s, Role::kBob, moves::Open{t % 2 ? Box::kA : Box::kB}, rng);
        ASSERT_TRUE(*opened.found);
        ASSERT_FALSE(opened.caught_cheating);
        auto done = play(inspected, Role::kAlice, moves::Accept{}, rng);
        auto out = payoff(done);
        EXPECT_EQ(out.payoffs.at(Role::kAlice), c.payoffs.cheat_caught_penalty);
        EXPECT_FALSE(out.counted);
    }
}

TEST(ThreeBox, HonestAliceNeverCaught) {
    for (int t = 0; t < 1000; t++) {
        RandomStream rng(26, t);
        auto s = new_game(GameKind::kThreeBox, {}, rng);
        s = play(s, Role::kAlice, moves::QuantumPrepare{{r3, r3, r3}}, rng);
        s = play(s, Role::kBob, moves::InspectBoth{}, rng);
        ASSERT_FALSE(s.caught_cheating);
    }
}

TEST(ThreeBox, Payoffs) {
    RandomStream rng(0, 0);
    auto s = play(start(GameKind::kThreeBox), Role::kAlice, moves::ClassicalPlace{Box::kA}, rng);
    auto found = play(s, Role::kBob, moves::Open{Box::kA}, rng);
    auto missed = play(s, Role::kBob, moves::Open{Box::kB}, rng);
    auto win = payoff(play(found, Role::kAlice, moves::Accept{}, rng));
    EXPECT_EQ(win.payoffs.at(Role::kAlice), 1);
    EXPECT_TRUE(win.counted);
    EXPECT_TRUE(win.win);
    auto loss = payoff(play(missed, Role::kAlice, moves::Accept{}, rng));
    EXPECT_EQ(loss.payoffs.at(Role::kAlice), 0);
    EXPECT_TRUE(loss.counted);
    EXPECT_FALSE(loss.win);
    auto canceled = payoff(play(found, Role::kAlice, moves::Cancel{}, rng));
    EXPECT_FALSE(canceled.counted);
    EXPECT_THROW(payoff(found), std::logic_error);
}

TEST(ThreeBox, Views) {
    RandomStream rng(0, 0);
    auto s = play(start(GameKind::kThreeBox), Role::kAlice, moves::QuantumPrepare{{r3, r3, r3}}, rng);
    auto bob = view(s, Role::kBob);
    EXPECT_EQ(bob.stage, 1);
    EXPECT_TRUE(bob.own_moves.empty());
    EXPECT_TRUE(bob.observations.empty());
    EXPECT_FALSE(testkit::has_amplitude_field(to_json(bob)));

    s = play(s, Role::kBob, moves::Open{Box::kA}, rng);
    auto tp = view(s, Role::kTrustedParty);
    ASSERT_NE(tp.find("found"), nullptr);
    EXPECT_EQ(std::get<bool>(*tp.find("found")), *s.found);
    auto alice = view(s, Role::kAlice);
    EXPECT_EQ(alice.find("bob_opened"), nullptr);
    EXPECT_EQ(alice.find("found"), nullptr);
    for (const auto &m : alice.own_moves) {
        EXPECT_FALSE(std::holds_alternative<moves::Open>(m));
    }
    auto bob2 = view(s, Role::kBob);
    ASSERT_EQ(bob2.own_moves.size(), 1u);
    ASSERT_NE(bob2.find("found"), nullptr);
    EXPECT_THROW(view(s, Role::kReferee), std::invalid_argument);
}

// ------------------------------------------------------------ meyer

TEST(Meyer, FlipLeavesEqualSuperpositionBitExact) {
    auto plus = apply(gates::hadamard(), basis_state(meyer::basis(), "head"));
    auto flipped = apply(gates::pauli_x(), plus);
    for (size_t i = 0; i < 2; i++) {
        EXPECT_NEAR(std::abs(flipped.amp(i) - plus.amp(i)), 0, 1e-12);
    }
}

TEST(Meyer, QuantumAliceAlwaysWinsWithoutDephasing) {
    GameConfig c;
    c.dephasing_p = 0;
    for (int t = 0; t < 1000; t++) {
        RandomStream rng(30, t);
        auto s = new_game(GameKind::kMeyerCoin, c, rng);
        s = play(s, Role::kAlice, moves::ApplyUnitary{gates::hadamard()}, rng);
        s = play(s, Role::kBob, t % 2 ? Move(moves::Flip{}) : Move(moves::NoFlip{}), rng);
        s = play(s, Role::kAlice, moves::ApplyUnitary{gates::hadamard()}, rng);
        ASSERT_TRUE(*std::get<MeyerHidden>(s.hidden).heads);
        ASSERT_EQ(payoff(s).payoffs.at(Role::kAlice), 1);
    }
}

TEST(Meyer, FullDephasingGivesHalf) {
    GameConfig c;
    c.dephasing_p = 1;
    const int n = 100000;
    int heads = 0;
    for (int t = 0; t < n; t++) {
        RandomStream rng(31, t);
        auto s = new_game(GameKind::kMeyerCoin, c, rng);
        s = play(s, Role::kAlice, moves::ApplyUnitary{gates::hadamard()}, rng);
        s = play(s, Role::kBob, moves::Flip{}, rng);
        s = play(s, Role::kAlice, moves::ApplyUnitary{gates::hadamard()}, rng);
        heads += *std::get<MeyerHidden>(s.hidden).heads;
    }
    double p = testkit::meyer_heads(testkit::hadamard(), 1, 1, testkit::hadamard());
    EXPECT_NEAR(static_cast<double>(heads) / n, p, 4 * std::sqrt(p * (1 - p) / n));
}

TEST(Meyer, BobNeverSeesCoin) {
    RandomStream rng(0, 0);
    auto s = play(start(GameKind::kMeyerCoin), Role::kAlice, moves::ApplyUnitary{gates::hadamard()}, rng);
    auto bob = view(s, Role::kBob);
    EXPECT_TRUE(bob.observations.empty());
    EXPECT_FALSE(testkit::has_amplitude_field(to_json(bob)));
    EXPECT_FALSE(testkit::has_fractional_number(to_json(bob)));
}

// ------------------------------------------------------------ ghz

TEST(Ghz, WinPredicate) {
    using A = Axis;
    EXPECT_TRUE(ghz::team_wins({A::kX, A::kX, A::kX}, {1, 1, 1}));
    EXPECT_FALSE(ghz::team_wins({A::kX, A::kX, A::kX}, {1, 1, -1}));
    EXPECT_TRUE(ghz::team_wins({A::kX, A::kY, A::kY}, {1, 1, -1}));
    EXPECT_FALSE(ghz::team_wins({A::kY, A::kY, A::kX}, {1, 1, 1}));
}

TEST(Ghz, QuantumMeasurementAlwaysWins) {
    EXPECT_NEAR(testkit::ghz_quantum_win(), 1.0, 1e-12);
    for (int t = 0; t < 4000; t++) {
        RandomStream rng(40, t);
        auto s = new_game(GameKind::kGhz, {}, rng);
        for (int i = 0; i < 3; i++) {
            Role r = ghz::player_role(i);
            auto v = view(s, r);
            Axis a = std::get<std::string>(*v.find("question")) == "x" ? Axis::kX : Axis::kY;
            s = play(s, r, moves::MeasureQubit{a}, rng);
        }
        ASSERT_TRUE(payoff(s).win);
    }
}

TEST(Ghz, PlayersSeeOnlyTheirOwnQuestion) {
    // A player's decision input is its RoleView; it must carry exactly one
    // question and no other player's answer.
    for (int t = 0; t < 200; t++) {
        RandomStream rng(41, t);
        auto s = new_game(GameKind::kGhz, {}, rng);
        for (int i = 0; i < 3; i++) {
            Role r = ghz::player_role(i);
            auto v = view(s, r);
            std::set<std::string> keys;
            for (const auto &[k, val] : v.observations) {
                keys.insert(k);
            }
            EXPECT_EQ(keys, std::set<std::string>{"question"});
            s = play(s, r, moves::Answer{1}, rng);
            auto after = view(s, r);
            EXPECT_NE(after.find("answer"), nullptr);
        }
        // Earlier players do not see later answers except the final verdict.
        auto v = view(s, Role::kPlayer1);
        for (const auto &[k, val] : v.observations) {
            EXPECT_TRUE(k == "question" || k == "answer" || k == "team_wins") << k;
        }
    }
}

TEST(Ghz, TurnOrder) {
    auto s = start(GameKind::kGhz);
    EXPECT_EQ(to_move(s), Role::kPlayer1);
    EXPECT_TRUE(legal_moves(s, Role::kPlayer2).empty());
}

// ------------------------------------------------------------ bb84

TEST(Bb84, FalseAlarmCostsTeamOne) {
    GameConfig c;
    RandomStream rng(0, 0);
    auto s = new_game(GameKind::kBb84Eaves, c, rng);
    s = play(s, Role::kTeam2Eve, moves::EveActions{std::vector<EveAction>(128)}, rng);
    EXPECT_EQ(std::get<Bb84Hidden>(s.hidden).mismatches, 0);
    auto alarm = payoff(play(s, Role::kTeam1Receiver, moves::DeclareEavesdropping{}, rng));
    EXPECT_EQ(alarm.payoffs.at(Role::kTeam1Sender), -c.payoffs.false_alarm_penalty);
    EXPECT_EQ(alarm.payoffs.at(Role::kTeam1Receiver), -c.payoffs.false_alarm_penalty);
    auto clean = payoff(play(s, Role::kTeam1Receiver, moves::DeclareClean{}, rng));
    EXPECT_GE(clean.payoffs.at(Role::kTeam1Sender), 0);
}

TEST(Bb84, InterceptResendErrorRateQuarter) {
    EXPECT_NEAR(testkit::bb84_check_error(1), 0.25, 1e-15);
    EXPECT_NEAR(testkit::bb84_check_error(0), 0, 1e-15);
    int64_t checks = 0, errors = 0;
    for (int t = 0; t < 5000; t++) {
        RandomStream rng(50, t);
        auto s = new_game(GameKind::kBb84Eaves, {}, rng);
        std::vector<EveAction> eve(128);
        for (size_t i = 0; i < eve.size(); i++) {
            eve[i] = {true, rng.bernoulli(0.5) ? PhotonBasis::kDiagonal : PhotonBasis::kRectilinear};
        }
        s = play(s, Role::kTeam2Eve, moves::EveActions{eve}, rng);
        const auto &h = std::get<Bb84Hidden>(s.hidden);
        checks += h.check_positions.size();
        errors += h.mismatches;
    }
    double p = 0.25;
    EXPECT_NEAR(static_cast<double>(errors) / checks, p, 4 * std::sqrt(p * (1 - p) / checks));
}

TEST(Bb84, SiftingUsesMatchingBasesOnly) {
    RandomStream rng(51, 0);
    auto s = new_game(GameKind::kBb84Eaves, {}, rng);
    s = play(s, Role::kTeam2Eve, moves::EveActions{std::vector<EveAction>(128)}, rng);
    const auto &h = std::get<Bb84Hidden>(s.hidden);
    EXPECT_LE(h.check_positions.size(), 16u);
    for (auto i : h.check_positions) {
        EXPECT_EQ(h.sender_bases[i], h.receiver_bases[i]);
    }
    for (auto i : h.message_positions) {
        EXPECT_EQ(h.sender_bases[i], h.receiver_bases[i]);
    }
}

TEST(Bb84, EncodeStates) {
    auto plus = bb84::encode(0, PhotonBasis::kDiagonal);
    EXPECT_NEAR(plus.amp("0").real(), r2, 1e-15);
    EXPECT_NEAR(plus.amp("1").real(), r2, 1e-15);
    EXPECT_TRUE(bb84::encode(1, PhotonBasis::kRectilinear) == basis_state(bb84::basis(), "1"));
}

TEST(Bb84, SenderBitsHiddenFromEve) {
    auto s = start(GameKind::kBb84Eaves);
    auto eve = view(s, Role::kTeam2Eve);
    EXPECT_EQ(eve.find("bits"), nullptr);
    EXPECT_EQ(eve.find("bases"), nullptr);
}

// ------------------------------------------------------------ properties

TEST(Properties, InformationHidingFuzz) {
    auto r = testkit::information_hiding_fuzz(10000, 4242);
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, TerminalStatesRejectEveryMove) {
    std::mt19937_64 g(3);
    for (auto kind : {GameKind::kThreeBox, GameKind::kMeyerCoin, GameKind::kGhz, GameKind::kBb84Eaves}) {
        for (int t = 0; t < 100; t++) {
            RandomStream rng(60, t);
            auto s = new_game(kind, {}, rng);
            int last_stage = -1;
            while (!is_terminal(s)) {
                ASSERT_GT(s.stage, last_stage);
                last_stage = s.stage;
                Role r = *to_move(s);
                s = apply_move(s, r, testkit::random_legal_move(s, r, g), rng);
            }
            for (Role r : roles_of(kind)) {
                EXPECT_TRUE(legal_moves(s, r).empty());
            }
            EXPECT_NO_THROW(payoff(s));
        }
    }
}

}  // namespace
}  // namespace qga
