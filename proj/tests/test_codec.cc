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

#include "qga/codec.h"
#include "testkit/oracles.h"
#include "testkit/properties.h"

namespace qga {
namespace {

using nlohmann::json;

TEST(Codec, MovesRoundTrip) {
    const double r3 = 1 / std::sqrt(3.0);
    std::vector<Move> all = {
        moves::ClassicalPlace{Box::kC},
        moves::QuantumPrepare{{r3, r3, Amplitude(0, r3)}},
        moves::CheatTwoParticles{},
        moves::Open{Box::kB},
        moves::InspectBoth{},
        moves::MeasureOnto{{r3, r3, -r3}},
        moves::Accept{},
        moves::Cancel{},
        moves::Flip{},
        moves::NoFlip{},
        moves::ApplyUnitary{gates::hadamard()},
        moves::Answer{-1},
        moves::MeasureQubit{Axis::kY},
        moves::EveActions{{{false, PhotonBasis::kRectilinear}, {true, PhotonBasis::kDiagonal}, {true, PhotonBasis::kRectilinear}}},
        moves::DeclareEavesdropping{},
        moves::DeclareClean{},
    };
    for (const auto &m : all) {
        json j = to_json(m);
        EXPECT_EQ(j["type"], std::string(move_name(m)));
        // Through text, as the service sees it.
        Move back = move_from_json(json::parse(j.dump()));
        EXPECT_EQ(back.index(), m.index());
        EXPECT_EQ(to_json(back), j);
    }
}

TEST(Codec, StableMoveNames) {
    EXPECT_EQ(move_name(moves::Open{Box::kA}), "open");
    EXPECT_EQ(move_name(moves::MeasureOnto{}), "measure_onto");
    EXPECT_EQ(move_name(moves::QuantumPrepare{}), "quantum_prepare");
    EXPECT_EQ(move_name(moves::NoFlip{}), "no_flip");
    EXPECT_EQ(to_json(moves::Open{Box::kA}), json::parse(R"({"type":"open","box":"A"})"));
}

TEST(Codec, MalformedMovesRejected) {
    const char *bad[] = {
        R"([])",
        R"({})",
        R"({"type": 3})",
        R"({"type": "teleport"})",
        R"({"type": "open"})",
        R"({"type": "open", "box": "Z"})",
        R"({"type": "answer", "value": "yes"})",
        R"({"type": "quantum_prepare", "amps": [1, 0]})",
        R"({"type": "quantum_prepare", "amps": [{"re": "a"}, 0, 0]})",
        R"({"type": "apply_unitary", "matrix": [[1, 1], [0, 1]]})",
        R"({"type": "eve_actions", "photons": "+?x"})",
        R"({"type": "measure_qubit", "axis": "z"})",
    };
    for (const char *text : bad) {
        try {
            move_from_json(json::parse(text));
            ADD_FAILURE() << "accepted " << text;
        } catch (const IllegalMove &e) {
            EXPECT_EQ(e.reason(), IllegalMove::Reason::kMalformed) << text;
        }
    }
}

TEST(Codec, AmplitudeForms) {
    EXPECT_EQ(amplitude_from_json(json::parse(R"({"re": 0.5, "im": -1})")), Amplitude(0.5, -1));
    EXPECT_EQ(amplitude_from_json(json(0.25)), Amplitude(0.25, 0));
    EXPECT_EQ(to_json(Amplitude(1, 2)), json::parse(R"({"re": 1.0, "im": 2.0})"));
}

TEST(Codec, ConfigRoundTripAndValidation) {
    GameConfig c;
    c.dephasing_p = 0.25;
    c.disturbance_delta = 0.5;
    c.bb84_check_bits = 8;
    c.payoffs.cheat_caught_penalty = -3;
    auto back = config_from_json(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
    EXPECT_EQ(config_from_json(json::parse(R"({"disturbance_delta": 0.3})")).disturbance_delta, 0.3);
    EXPECT_THROW(config_from_json(json::parse(R"({"warp": 1})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(json::parse(R"({"dephasing_p": "high"})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(json::parse(R"({"dephasing_p": 3})")), std::invalid_argument);
}

TEST(Codec, ViewJsonHasNoAmplitudesForObservers) {
    const double r3 = 1 / std::sqrt(3.0);
    RandomStream rng(0, 0);
    auto s = new_game(GameKind::kThreeBox, {}, rng);
    s = apply_move(s, Role::kAlice, moves::QuantumPrepare{{r3, r3, r3}}, rng);
    s = apply_move(s, Role::kBob, moves::Open{Box::kA}, rng);
    for (Role r : {Role::kBob, Role::kTrustedParty}) {
        auto j = to_json(view(s, r));
        EXPECT_FALSE(testkit::has_amplitude_field(j));
        EXPECT_FALSE(testkit::has_fractional_number(j));
    }
    // Alice sees her own preparation, which does contain amplitudes.
    EXPECT_TRUE(testkit::has_amplitude_field(to_json(view(s, Role::kAlice))));
    // The audit record carries the hidden state.
    EXPECT_TRUE(testkit::has_amplitude_field(audit_json(s)));
}

TEST(Codec, AmplitudeWalkerIsStructural) {
    EXPECT_FALSE(testkit::has_amplitude_field(json::parse(R"({"resolved": 1, "items": ["re", "im"]})")));
    EXPECT_TRUE(testkit::has_amplitude_field(json::parse(R"({"a": [{"b": {"re": 0, "im": 1}}]})")));
    EXPECT_TRUE(testkit::has_fractional_number(json::parse(R"({"a": [1, 0.5]})")));
    EXPECT_FALSE(testkit::has_fractional_number(json::parse(R"({"a": [1, 2.0]})")));
}

}  // namespace
}  // namespace qga
