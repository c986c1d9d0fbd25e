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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qga/hilbert.h"

namespace qga {

enum class GameKind { kThreeBox, kMeyerCoin, kGhz, kBb84Eaves };

/// Stable names: "three-box", "meyer-coin", "ghz", "bb84-eaves".
std::string_view to_string(GameKind kind);
/// Accepts the stable names plus the short aliases "meyer" and "bb84".
GameKind parse_game_kind(std::string_view name);

enum class Role {
    kAlice,
    kBob,
    kTrustedParty,
    kReferee,
    kPlayer1,
    kPlayer2,
    kPlayer3,
    kTeam1Sender,
    kTeam1Receiver,
    kTeam2Eve,
};

std::string_view to_string(Role role);
Role parse_role(std::string_view name);
/// Every role that takes part in (or observes) a game of this kind.
std::vector<Role> roles_of(GameKind kind);
/// The observer role that sees the full public record: the trusted party
/// in the three-box game, the referee elsewhere.
Role auditor_of(GameKind kind);

/// Boxes of the three-box game. C is Alice's private box, which also stands
/// in for "somewhere other than A or B".
enum class Box { kA, kB, kC };
enum class Axis { kX, kY };
enum class PhotonBasis { kRectilinear, kDiagonal };

std::string_view to_string(Box box);
std::string_view to_string(Axis axis);
std::string_view to_string(PhotonBasis basis);

struct EveAction {
    bool intercept = false;
    PhotonBasis basis = PhotonBasis::kRectilinear;
};

namespace moves {
struct ClassicalPlace {
    Box box;
};
/// Amplitudes over (A, B, C).
struct QuantumPrepare {
    std::vector<Amplitude> amps;
};
struct CheatTwoParticles {};
struct Open {
    Box box;
};
struct InspectBoth {};
/// Rank-1 measurement onto a target over (A, B, C); accept iff projected.
struct MeasureOnto {
    std::vector<Amplitude> target;
};
struct Accept {};
struct Cancel {};
struct Flip {};
struct NoFlip {};
struct ApplyUnitary {
    UnitaryOp op;
};
struct Answer {
    int value;
};
/// Measure the player's own qubit of the shared GHZ state and answer with
/// the observed eigenvalue.
struct MeasureQubit {
    Axis axis;
};
/// One action per photon.
struct EveActions {
    std::vector<EveAction> photons;
};
struct DeclareEavesdropping {};
struct DeclareClean {};
}  // namespace moves

using Move = std::variant<
    moves::ClassicalPlace,
    moves::QuantumPrepare,
    moves::CheatTwoParticles,
    moves::Open,
    moves::InspectBoth,
    moves::MeasureOnto,
    moves::Accept,
    moves::Cancel,
    moves::Flip,
    moves::NoFlip,
    moves::ApplyUnitary,
    moves::Answer,
    moves::MeasureQubit,
    moves::EveActions,
    moves::DeclareEavesdropping,
    moves::DeclareClean>;

/// Stable wire name of a move's type, e.g. "open", "measure_onto".
std::string_view move_name(const Move &move);

struct PayoffTable {
    double three_box_win = 1;
    double three_box_loss = 0;
    double cheat_caught_penalty = -10;
    double catch_reward = 1;
    double false_alarm_penalty = 1;
    double eve_correct_bit_reward = 1;
};

struct GameConfig {
    double dephasing_p = 1.0;
    double disturbance_delta = 0.0;
    double inspect_prob = 0.1;
    int bb84_n_photons = 128;
    int bb84_check_bits = 16;
    double bb84_error_threshold = 0.0;
    PayoffTable payoffs;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

struct LoggedMove {
    Role role;
    Move move;
};

struct ThreeBoxHidden {
    std::optional<StateVector> particle;
    bool two_particles = false;
    std::optional<Box> bob_opened;
    bool inspected = false;
    /// Whether the careless-Bob leak fired on a found particle.
    std::optional<bool> disturbed;
};

struct MeyerHidden {
    StateVector coin;
    std::optional<bool> heads;
};

struct GhzHidden {
    std::array<Axis, 3> questions;
    StateVector shared;
    std::array<std::optional<int>, 3> answers;
};

struct Bb84Hidden {
    std::vector<uint8_t> sender_bits;
    std::vector<uint8_t> sender_bases;
    std::vector<uint8_t> receiver_bases;
    bool transmitted = false;
    std::vector<EveAction> eve;
    /// 0/1 results of Eve's measurements; 2 where she passed.
    std::vector<uint8_t> eve_results;
    std::vector<uint8_t> received;
    std::vector<uint32_t> check_positions;
    std::vector<uint32_t> message_positions;
    int mismatches = 0;
    int eve_correct = 0;
    bool eve_touched = false;
    std::optional<bool> declared;
};

/// Full hidden state of one game trial. Treated as an immutable value:
/// apply_move returns a new state.
struct GameState {
    GameKind kind;
    GameConfig config;
    uint64_t game_id = 0;
    int stage = 0;
    std::vector<LoggedMove> log;
    /// Set only from the trusted party's observation of Bob's measurement.
    std::optional<bool> found;
    bool caught_cheating = false;
    std::optional<bool> accepted;
    std::variant<ThreeBoxHidden, MeyerHidden, GhzHidden, Bb84Hidden> hidden;
};

using ViewValue = std::variant<bool, int64_t, double, std::string>;

/// What one role may legally see. There is deliberately no field that can
/// carry a state vector; only a role's own moves can contain amplitudes,
/// and only roles that prepare states have such moves.
struct RoleView {
    GameKind game;
    Role role;
    int stage = 0;
    std::optional<Role> to_move;
    bool terminal = false;
    std::vector<Move> own_moves;
    std::vector<std::pair<std::string, ViewValue>> observations;

    const ViewValue *find(std::string_view key) const;
};

struct TrialOutcome {
    std::map<Role, double> payoffs;
    /// False for trials excluded from the conditional statistic (canceled,
    /// inspection rounds).
    bool counted = false;
    bool win = false;
};

class IllegalMove : public std::invalid_argument {
   public:
    enum class Reason { kWrongTurn, kTerminal, kNotAllowed, kMalformed };

    IllegalMove(Reason reason, const std::string &what) : std::invalid_argument(what), reason_(reason) {
    }
    Reason reason() const {
        return reason_;
    }

   private:
    Reason reason_;
};

/// Stage 0 state. Meyer starts heads up; GHZ draws its question triple and
/// prepares the shared state; BB84 draws Team 1's bits and bases.
GameState new_game(GameKind kind, const GameConfig &config, RandomStream &rng);

bool is_terminal(const GameState &state);
std::optional<Role> to_move(const GameState &state);

/// Empty unless it is `role`'s turn. Parameterized moves appear once with a
/// representative payload.
std::vector<Move> legal_moves(const GameState &state, Role role);

/// Throws IllegalMove if `move` may not be played by `role` now.
void check_legal(const GameState &state, Role role, const Move &move);

GameState apply_move(const GameState &state, Role role, const Move &move, RandomStream &rng);

/// Throws std::invalid_argument for roles that do not belong to the game.
RoleView view(const GameState &state, Role role);

/// Throws std::logic_error on non-terminal states.
TrialOutcome payoff(const GameState &state);

namespace three_box {
/// (A, B, C, D); D is the leak state reached by a careless Bob.
const Basis &basis();
/// Projector onto one box.
Projector box_projector(Box box);
}  // namespace three_box

namespace meyer {
/// (head, tail).
const Basis &basis();
}  // namespace meyer

namespace ghz {
/// ("000", ..., "111"); player 1 owns the leftmost bit.
const Basis &basis();
/// (|000> + |111>) / sqrt(2).
StateVector shared_state();
/// The four questions, each equally likely.
const std::array<std::array<Axis, 3>, 4> &question_set();
/// Product of answers must be +1 for (x,x,x) and -1 for the others.
bool team_wins(const std::array<Axis, 3> &questions, const std::array<int, 3> &answers);
int player_index(Role role);
Role player_role(int index);
}  // namespace ghz

namespace bb84 {
/// ("0", "1") polarization qubit.
const Basis &basis();
StateVector encode(int bit, PhotonBasis basis);
}  // namespace bb84

}  // namespace qga
