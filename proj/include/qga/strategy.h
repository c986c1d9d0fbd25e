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
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qga/exact.h"
#include "qga/games.h"

namespace qga {

// ---------------------------------------------------------------- profiles
//
// A profile fixes every role's decision rule for one game. Profiles are
// plain data so the same object drives both the exact evaluator (which
// walks the outcome tree with rational arithmetic) and the Monte Carlo
// policies (which play the rules through the game engine).

struct ThreeBoxProfile {
    /// Classical placement, possibly mixed, over (A, B, C).
    struct Place {
        std::array<Rational, 3> weights;
    };
    /// Quantum preparation over (A, B, C).
    struct Prepare {
        Ray amps;
    };
    struct Cheat {};

    struct BobMix {
        Rational open_a;
        Rational open_b;
        Rational inspect;
    };

    struct AcceptAll {};
    struct CancelAll {};
    /// Rank-1 measurement onto `target` over (A, B, C); accept iff found.
    struct PostSelect {
        Ray target;
    };
    /// Reads the trusted party's found flag, which Alice never sees. Exists
    /// so that information-infeasible profiles can be expressed and rejected.
    struct AcceptIfFound {};

    std::variant<Place, Prepare, Cheat> prepare;
    BobMix bob;
    std::variant<AcceptAll, CancelAll, PostSelect, AcceptIfFound> final;
};

struct MeyerProfile {
    struct Classical {
        Rational flip_prob;
    };
    struct Quantum {
        RayOp op;
    };
    using AliceMove = std::variant<Classical, Quantum>;

    AliceMove first;
    Rational bob_flip_prob;
    AliceMove last;
};

struct GhzProfile {
    struct Fixed {
        int answer;
    };
    struct Measure {
        Axis axis;
    };
    using Action = std::variant<Fixed, Measure>;

    /// players[i][q]: player i's action on question q (0 = x, 1 = y). A
    /// player's rule sees only its own question by construction.
    std::array<std::array<Action, 2>, 3> players;
};

struct Bb84Profile {
    /// Per-photon probability that Eve intercepts (with a uniformly random
    /// basis). Team 1 follows the config's error-threshold rule.
    Rational intercept_prob;
};

using Profile = std::variant<ThreeBoxProfile, MeyerProfile, GhzProfile, Bb84Profile>;

GameKind kind_of(const Profile &profile);
std::string describe(const Profile &profile);

/// The strategies that realize each game's quantum advantage.
Profile quantum_profile(GameKind kind);

/// Builds a profile from per-role policy names, e.g. {"alice": "quantum",
/// "bob": "uniform"}. Missing keys take the game's defaults. Recognized:
///   three-box  alice: quantum classical place-A place-B place-C cheat
///              bob:   uniform uniform-inspect A B inspect
///   meyer-coin alice: quantum classical   bob: uniform flip no-flip
///   ghz        players: quantum classical
///   bb84-eaves eve: intercept pass <fraction>
Profile build_profile(GameKind kind, const std::map<std::string, std::string> &choices, const GameConfig &config);

// ---------------------------------------------------------------- values

struct GameValue {
    Rational value;
    std::vector<std::pair<std::string, Rational>> details;
    std::string argmax;

    double decimal() const {
        return to_double(value);
    }
    const Rational *detail(std::string_view key) const;
};

struct EnumeratedProfile {
    std::string description;
    Profile profile;
};

enum class MoveClass { kClassical, kQuantum };

class NotEnumerable : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
class InfeasibleProfile : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
class NonReducible : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Every deterministic strategy of the roles in `roles`, as complete
/// profiles; roles outside the set keep the game's baseline classical rule.
/// Three-box: Alice (placement x final rule) = 15, Bob (open A, open B) = 2.
/// Meyer: Alice 4, Bob 2. GHZ: 4 per player. Throws NotEnumerable for
/// quantum move classes and for BB84.
std::vector<EnumeratedProfile> enumerate_deterministic(
    GameKind kind, const std::set<Role> &roles, MoveClass move_class = MoveClass::kClassical);

/// Exact value by exhaustive traversal of the outcome tree.
///   three-box: conditional win among accepted trials (0 if none accepted);
///              details accept_rate, found_rate, accept_given_found,
///              caught_rate.
///   meyer-coin: probability the coin ends heads up.
///   ghz: team win probability under uniform questions.
///   bb84-eaves: probability Team 1 declares eavesdropping; details
///              per_check_error, eve_bit_guess_rate.
/// Throws InfeasibleProfile for profiles that read hidden information.
GameValue evaluate(GameKind kind, const Profile &profile, const GameConfig &config);

/// Best guaranteed classical value: exact mixed minimax for the
/// adversarial games, exhaustive maximum for GHZ. Throws NonReducible for
/// BB84.
GameValue classical_value(GameKind kind, const GameConfig &config);

/// evaluate() of quantum_profile(kind).
GameValue quantum_value(GameKind kind, const GameConfig &config);

/// Three-box only: true iff Alice's accept decision is statistically
/// independent of the found flag on non-inspection trials.
bool conditional_independence_check(const Profile &profile, const GameConfig &config);

/// Mixed minimax of a zero-sum game with any number of rows (maximizer)
/// and two columns (minimizer), in exact arithmetic.
struct MatrixGameSolution {
    Rational value;
    /// Row player's optimal mixture.
    std::vector<Rational> rows;
    /// Column player's probability of column 0.
    Rational column0;
};
MatrixGameSolution solve_two_column(const std::vector<std::array<Rational, 2>> &payoff);

// ---------------------------------------------------------------- policies

/// A role's decision rule as seen by the engine: it receives only the
/// role's own view.
using Policy = std::function<Move(const RoleView &, RandomStream &)>;

/// Policies for every role that moves. Throws InfeasibleProfile as
/// evaluate() does.
std::map<Role, Policy> make_policies(const Profile &profile, const GameConfig &config);

}  // namespace qga
