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

#include "qga/strategy.h"

namespace qga {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> to_doubles(std::initializer_list<Rational> weights) {
    std::vector<double> out;
    for (const auto &w : weights) {
        out.push_back(to_double(w));
    }
    return out;
}

/// Index drawn from weights that sum to 1, one variate. Zero-weight
/// entries are never returned.
size_t sample(const std::vector<double> &weights, RandomStream &rng) {
    double u = rng.uniform();
    double acc = 0;
    size_t last = 0;
    for (size_t i = 0; i < weights.size(); i++) {
        if (weights[i] == 0) {
            continue;
        }
        last = i;
        acc += weights[i];
        if (u < acc) {
            return i;
        }
    }
    return last;
}

/// Probabilities 0 and 1 consume no variate.
bool draw(double p, RandomStream &rng) {
    if (p == 0) {
        return false;
    }
    if (p == 1) {
        return true;
    }
    return rng.bernoulli(p);
}

int64_t int_obs(const RoleView &v, std::string_view key) {
    const auto *x = v.find(key);
    if (!x || !std::holds_alternative<int64_t>(*x)) {
        throw std::logic_error("view lacks integer observation '" + std::string(key) + "'");
    }
    return std::get<int64_t>(*x);
}

std::string str_obs(const RoleView &v, std::string_view key) {
    const auto *x = v.find(key);
    if (!x || !std::holds_alternative<std::string>(*x)) {
        throw std::logic_error("view lacks string observation '" + std::string(key) + "'");
    }
    return std::get<std::string>(*x);
}

std::map<Role, Policy> three_box_policies(const ThreeBoxProfile &p, const GameConfig &config) {
    // Rejects infeasible or malformed profiles up front.
    evaluate(GameKind::kThreeBox, p, config);
    std::map<Role, Policy> out;
    std::vector<double> place;
    if (const auto *pl = std::get_if<ThreeBoxProfile::Place>(&p.prepare)) {
        place = to_doubles({pl->weights[0], pl->weights[1], pl->weights[2]});
    }
    out[Role::kAlice] = [p, place](const RoleView &v, RandomStream &rng) -> Move {
        if (v.stage == 0) {
            return std::visit(
                overloaded{
                    [&](const ThreeBoxProfile::Place &) -> Move {
                        auto i = sample(place, rng);
                        return moves::ClassicalPlace{static_cast<Box>(i)};
                    },
                    [&](const ThreeBoxProfile::Prepare &pr) -> Move {
                        return moves::QuantumPrepare{pr.amps.amplitudes()};
                    },
                    [&](const ThreeBoxProfile::Cheat &) -> Move { return moves::CheatTwoParticles{}; },
                },
                p.prepare);
        }
        return std::visit(
            overloaded{
                [](const ThreeBoxProfile::AcceptAll &) -> Move { return moves::Accept{}; },
                [](const ThreeBoxProfile::CancelAll &) -> Move { return moves::Cancel{}; },
                [](const ThreeBoxProfile::PostSelect &ps) -> Move {
                    return moves::MeasureOnto{ps.target.amplitudes()};
                },
                [](const ThreeBoxProfile::AcceptIfFound &) -> Move {
                    throw InfeasibleProfile("Alice's accept rule reads the found flag");
                },
            },
            p.final);
    };
    out[Role::kBob] = [bob = to_doubles({p.bob.open_a, p.bob.open_b, p.bob.inspect})](
                          const RoleView &, RandomStream &rng) -> Move {
        switch (sample(bob, rng)) {
            case 0:
                return moves::Open{Box::kA};
            case 1:
                return moves::Open{Box::kB};
            default:
                return moves::InspectBoth{};
        }
    };
    return out;
}

Move meyer_alice_move(const MeyerProfile::AliceMove &m, RandomStream &rng) {
    return std::visit(
        overloaded{
            [&](const MeyerProfile::Classical &c) -> Move {
                if (draw(to_double(c.flip_prob), rng)) {
                    return moves::Flip{};
                }
                return moves::NoFlip{};
            },
            [&](const MeyerProfile::Quantum &q) -> Move { return moves::ApplyUnitary{q.op.to_unitary()}; },
        },
        m);
}

std::map<Role, Policy> meyer_policies(const MeyerProfile &p, const GameConfig &config) {
    evaluate(GameKind::kMeyerCoin, p, config);
    std::map<Role, Policy> out;
    out[Role::kAlice] = [p](const RoleView &v, RandomStream &rng) {
        return meyer_alice_move(v.stage == 0 ? p.first : p.last, rng);
    };
    out[Role::kBob] = [flip = to_double(p.bob_flip_prob)](const RoleView &, RandomStream &rng) -> Move {
        if (draw(flip, rng)) {
            return moves::Flip{};
        }
        return moves::NoFlip{};
    };
    return out;
}

std::map<Role, Policy> ghz_policies(const GhzProfile &p, const GameConfig &config) {
    evaluate(GameKind::kGhz, p, config);
    std::map<Role, Policy> out;
    for (int i = 0; i < 3; i++) {
        out[ghz::player_role(i)] = [rule = p.players[i]](const RoleView &v, RandomStream &) -> Move {
            const auto &a = rule[str_obs(v, "question") == "x" ? 0 : 1];
            return std::visit(
                overloaded{
                    [](const GhzProfile::Fixed &f) -> Move { return moves::Answer{f.answer}; },
                    [](const GhzProfile::Measure &m) -> Move { return moves::MeasureQubit{m.axis}; },
                },
                a);
        };
    }
    return out;
}

std::map<Role, Policy> bb84_policies(const Bb84Profile &p, const GameConfig &config) {
    evaluate(GameKind::kBb84Eaves, p, config);
    std::map<Role, Policy> out;
    out[Role::kTeam2Eve] = [f = to_double(p.intercept_prob)](const RoleView &v, RandomStream &rng) -> Move {
        moves::EveActions m;
        m.photons.resize(static_cast<size_t>(int_obs(v, "n_photons")));
        for (auto &a : m.photons) {
            a.intercept = draw(f, rng);
            if (a.intercept) {
                a.basis = rng.below(2) ? PhotonBasis::kDiagonal : PhotonBasis::kRectilinear;
            }
        }
        return m;
    };
    out[Role::kTeam1Receiver] = [tau = config.bb84_error_threshold](const RoleView &v, RandomStream &) -> Move {
        auto checks = int_obs(v, "check_bits");
        auto errors = int_obs(v, "mismatches");
        if (static_cast<double>(errors) > tau * static_cast<double>(checks)) {
            return moves::DeclareEavesdropping{};
        }
        return moves::DeclareClean{};
    };
    return out;
}

}  // namespace

std::map<Role, Policy> make_policies(const Profile &profile, const GameConfig &config) {
    return std::visit(
        overloaded{
            [&](const ThreeBoxProfile &p) { return three_box_policies(p, config); },
            [&](const MeyerProfile &p) { return meyer_policies(p, config); },
            [&](const GhzProfile &p) { return ghz_policies(p, config); },
            [&](const Bb84Profile &p) { return bb84_policies(p, config); },
        },
        profile);
}

}  // namespace qga
