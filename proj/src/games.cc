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

#include "qga/games.h"

#include <algorithm>
#include <cmath>

#include "qga/channels.h"

namespace qga {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void not_allowed(const std::string &what) {
    throw IllegalMove(IllegalMove::Reason::kNotAllowed, what);
}

[[noreturn]] void malformed(const std::string &what) {
    throw IllegalMove(IllegalMove::Reason::kMalformed, what);
}

void check_probability(double p, const char *name) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

/// Extends (A, B, C) amplitudes to the (A, B, C, D) game space.
StateVector box_state(const std::vector<Amplitude> &abc, const char *what) {
    if (abc.size() != 3) {
        malformed(std::string(what) + " needs exactly 3 amplitudes over (A, B, C)");
    }
    std::array<Amplitude, 4> a{abc[0], abc[1], abc[2], 0};
    try {
        return make_state(three_box::basis(), std::span<const Amplitude>(a.data(), 4));
    } catch (const std::invalid_argument &e) {
        malformed(std::string(what) + ": " + e.what());
    }
}

int stage_count(GameKind kind) {
    return kind == GameKind::kBb84Eaves ? 2 : 3;
}

/// The move types allowed at a stage, by variant index.
std::vector<size_t> allowed_types(GameKind kind, int stage) {
    auto idx = [](auto tag) { return Move(tag).index(); };
    switch (kind) {
        case GameKind::kThreeBox:
            if (stage == 0) {
                return {idx(moves::ClassicalPlace{}), idx(moves::QuantumPrepare{}), idx(moves::CheatTwoParticles{})};
            }
            if (stage == 1) {
                return {idx(moves::Open{}), idx(moves::InspectBoth{})};
            }
            return {idx(moves::MeasureOnto{}), idx(moves::Accept{}), idx(moves::Cancel{})};
        case GameKind::kMeyerCoin:
            if (stage == 1) {
                return {idx(moves::Flip{}), idx(moves::NoFlip{})};
            }
            return {idx(moves::Flip{}), idx(moves::NoFlip{}), idx(moves::ApplyUnitary{gates::hadamard()})};
        case GameKind::kGhz:
            return {idx(moves::Answer{}), idx(moves::MeasureQubit{})};
        case GameKind::kBb84Eaves:
            if (stage == 0) {
                return {idx(moves::EveActions{})};
            }
            return {idx(moves::DeclareEavesdropping{}), idx(moves::DeclareClean{})};
    }
    return {};
}

// ---------------------------------------------------------------- three-box

GameState three_box_move(GameState s, const Move &move, RandomStream &rng) {
    auto &h = std::get<ThreeBoxHidden>(s.hidden);
    if (s.stage == 0) {
        std::visit(
            overloaded{
                [&](const moves::ClassicalPlace &m) {
                    h.particle = basis_state(three_box::basis(), to_string(m.box));
                },
                [&](const moves::QuantumPrepare &m) { h.particle = box_state(m.amps, "quantum_prepare"); },
                [&](const moves::CheatTwoParticles &) { h.two_particles = true; },
                [](const auto &) {},
            },
            move);
    } else if (s.stage == 1) {
        if (const auto *m = std::get_if<moves::Open>(&move)) {
            h.bob_opened = m->box;
            if (h.two_particles) {
                s.found = true;
            } else {
                auto r = measure(three_box::box_projector(m->box), *h.particle, rng);
                s.found = r.found;
                h.particle = r.post_state;
                if (r.found) {
                    DisturbanceChannel leak(s.config.disturbance_delta, three_box::basis());
                    auto after = disturb(leak, *h.particle, rng);
                    h.disturbed = !(after == *h.particle);
                    h.particle = after;
                }
                // The not-find branch is left exactly as the measurement
                // produced it: the unopened box is never touched.
            }
        } else {
            h.inspected = true;
            s.caught_cheating = h.two_particles;
            if (h.two_particles) {
                s.found = true;
            } else {
                auto both = Projector::onto_labels(three_box::basis(), {"A", "B"});
                auto r = measure(both, *h.particle, rng);
                s.found = r.found;
                h.particle = r.post_state;
            }
        }
    } else {
        std::visit(
            overloaded{
                [&](const moves::Accept &) { s.accepted = true; },
                [&](const moves::Cancel &) { s.accepted = false; },
                [&](const moves::MeasureOnto &m) {
                    if (h.two_particles) {
                        // No single-particle state to project; the cheat
                        // always accepts.
                        s.accepted = true;
                        return;
                    }
                    auto target = box_state(m.target, "measure_onto");
                    auto r = measure(Projector::onto_state(target), *h.particle, rng);
                    s.accepted = r.found;
                    h.particle = r.post_state;
                },
                [](const auto &) {},
            },
            move);
    }
    return s;
}

// ---------------------------------------------------------------- meyer

StateVector meyer_act(const StateVector &coin, const Move &move) {
    if (std::holds_alternative<moves::Flip>(move)) {
        return apply(gates::pauli_x(), coin);
    }
    if (const auto *m = std::get_if<moves::ApplyUnitary>(&move)) {
        return apply(m->op, coin);
    }
    return coin;
}

GameState meyer_move(GameState s, const Move &move, RandomStream &rng) {
    auto &h = std::get<MeyerHidden>(s.hidden);
    h.coin = meyer_act(h.coin, move);
    if (s.stage == 1) {
        DephasingChannel handling(s.config.dephasing_p, meyer::basis());
        h.coin = dephase(handling, h.coin, rng);
    } else if (s.stage == 2) {
        auto r = measure(Projector::onto_labels(meyer::basis(), {"head"}), h.coin, rng);
        h.heads = r.found;
        h.coin = r.post_state;
    }
    return s;
}

// ---------------------------------------------------------------- ghz

UnitaryOp local_op(int player, const UnitaryOp &u) {
    auto id = UnitaryOp::identity(2);
    switch (player) {
        case 0:
            return kron(u, kron(id, id));
        case 1:
            return kron(id, kron(u, id));
        default:
            return kron(kron(id, id), u);
    }
}

GameState ghz_move(GameState s, const Move &move, RandomStream &rng) {
    auto &h = std::get<GhzHidden>(s.hidden);
    int player = s.stage;
    if (const auto *m = std::get_if<moves::Answer>(&move)) {
        h.answers[player] = m->value;
        return s;
    }
    const auto &m = std::get<moves::MeasureQubit>(move);
    // Rotate the measured axis onto Z, read the qubit, rotate back.
    UnitaryOp to_z = m.axis == Axis::kX ? gates::hadamard() : gates::hadamard() * gates::phase_dagger();
    UnitaryOp rot = local_op(player, to_z);
    auto rotated = apply(rot, h.shared);
    std::vector<size_t> zero_bits;
    for (size_t i = 0; i < 8; i++) {
        if (((i >> (2 - player)) & 1u) == 0) {
            zero_bits.push_back(i);
        }
    }
    auto r = measure(Projector::onto_indices(8, zero_bits), rotated, rng);
    h.answers[player] = r.found ? 1 : -1;
    h.shared = apply(rot.adjoint(), r.post_state);
    return s;
}

// ---------------------------------------------------------------- bb84

const Projector &photon_projector(int bit, PhotonBasis basis) {
    static const std::array<Projector, 4> cache = {
        Projector::onto_state(bb84::encode(0, PhotonBasis::kRectilinear)),
        Projector::onto_state(bb84::encode(1, PhotonBasis::kRectilinear)),
        Projector::onto_state(bb84::encode(0, PhotonBasis::kDiagonal)),
        Projector::onto_state(bb84::encode(1, PhotonBasis::kDiagonal)),
    };
    return cache[(basis == PhotonBasis::kDiagonal ? 2 : 0) + bit];
}

int measure_photon(const StateVector &photon, PhotonBasis basis, RandomStream &rng) {
    auto r = measure(photon_projector(0, basis), photon, rng);
    return r.found ? 0 : 1;
}

PhotonBasis as_basis(uint8_t b) {
    return b ? PhotonBasis::kDiagonal : PhotonBasis::kRectilinear;
}

GameState bb84_move(GameState s, const Move &move, RandomStream &rng) {
    auto &h = std::get<Bb84Hidden>(s.hidden);
    if (s.stage == 1) {
        h.declared = std::holds_alternative<moves::DeclareEavesdropping>(move);
        return s;
    }
    const auto &eve = std::get<moves::EveActions>(move).photons;
    size_t n = h.sender_bits.size();
    h.eve = eve;
    h.eve_results.assign(n, 2);
    h.received.assign(n, 0);
    for (size_t i = 0; i < n; i++) {
        StateVector photon = bb84::encode(h.sender_bits[i], as_basis(h.sender_bases[i]));
        if (eve[i].intercept) {
            h.eve_touched = true;
            int r = measure_photon(photon, eve[i].basis, rng);
            h.eve_results[i] = static_cast<uint8_t>(r);
            photon = bb84::encode(r, eve[i].basis);
        }
        h.received[i] = static_cast<uint8_t>(measure_photon(photon, as_basis(h.receiver_bases[i]), rng));
    }
    // Public discussion: bases are compared; the first k sifted positions
    // are sacrificed as check bits, the rest carry the message.
    size_t k = static_cast<size_t>(s.config.bb84_check_bits);
    for (size_t i = 0; i < n; i++) {
        if (h.sender_bases[i] != h.receiver_bases[i]) {
            continue;
        }
        if (h.check_positions.size() < k) {
            h.check_positions.push_back(static_cast<uint32_t>(i));
        } else {
            h.message_positions.push_back(static_cast<uint32_t>(i));
        }
    }
    for (auto i : h.check_positions) {
        h.mismatches += h.sender_bits[i] != h.received[i];
    }
    for (auto i : h.message_positions) {
        int guess = h.eve_results[i] != 2 ? h.eve_results[i] : static_cast<int>(rng.below(2));
        h.eve_correct += guess == h.sender_bits[i];
    }
    h.transmitted = true;
    return s;
}

std::string bits_string(const std::vector<uint8_t> &bits) {
    std::string out;
    out.reserve(bits.size());
    for (auto b : bits) {
        out.push_back(b == 2 ? '-' : static_cast<char>('0' + b));
    }
    return out;
}

std::string bases_string(const std::vector<uint8_t> &bases) {
    std::string out;
    out.reserve(bases.size());
    for (auto b : bases) {
        out.push_back(b ? 'x' : '+');
    }
    return out;
}

void own_moves(const GameState &s, Role role, RoleView &v) {
    for (const auto &lm : s.log) {
        if (lm.role == role) {
            v.own_moves.push_back(lm.move);
        }
    }
}

void fill_three_box_view(const GameState &s, RoleView &v) {
    const auto &h = std::get<ThreeBoxHidden>(s.hidden);
    bool terminal = is_terminal(s);
    switch (v.role) {
        case Role::kAlice:
            break;
        case Role::kBob:
            if (s.found) {
                v.observations.emplace_back("found", *s.found);
            }
            if (h.inspected) {
                v.observations.emplace_back("caught_cheating", s.caught_cheating);
            }
            break;
        case Role::kTrustedParty:
            if (h.bob_opened) {
                v.observations.emplace_back("bob_opened", std::string(to_string(*h.bob_opened)));
            }
            if (h.inspected) {
                v.observations.emplace_back("bob_inspected", true);
                v.observations.emplace_back("caught_cheating", s.caught_cheating);
            }
            if (s.found) {
                v.observations.emplace_back("found", *s.found);
            }
            break;
        default:
            break;
    }
    if (terminal) {
        // Public announcement at the end of the trial.
        v.observations.emplace_back("accepted", *s.accepted);
        if (s.caught_cheating) {
            v.observations.emplace_back("cheat_penalized", true);
        } else if (*s.accepted && !h.inspected) {
            v.observations.emplace_back("alice_wins", s.found.value_or(false));
        }
    }
}

void fill_meyer_view(const GameState &s, RoleView &v) {
    const auto &h = std::get<MeyerHidden>(s.hidden);
    if (v.role == Role::kReferee) {
        v.observations.emplace_back("moves_made", static_cast<int64_t>(s.log.size()));
    }
    if (h.heads) {
        v.observations.emplace_back("outcome", std::string(*h.heads ? "head" : "tail"));
    }
}

void fill_ghz_view(const GameState &s, RoleView &v) {
    const auto &h = std::get<GhzHidden>(s.hidden);
    auto q = [&](int i) { return std::string(to_string(h.questions[i])); };
    if (v.role == Role::kReferee) {
        v.observations.emplace_back("questions", q(0) + q(1) + q(2));
        for (int i = 0; i < 3; i++) {
            if (h.answers[i]) {
                v.observations.emplace_back("answer" + std::to_string(i + 1), static_cast<int64_t>(*h.answers[i]));
            }
        }
    } else {
        int i = ghz::player_index(v.role);
        v.observations.emplace_back("question", q(i));
        if (h.answers[i]) {
            v.observations.emplace_back("answer", static_cast<int64_t>(*h.answers[i]));
        }
    }
    if (is_terminal(s)) {
        std::array<int, 3> a{*h.answers[0], *h.answers[1], *h.answers[2]};
        v.observations.emplace_back("team_wins", ghz::team_wins(h.questions, a));
    }
}

void fill_bb84_view(const GameState &s, RoleView &v) {
    const auto &h = std::get<Bb84Hidden>(s.hidden);
    v.observations.emplace_back("n_photons", static_cast<int64_t>(h.sender_bits.size()));
    switch (v.role) {
        case Role::kTeam1Sender:
            v.observations.emplace_back("bits", bits_string(h.sender_bits));
            v.observations.emplace_back("bases", bases_string(h.sender_bases));
            break;
        case Role::kTeam1Receiver:
            v.observations.emplace_back("bases", bases_string(h.receiver_bases));
            if (h.transmitted) {
                v.observations.emplace_back("received", bits_string(h.received));
            }
            break;
        case Role::kTeam2Eve:
            if (h.transmitted) {
                v.observations.emplace_back("intercept_results", bits_string(h.eve_results));
            }
            break;
        default:
            break;
    }
    if (h.transmitted) {
        // Announced over the public channel after transmission.
        v.observations.emplace_back("sender_bases", bases_string(h.sender_bases));
        v.observations.emplace_back("receiver_bases", bases_string(h.receiver_bases));
        v.observations.emplace_back("check_bits", static_cast<int64_t>(h.check_positions.size()));
        v.observations.emplace_back("mismatches", static_cast<int64_t>(h.mismatches));
    }
    if (v.role == Role::kReferee && h.transmitted) {
        v.observations.emplace_back("eve_touched", h.eve_touched);
        v.observations.emplace_back("eve_correct_guesses", static_cast<int64_t>(h.eve_correct));
    }
    if (h.declared) {
        v.observations.emplace_back("declared_eavesdropping", *h.declared);
    }
}

}  // namespace

// ---------------------------------------------------------------- names

std::string_view to_string(GameKind kind) {
    switch (kind) {
        case GameKind::kThreeBox:
            return "three-box";
        case GameKind::kMeyerCoin:
            return "meyer-coin";
        case GameKind::kGhz:
            return "ghz";
        case GameKind::kBb84Eaves:
            return "bb84-eaves";
    }
    return "?";
}

GameKind parse_game_kind(std::string_view name) {
    if (name == "three-box") {
        return GameKind::kThreeBox;
    }
    if (name == "meyer-coin" || name == "meyer") {
        return GameKind::kMeyerCoin;
    }
    if (name == "ghz") {
        return GameKind::kGhz;
    }
    if (name == "bb84-eaves" || name == "bb84") {
        return GameKind::kBb84Eaves;
    }
    throw std::invalid_argument("unknown game '" + std::string(name) + "'");
}

std::string_view to_string(Role role) {
    switch (role) {
        case Role::kAlice:
            return "alice";
        case Role::kBob:
            return "bob";
        case Role::kTrustedParty:
            return "trusted_party";
        case Role::kReferee:
            return "referee";
        case Role::kPlayer1:
            return "player1";
        case Role::kPlayer2:
            return "player2";
        case Role::kPlayer3:
            return "player3";
        case Role::kTeam1Sender:
            return "team1_sender";
        case Role::kTeam1Receiver:
            return "team1_receiver";
        case Role::kTeam2Eve:
            return "team2_eve";
    }
    return "?";
}

Role parse_role(std::string_view name) {
    for (Role r : {Role::kAlice,
                   Role::kBob,
                   Role::kTrustedParty,
                   Role::kReferee,
                   Role::kPlayer1,
                   Role::kPlayer2,
                   Role::kPlayer3,
                   Role::kTeam1Sender,
                   Role::kTeam1Receiver,
                   Role::kTeam2Eve}) {
        if (to_string(r) == name) {
            return r;
        }
    }
    throw std::invalid_argument("unknown role '" + std::string(name) + "'");
}

std::vector<Role> roles_of(GameKind kind) {
    switch (kind) {
        case GameKind::kThreeBox:
            return {Role::kAlice, Role::kBob, Role::kTrustedParty};
        case GameKind::kMeyerCoin:
            return {Role::kAlice, Role::kBob, Role::kReferee};
        case GameKind::kGhz:
            return {Role::kPlayer1, Role::kPlayer2, Role::kPlayer3, Role::kReferee};
        case GameKind::kBb84Eaves:
            return {Role::kTeam1Sender, Role::kTeam1Receiver, Role::kTeam2Eve, Role::kReferee};
    }
    return {};
}

Role auditor_of(GameKind kind) {
    return kind == GameKind::kThreeBox ? Role::kTrustedParty : Role::kReferee;
}

std::string_view to_string(Box box) {
    switch (box) {
        case Box::kA:
            return "A";
        case Box::kB:
            return "B";
        case Box::kC:
            return "C";
    }
    return "?";
}

std::string_view to_string(Axis axis) {
    return axis == Axis::kX ? "x" : "y";
}

std::string_view to_string(PhotonBasis basis) {
    return basis == PhotonBasis::kRectilinear ? "rectilinear" : "diagonal";
}

std::string_view move_name(const Move &move) {
    return std::visit(
        overloaded{
            [](const moves::ClassicalPlace &) { return "classical_place"; },
            [](const moves::QuantumPrepare &) { return "quantum_prepare"; },
            [](const moves::CheatTwoParticles &) { return "cheat_two_particles"; },
            [](const moves::Open &) { return "open"; },
            [](const moves::InspectBoth &) { return "inspect_both"; },
            [](const moves::MeasureOnto &) { return "measure_onto"; },
            [](const moves::Accept &) { return "accept"; },
            [](const moves::Cancel &) { return "cancel"; },
            [](const moves::Flip &) { return "flip"; },
            [](const moves::NoFlip &) { return "no_flip"; },
            [](const moves::ApplyUnitary &) { return "unitary"; },
            [](const moves::Answer &) { return "answer"; },
            [](const moves::MeasureQubit &) { return "measure_qubit"; },
            [](const moves::EveActions &) { return "eve_actions"; },
            [](const moves::DeclareEavesdropping &) { return "declare_eavesdropping"; },
            [](const moves::DeclareClean &) { return "declare_clean"; },
        },
        move);
}

void GameConfig::validate() const {
    check_probability(dephasing_p, "dephasing_p");
    check_probability(disturbance_delta, "disturbance_delta");
    check_probability(inspect_prob, "inspect_prob");
    check_probability(bb84_error_threshold, "bb84_error_threshold");
    if (bb84_check_bits < 0 || bb84_n_photons < bb84_check_bits) {
        throw std::invalid_argument("need n_photons >= check_bits >= 0");
    }
    if (bb84_n_photons > 100000) {
        throw std::invalid_argument("bb84_n_photons is capped at 100000");
    }
    if (!(payoffs.false_alarm_penalty > 0)) {
        throw std::invalid_argument("false_alarm_penalty must be positive");
    }
}

const ViewValue *RoleView::find(std::string_view key) const {
    for (const auto &[k, v] : observations) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

// ---------------------------------------------------------------- engine

GameState new_game(GameKind kind, const GameConfig &config, RandomStream &rng) {
    config.validate();
    GameState s{.kind = kind, .config = config};
    s.game_id = mix_key(rng.seed(), rng.stream(), ~0ULL);
    switch (kind) {
        case GameKind::kThreeBox:
            s.hidden = ThreeBoxHidden{};
            break;
        case GameKind::kMeyerCoin:
            s.hidden = MeyerHidden{.coin = basis_state(meyer::basis(), "head")};
            break;
        case GameKind::kGhz: {
            const auto &q = ghz::question_set()[rng.below(4)];
            s.hidden = GhzHidden{.questions = q, .shared = ghz::shared_state(), .answers = {}};
            break;
        }
        case GameKind::kBb84Eaves: {
            Bb84Hidden h;
            size_t n = static_cast<size_t>(config.bb84_n_photons);
            h.sender_bits.resize(n);
            h.sender_bases.resize(n);
            h.receiver_bases.resize(n);
            for (size_t i = 0; i < n; i++) {
                h.sender_bits[i] = static_cast<uint8_t>(rng.below(2));
                h.sender_bases[i] = static_cast<uint8_t>(rng.below(2));
                h.receiver_bases[i] = static_cast<uint8_t>(rng.below(2));
            }
            s.hidden = std::move(h);
            break;
        }
    }
    return s;
}

bool is_terminal(const GameState &state) {
    return state.stage >= stage_count(state.kind);
}

std::optional<Role> to_move(const GameState &state) {
    if (is_terminal(state)) {
        return std::nullopt;
    }
    switch (state.kind) {
        case GameKind::kThreeBox:
        case GameKind::kMeyerCoin:
            return state.stage == 1 ? Role::kBob : Role::kAlice;
        case GameKind::kGhz:
            return ghz::player_role(state.stage);
        case GameKind::kBb84Eaves:
            return state.stage == 0 ? Role::kTeam2Eve : Role::kTeam1Receiver;
    }
    return std::nullopt;
}

std::vector<Move> legal_moves(const GameState &state, Role role) {
    if (to_move(state) != role) {
        return {};
    }
    const double r3 = 1.0 / std::sqrt(3.0);
    switch (state.kind) {
        case GameKind::kThreeBox:
            if (state.stage == 0) {
                return {moves::ClassicalPlace{Box::kA},
                        moves::ClassicalPlace{Box::kB},
                        moves::ClassicalPlace{Box::kC},
                        moves::QuantumPrepare{{r3, r3, r3}},
                        moves::CheatTwoParticles{}};
            }
            if (state.stage == 1) {
                return {moves::Open{Box::kA}, moves::Open{Box::kB}, moves::InspectBoth{}};
            }
            return {moves::MeasureOnto{{r3, r3, -r3}}, moves::Accept{}, moves::Cancel{}};
        case GameKind::kMeyerCoin:
            if (state.stage == 1) {
                return {moves::Flip{}, moves::NoFlip{}};
            }
            return {moves::Flip{}, moves::NoFlip{}, moves::ApplyUnitary{gates::hadamard()}};
        case GameKind::kGhz:
            return {moves::Answer{1}, moves::Answer{-1}, moves::MeasureQubit{Axis::kX}, moves::MeasureQubit{Axis::kY}};
        case GameKind::kBb84Eaves:
            if (state.stage == 0) {
                return {moves::EveActions{std::vector<EveAction>(static_cast<size_t>(state.config.bb84_n_photons))}};
            }
            return {moves::DeclareEavesdropping{}, moves::DeclareClean{}};
    }
    return {};
}

void check_legal(const GameState &state, Role role, const Move &move) {
    if (is_terminal(state)) {
        throw IllegalMove(IllegalMove::Reason::kTerminal, "game is over");
    }
    auto mover = to_move(state);
    if (mover != role) {
        throw IllegalMove(
            IllegalMove::Reason::kWrongTurn,
            "not " + std::string(to_string(role)) + "'s turn (" + std::string(to_string(*mover)) + " to move)");
    }
    auto allowed = allowed_types(state.kind, state.stage);
    if (std::find(allowed.begin(), allowed.end(), move.index()) == allowed.end()) {
        not_allowed(
            "move '" + std::string(move_name(move)) + "' is not allowed at stage " + std::to_string(state.stage) + " of " +
            std::string(to_string(state.kind)));
    }
    std::visit(
        overloaded{
            [](const moves::Open &m) {
                if (m.box == Box::kC) {
                    not_allowed("Bob may only open box A or box B");
                }
            },
            [](const moves::QuantumPrepare &m) { box_state(m.amps, "quantum_prepare"); },
            [](const moves::MeasureOnto &m) { box_state(m.target, "measure_onto"); },
            [](const moves::ApplyUnitary &m) {
                if (m.op.dim() != 2) {
                    malformed("coin unitary must be 2x2");
                }
            },
            [](const moves::Answer &m) {
                if (m.value != 1 && m.value != -1) {
                    malformed("answer must be +1 or -1");
                }
            },
            [&](const moves::EveActions &m) {
                if (m.photons.size() != static_cast<size_t>(state.config.bb84_n_photons)) {
                    malformed("eve_actions needs one action per photon");
                }
            },
            [](const auto &) {},
        },
        move);
}

GameState apply_move(const GameState &state, Role role, const Move &move, RandomStream &rng) {
    check_legal(state, role, move);
    GameState next = [&] {
        switch (state.kind) {
            case GameKind::kThreeBox:
                return three_box_move(state, move, rng);
            case GameKind::kMeyerCoin:
                return meyer_move(state, move, rng);
            case GameKind::kGhz:
                return ghz_move(state, move, rng);
            case GameKind::kBb84Eaves:
                return bb84_move(state, move, rng);
        }
        return state;
    }();
    next.log.push_back(LoggedMove{role, move});
    next.stage++;
    return next;
}

RoleView view(const GameState &state, Role role) {
    auto roles = roles_of(state.kind);
    if (std::find(roles.begin(), roles.end(), role) == roles.end()) {
        throw std::invalid_argument(
            "role " + std::string(to_string(role)) + " does not take part in " + std::string(to_string(state.kind)));
    }
    RoleView v{.game = state.kind, .role = role, .stage = state.stage};
    v.to_move = to_move(state);
    v.terminal = is_terminal(state);
    own_moves(state, role, v);
    switch (state.kind) {
        case GameKind::kThreeBox:
            fill_three_box_view(state, v);
            break;
        case GameKind::kMeyerCoin:
            fill_meyer_view(state, v);
            break;
        case GameKind::kGhz:
            fill_ghz_view(state, v);
            break;
        case GameKind::kBb84Eaves:
            fill_bb84_view(state, v);
            break;
    }
    return v;
}

TrialOutcome payoff(const GameState &state) {
    if (!is_terminal(state)) {
        throw std::logic_error("payoff requested for a non-terminal state");
    }
    TrialOutcome out;
    const auto &pay = state.config.payoffs;
    switch (state.kind) {
        case GameKind::kThreeBox: {
            const auto &h = std::get<ThreeBoxHidden>(state.hidden);
            double alice = 0;
            if (state.caught_cheating) {
                alice = pay.cheat_caught_penalty;
            } else if (!h.inspected && *state.accepted) {
                out.counted = true;
                out.win = state.found.value_or(false);
                alice = out.win ? pay.three_box_win : pay.three_box_loss;
            }
            out.payoffs[Role::kAlice] = alice;
            out.payoffs[Role::kBob] = -alice;
            break;
        }
        case GameKind::kMeyerCoin: {
            const auto &h = std::get<MeyerHidden>(state.hidden);
            out.counted = true;
            out.win = *h.heads;
            out.payoffs[Role::kAlice] = out.win ? 1 : 0;
            out.payoffs[Role::kBob] = out.win ? 0 : 1;
            break;
        }
        case GameKind::kGhz: {
            const auto &h = std::get<GhzHidden>(state.hidden);
            out.counted = true;
            out.win = ghz::team_wins(h.questions, {*h.answers[0], *h.answers[1], *h.answers[2]});
            for (int i = 0; i < 3; i++) {
                out.payoffs[ghz::player_role(i)] = out.win ? 1 : 0;
            }
            break;
        }
        case GameKind::kBb84Eaves: {
            const auto &h = std::get<Bb84Hidden>(state.hidden);
            out.counted = true;
            out.win = *h.declared == h.eve_touched;
            double team1 = 0;
            if (*h.declared) {
                team1 = h.eve_touched ? pay.catch_reward : -pay.false_alarm_penalty;
            }
            out.payoffs[Role::kTeam1Sender] = team1;
            out.payoffs[Role::kTeam1Receiver] = team1;
            out.payoffs[Role::kTeam2Eve] = pay.eve_correct_bit_reward * h.eve_correct;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------- helpers

namespace three_box {

const Basis &basis() {
    static const Basis b = Basis::of({"A", "B", "C", "D"});
    return b;
}

Projector box_projector(Box box) {
    return Projector::onto_indices(4, {static_cast<size_t>(box)});
}

}  // namespace three_box

namespace meyer {

const Basis &basis() {
    static const Basis b = Basis::of({"head", "tail"});
    return b;
}

}  // namespace meyer

namespace ghz {

const Basis &basis() {
    static const Basis b = Basis::of({"000", "001", "010", "011", "100", "101", "110", "111"});
    return b;
}

StateVector shared_state() {
    const double h = 1.0 / std::sqrt(2.0);
    return make_state(basis(), {h, 0, 0, 0, 0, 0, 0, h});
}

const std::array<std::array<Axis, 3>, 4> &question_set() {
    static const std::array<std::array<Axis, 3>, 4> q = {{
        {Axis::kX, Axis::kX, Axis::kX},
        {Axis::kX, Axis::kY, Axis::kY},
        {Axis::kY, Axis::kX, Axis::kY},
        {Axis::kY, Axis::kY, Axis::kX},
    }};
    return q;
}

bool team_wins(const std::array<Axis, 3> &questions, const std::array<int, 3> &answers) {
    bool all_x = questions[0] == Axis::kX && questions[1] == Axis::kX && questions[2] == Axis::kX;
    int product = answers[0] * answers[1] * answers[2];
    return product == (all_x ? 1 : -1);
}

int player_index(Role role) {
    switch (role) {
        case Role::kPlayer1:
            return 0;
        case Role::kPlayer2:
            return 1;
        case Role::kPlayer3:
            return 2;
        default:
            throw std::invalid_argument("not a GHZ player role");
    }
}

Role player_role(int index) {
    static const std::array<Role, 3> r = {Role::kPlayer1, Role::kPlayer2, Role::kPlayer3};
    return r.at(static_cast<size_t>(index));
}

}  // namespace ghz

namespace bb84 {

const Basis &basis() {
    static const Basis b = Basis::of({"0", "1"});
    return b;
}

StateVector encode(int bit, PhotonBasis basis) {
    static const StateVector states[4] = {
        basis_state(bb84::basis(), "0"),
        basis_state(bb84::basis(), "1"),
        make_state(bb84::basis(), {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}),
        make_state(bb84::basis(), {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}),
    };
    return states[(basis == PhotonBasis::kDiagonal ? 2 : 0) + (bit ? 1 : 0)];
}

}  // namespace bb84

}  // namespace qga
