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

#include <algorithm>
#include <sstream>

namespace qga {

using boost::multiprecision::cpp_int;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_probability(const Rational &p, const char *what) {
    if (p < 0 || p > 1) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    }
}

std::string ray_string(const Ray &r) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < r.dim(); i++) {
        if (i) {
            out << ",";
        }
        const auto &x = r[i];
        if (x.im == 0) {
            out << to_string(x.re);
        } else {
            out << to_string(x.re) << (x.im < 0 ? "-" : "+") << to_string(abs(x.im)) << "i";
        }
    }
    out << ")";
    return out.str();
}

const char *box_name(size_t i) {
    static const char *names[] = {"A", "B", "C"};
    return names[i];
}

// ---------------------------------------------------------------- three-box

struct ThreeBoxTally {
    Rational accept;  // P(accepted and not an inspection round)
    Rational win;     // P(accepted, found, not inspection)
    Rational found;   // P(found, not inspection)
    Rational caught;  // P(cheat caught)
    Rational legit;   // P(not an inspection round)
};

void validate(const ThreeBoxProfile &p) {
    if (std::holds_alternative<ThreeBoxProfile::AcceptIfFound>(p.final)) {
        throw InfeasibleProfile("Alice's accept rule reads the found flag, which is not in her view");
    }
    const auto &b = p.bob;
    require_probability(b.open_a, "bob open(A) probability");
    require_probability(b.open_b, "bob open(B) probability");
    require_probability(b.inspect, "bob inspect probability");
    if (b.open_a + b.open_b + b.inspect != 1) {
        throw std::invalid_argument("Bob's move probabilities must sum to 1");
    }
    if (const auto *pl = std::get_if<ThreeBoxProfile::Place>(&p.prepare)) {
        Rational t = 0;
        for (const auto &w : pl->weights) {
            require_probability(w, "placement weight");
            t += w;
        }
        if (t != 1) {
            throw std::invalid_argument("placement weights must sum to 1");
        }
    }
    if (const auto *pr = std::get_if<ThreeBoxProfile::Prepare>(&p.prepare)) {
        if (pr->amps.dim() != 3) {
            throw std::invalid_argument("three-box preparation needs 3 amplitudes");
        }
    }
    if (const auto *ps = std::get_if<ThreeBoxProfile::PostSelect>(&p.final)) {
        if (ps->target.dim() != 3) {
            throw std::invalid_argument("three-box post-selection target needs 3 amplitudes");
        }
    }
}

Rational accept_prob(const ThreeBoxProfile &p, const Ray &particle) {
    return std::visit(
        overloaded{
            [](const ThreeBoxProfile::AcceptAll &) { return Rational(1); },
            [](const ThreeBoxProfile::CancelAll &) { return Rational(0); },
            [&](const ThreeBoxProfile::PostSelect &ps) { return overlap_prob(ps.target.padded(4), particle); },
            [](const ThreeBoxProfile::AcceptIfFound &) -> Rational {
                throw InfeasibleProfile("Alice's accept rule reads the found flag");
            },
        },
        p.final);
}

ThreeBoxTally tally_three_box(const ThreeBoxProfile &p, const GameConfig &config) {
    validate(p);
    const Rational delta = to_rational(config.disturbance_delta);
    ThreeBoxTally t;
    t.legit = 1 - p.bob.inspect;

    // (probability, particle ray over A, B, C, D) for honest preparations.
    std::vector<std::pair<Rational, Ray>> preps;
    bool cheat = false;
    std::visit(
        overloaded{
            [&](const ThreeBoxProfile::Place &pl) {
                for (size_t i = 0; i < 3; i++) {
                    if (pl.weights[i] > 0) {
                        preps.emplace_back(pl.weights[i], Ray::basis_vector(4, i));
                    }
                }
            },
            [&](const ThreeBoxProfile::Prepare &pr) { preps.emplace_back(1, pr.amps.padded(4)); },
            [&](const ThreeBoxProfile::Cheat &) { cheat = true; },
        },
        p.prepare);

    if (cheat) {
        // Two classical particles: any opened box holds one.
        Rational acc = std::holds_alternative<ThreeBoxProfile::CancelAll>(p.final) ? 0 : 1;
        t.caught = p.bob.inspect;
        t.found = t.legit;
        t.accept = t.legit * acc;
        t.win = t.accept;
        return t;
    }

    const Ray leaked = Ray::basis_vector(4, 3);
    for (const auto &[w, v] : preps) {
        for (size_t box = 0; box < 2; box++) {
            const Rational &pb = box == 0 ? p.bob.open_a : p.bob.open_b;
            if (pb == 0) {
                continue;
            }
            uint32_t mask = 1u << box;
            Rational pf = subset_prob(v, mask);
            if (pf > 0) {
                Ray post = project(v, mask);
                Rational weight = w * pb * pf;
                t.found += weight;
                Rational acc = (1 - delta) * accept_prob(p, post);
                if (delta > 0) {
                    acc += delta * accept_prob(p, leaked);
                }
                t.accept += weight * acc;
                t.win += weight * acc;
            }
            if (pf < 1) {
                Ray post = project(v, mask, true);
                t.accept += w * pb * (1 - pf) * accept_prob(p, post);
            }
        }
    }
    return t;
}

GameValue evaluate_three_box(const ThreeBoxProfile &p, const GameConfig &config) {
    auto t = tally_three_box(p, config);
    GameValue v;
    v.value = t.accept > 0 ? Rational(t.win / t.accept) : Rational(0);
    v.details.emplace_back("accept_rate", t.accept);
    v.details.emplace_back("found_rate", t.found);
    v.details.emplace_back("accept_given_found", t.found > 0 ? Rational(t.win / t.found) : Rational(0));
    v.details.emplace_back("caught_rate", t.caught);
    v.argmax = describe(p);
    return v;
}

// ---------------------------------------------------------------- meyer

using Branches = std::vector<std::pair<Rational, Ray>>;

Branches meyer_alice(const Branches &in, const MeyerProfile::AliceMove &m) {
    Branches out;
    std::visit(
        overloaded{
            [&](const MeyerProfile::Classical &c) {
                require_probability(c.flip_prob, "flip probability");
                for (const auto &[p, v] : in) {
                    if (c.flip_prob < 1) {
                        out.emplace_back(p * (1 - c.flip_prob), v);
                    }
                    if (c.flip_prob > 0) {
                        out.emplace_back(p * c.flip_prob, RayOp::flip().apply(v));
                    }
                }
            },
            [&](const MeyerProfile::Quantum &q) {
                if (q.op.dim() != 2) {
                    throw std::invalid_argument("coin operator must be 2x2");
                }
                for (const auto &[p, v] : in) {
                    out.emplace_back(p, q.op.apply(v));
                }
            },
        },
        m);
    return out;
}

GameValue evaluate_meyer(const MeyerProfile &p, const GameConfig &config) {
    const Rational dephase = to_rational(config.dephasing_p);
    require_probability(p.bob_flip_prob, "bob flip probability");
    Branches b{{Rational(1), Ray::basis_vector(2, 0)}};
    b = meyer_alice(b, p.first);
    b = meyer_alice(b, MeyerProfile::Classical{p.bob_flip_prob});
    Branches handled;
    for (const auto &[w, v] : b) {
        if (dephase < 1) {
            handled.emplace_back(w * (1 - dephase), v);
        }
        if (dephase > 0) {
            for (size_t i = 0; i < 2; i++) {
                Rational pi = subset_prob(v, 1u << i);
                if (pi > 0) {
                    handled.emplace_back(w * dephase * pi, Ray::basis_vector(2, i));
                }
            }
        }
    }
    b = meyer_alice(handled, p.last);
    GameValue v;
    v.value = 0;
    for (const auto &[w, ray] : b) {
        v.value += w * subset_prob(ray, 1u);
    }
    v.argmax = describe(p);
    return v;
}

// ---------------------------------------------------------------- ghz

RayOp to_z_rotation(const GhzProfile::Action &a) {
    if (const auto *m = std::get_if<GhzProfile::Measure>(&a)) {
        return m->axis == Axis::kX ? RayOp::hadamard() : RayOp::hadamard() * RayOp::phase_dagger();
    }
    return RayOp::identity(2);
}

GameValue evaluate_ghz(const GhzProfile &p) {
    std::vector<GaussRational> g(8);
    g[0] = 1;
    g[7] = 1;
    const Ray shared(g);
    for (const auto &player : p.players) {
        for (const auto &a : player) {
            if (const auto *f = std::get_if<GhzProfile::Fixed>(&a); f && f->answer != 1 && f->answer != -1) {
                throw std::invalid_argument("GHZ answers must be +1 or -1");
            }
        }
    }
    GameValue v;
    v.value = 0;
    const Rational quarter(1, 4);
    for (const auto &q : ghz::question_set()) {
        std::array<const GhzProfile::Action *, 3> act{};
        for (int i = 0; i < 3; i++) {
            act[i] = &p.players[i][q[i] == Axis::kX ? 0 : 1];
        }
        RayOp rot = kron(to_z_rotation(*act[0]), kron(to_z_rotation(*act[1]), to_z_rotation(*act[2])));
        Ray u = rot.apply(shared);
        Rational n = u.norm2();
        for (size_t outcome = 0; outcome < 8; outcome++) {
            Rational po = u[outcome].norm() / n;
            if (po == 0) {
                continue;
            }
            std::array<int, 3> answers{};
            for (int i = 0; i < 3; i++) {
                if (const auto *f = std::get_if<GhzProfile::Fixed>(act[i])) {
                    answers[i] = f->answer;
                } else {
                    answers[i] = ((outcome >> (2 - i)) & 1u) ? -1 : 1;
                }
            }
            if (ghz::team_wins(q, answers)) {
                v.value += quarter * po;
            }
        }
    }
    v.argmax = describe(p);
    return v;
}

// ---------------------------------------------------------------- bb84

Ray photon_ray(int bit, int basis) {
    if (basis == 0) {
        return Ray::basis_vector(2, static_cast<size_t>(bit));
    }
    return Ray({1, bit ? -1 : 1});
}

cpp_int binomial(int n, int k) {
    cpp_int r = 1;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

Rational pow_rational(const Rational &x, int e) {
    Rational r = 1;
    for (int i = 0; i < e; i++) {
        r *= x;
    }
    return r;
}

/// Error probability on one sifted check bit, by enumerating sender bit
/// and basis, Eve's action and outcome, and the receiver's outcome.
Rational per_check_error(const Rational &intercept) {
    Rational err = 0;
    const Rational quarter(1, 4);
    for (int basis = 0; basis < 2; basis++) {
        for (int bit = 0; bit < 2; bit++) {
            Ray sent = photon_ray(bit, basis);
            // (probability, photon reaching the receiver)
            std::vector<std::pair<Rational, Ray>> arriving;
            if (intercept < 1) {
                arriving.emplace_back(1 - intercept, sent);
            }
            if (intercept > 0) {
                for (int eve_basis = 0; eve_basis < 2; eve_basis++) {
                    for (int r = 0; r < 2; r++) {
                        Ray resent = photon_ray(r, eve_basis);
                        Rational pr = overlap_prob(resent, sent);
                        if (pr > 0) {
                            arriving.emplace_back(intercept * Rational(1, 2) * pr, resent);
                        }
                    }
                }
            }
            for (const auto &[w, photon] : arriving) {
                err += quarter * w * overlap_prob(photon_ray(1 - bit, basis), photon);
            }
        }
    }
    return err;
}

GameValue evaluate_bb84(const Bb84Profile &p, const GameConfig &config) {
    require_probability(p.intercept_prob, "intercept probability");
    const int n = config.bb84_n_photons;
    const int k = config.bb84_check_bits;
    const Rational tau = to_rational(config.bb84_error_threshold);
    const Rational q = per_check_error(p.intercept_prob);
    const Rational two_n = Rational(cpp_int(1) << n);

    // Detection probability given m check bits.
    std::vector<Rational> detect(static_cast<size_t>(k) + 1);
    for (int m = 0; m <= k; m++) {
        Rational d = 0;
        for (int e = 0; e <= m; e++) {
            if (Rational(e) > tau * m) {
                d += Rational(binomial(m, e)) * pow_rational(q, e) * pow_rational(1 - q, m - e);
            }
        }
        detect[static_cast<size_t>(m)] = d;
    }
    Rational total = 0;
    for (int s = 0; s <= n; s++) {
        total += Rational(binomial(n, s)) / two_n * detect[static_cast<size_t>(std::min(s, k))];
    }
    GameValue v;
    v.value = total;
    v.details.emplace_back("per_check_error", q);
    v.details.emplace_back("eve_bit_guess_rate", p.intercept_prob * Rational(3, 4) + (1 - p.intercept_prob) / 2);
    v.argmax = describe(p);
    return v;
}

// ---------------------------------------------------------------- enumeration

ThreeBoxProfile::BobMix bob_uniform() {
    return {Rational(1, 2), Rational(1, 2), Rational(0)};
}

ThreeBoxProfile classical_three_box_baseline() {
    return ThreeBoxProfile{
        .prepare = ThreeBoxProfile::Place{{Rational(1, 2), Rational(1, 2), Rational(0)}},
        .bob = bob_uniform(),
        .final = ThreeBoxProfile::AcceptAll{},
    };
}

std::string final_name(const ThreeBoxProfile &p) {
    return std::visit(
        overloaded{
            [](const ThreeBoxProfile::AcceptAll &) { return std::string("accept"); },
            [](const ThreeBoxProfile::CancelAll &) { return std::string("cancel"); },
            [](const ThreeBoxProfile::PostSelect &ps) { return "post-select" + ray_string(ps.target); },
            [](const ThreeBoxProfile::AcceptIfFound &) { return std::string("accept-if-found"); },
        },
        p.final);
}

std::vector<EnumeratedProfile> enumerate_three_box(const std::set<Role> &roles) {
    struct AliceRule {
        size_t box;
        std::variant<ThreeBoxProfile::AcceptAll, ThreeBoxProfile::CancelAll, ThreeBoxProfile::PostSelect> final;
        std::string name;
    };
    std::vector<AliceRule> alice;
    for (size_t box = 0; box < 3; box++) {
        std::string place = std::string("place(") + box_name(box) + ")";
        alice.push_back({box, ThreeBoxProfile::AcceptAll{}, place + "+accept"});
        alice.push_back({box, ThreeBoxProfile::CancelAll{}, place + "+cancel"});
        for (size_t look = 0; look < 3; look++) {
            alice.push_back(
                {box,
                 ThreeBoxProfile::PostSelect{Ray::basis_vector(3, look)},
                 place + "+accept-if-in(" + box_name(look) + ")"});
        }
    }
    std::vector<std::pair<ThreeBoxProfile::BobMix, std::string>> bob = {
        {{Rational(1), Rational(0), Rational(0)}, "open(A)"},
        {{Rational(0), Rational(1), Rational(0)}, "open(B)"},
    };

    auto base = classical_three_box_baseline();
    std::vector<EnumeratedProfile> out;
    auto emit = [&](const ThreeBoxProfile &p, const std::string &desc) { out.push_back({desc, p}); };
    bool with_alice = roles.count(Role::kAlice) > 0;
    bool with_bob = roles.count(Role::kBob) > 0;
    std::vector<const AliceRule *> alice_rules;
    if (with_alice) {
        for (const auto &a : alice) {
            alice_rules.push_back(&a);
        }
    } else {
        alice_rules.push_back(nullptr);
    }
    for (const auto *a : alice_rules) {
        ThreeBoxProfile p = base;
        std::string desc;
        if (a) {
            std::array<Rational, 3> w{0, 0, 0};
            w[a->box] = 1;
            p.prepare = ThreeBoxProfile::Place{w};
            std::visit([&](const auto &f) { p.final = f; }, a->final);
            desc = "alice=" + a->name;
        }
        if (with_bob) {
            for (const auto &[mix, name] : bob) {
                ThreeBoxProfile pb = p;
                pb.bob = mix;
                emit(pb, desc + (desc.empty() ? "" : " ") + "bob=" + name);
            }
        } else {
            emit(p, desc);
        }
    }
    return out;
}

std::vector<EnumeratedProfile> enumerate_meyer(const std::set<Role> &roles) {
    bool with_alice = roles.count(Role::kAlice) > 0;
    bool with_bob = roles.count(Role::kBob) > 0;
    std::vector<EnumeratedProfile> out;
    auto name = [](int f) { return f ? "flip" : "no_flip"; };
    for (int first = 0; first < (with_alice ? 2 : 1); first++) {
        for (int last = 0; last < (with_alice ? 2 : 1); last++) {
            for (int bob = 0; bob < (with_bob ? 2 : 1); bob++) {
                MeyerProfile p{
                    .first = MeyerProfile::Classical{with_alice ? Rational(first) : Rational(1, 2)},
                    .bob_flip_prob = with_bob ? Rational(bob) : Rational(1, 2),
                    .last = MeyerProfile::Classical{Rational(with_alice ? last : 0)},
                };
                std::string desc;
                if (with_alice) {
                    desc = std::string("alice=") + name(first) + "," + name(last);
                }
                if (with_bob) {
                    desc += (desc.empty() ? "" : " ") + std::string("bob=") + name(bob);
                }
                out.push_back({desc, p});
            }
        }
    }
    return out;
}

std::vector<EnumeratedProfile> enumerate_ghz(const std::set<Role> &roles) {
    std::array<bool, 3> active{};
    for (int i = 0; i < 3; i++) {
        active[i] = roles.count(ghz::player_role(i)) > 0;
    }
    // Player rule r in [0, 4): bit 1 = answer on x is -1, bit 0 = answer on y is -1.
    auto rule = [](int r) {
        return std::array<GhzProfile::Action, 2>{
            GhzProfile::Fixed{(r & 2) ? -1 : 1},
            GhzProfile::Fixed{(r & 1) ? -1 : 1},
        };
    };
    auto rule_name = [](int r) {
        return std::string("x->") + ((r & 2) ? "-1" : "+1") + ",y->" + ((r & 1) ? "-1" : "+1");
    };
    std::vector<EnumeratedProfile> out;
    int n0 = active[0] ? 4 : 1, n1 = active[1] ? 4 : 1, n2 = active[2] ? 4 : 1;
    for (int a = 0; a < n0; a++) {
        for (int b = 0; b < n1; b++) {
            for (int c = 0; c < n2; c++) {
                std::array<int, 3> r{a, b, c};
                GhzProfile p;
                std::string desc;
                for (int i = 0; i < 3; i++) {
                    p.players[i] = rule(r[i]);
                    if (active[i]) {
                        desc += (desc.empty() ? "" : " ") + std::string(to_string(ghz::player_role(i))) + "=" +
                                rule_name(r[i]);
                    }
                }
                out.push_back({desc, p});
            }
        }
    }
    return out;
}

std::string mixture_string(const std::vector<std::string> &names, const std::vector<Rational> &w) {
    std::string out;
    for (size_t i = 0; i < names.size(); i++) {
        if (w[i] == 0) {
            continue;
        }
        out += (out.empty() ? "" : " ") + names[i] + ":" + to_string(w[i]);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- public

GameKind kind_of(const Profile &profile) {
    return std::visit(
        overloaded{
            [](const ThreeBoxProfile &) { return GameKind::kThreeBox; },
            [](const MeyerProfile &) { return GameKind::kMeyerCoin; },
            [](const GhzProfile &) { return GameKind::kGhz; },
            [](const Bb84Profile &) { return GameKind::kBb84Eaves; },
        },
        profile);
}

std::string describe(const Profile &profile) {
    std::ostringstream out;
    std::visit(
        overloaded{
            [&](const ThreeBoxProfile &p) {
                out << "alice=";
                std::visit(
                    overloaded{
                        [&](const ThreeBoxProfile::Place &pl) {
                            out << "place[" << mixture_string({"A", "B", "C"}, {pl.weights.begin(), pl.weights.end()})
                                << "]";
                        },
                        [&](const ThreeBoxProfile::Prepare &pr) { out << "prepare" << ray_string(pr.amps); },
                        [&](const ThreeBoxProfile::Cheat &) { out << "cheat"; },
                    },
                    p.prepare);
                out << "+" << final_name(p) << " bob=["
                    << mixture_string({"open(A)", "open(B)", "inspect"}, {p.bob.open_a, p.bob.open_b, p.bob.inspect})
                    << "]";
            },
            [&](const MeyerProfile &p) {
                auto move = [](const MeyerProfile::AliceMove &m) {
                    return std::visit(
                        overloaded{
                            [](const MeyerProfile::Classical &c) { return "flip:" + to_string(c.flip_prob); },
                            [](const MeyerProfile::Quantum &q) {
                                std::string s = "unitary[";
                                for (size_t r = 0; r < q.op.dim(); r++) {
                                    s += r ? ";" : "";
                                    std::vector<GaussRational> row;
                                    for (size_t c = 0; c < q.op.dim(); c++) {
                                        row.push_back(q.op.at(r, c));
                                    }
                                    s += ray_string(Ray(row));
                                }
                                return s + "]";
                            },
                        },
                        m);
                };
                out << "alice=" << move(p.first) << "," << move(p.last) << " bob=flip:" << to_string(p.bob_flip_prob);
            },
            [&](const GhzProfile &p) {
                for (int i = 0; i < 3; i++) {
                    out << (i ? " " : "") << to_string(ghz::player_role(i)) << "=";
                    for (int q = 0; q < 2; q++) {
                        out << (q ? "," : "") << (q ? "y->" : "x->");
                        std::visit(
                            overloaded{
                                [&](const GhzProfile::Fixed &f) { out << (f.answer > 0 ? "+1" : "-1"); },
                                [&](const GhzProfile::Measure &m) { out << "measure(" << to_string(m.axis) << ")"; },
                            },
                            p.players[i][q]);
                    }
                }
            },
            [&](const Bb84Profile &p) { out << "eve=intercept:" << to_string(p.intercept_prob) << " team1=threshold"; },
        },
        profile);
    return out.str();
}

Profile quantum_profile(GameKind kind) {
    switch (kind) {
        case GameKind::kThreeBox:
            return ThreeBoxProfile{
                .prepare = ThreeBoxProfile::Prepare{Ray({1, 1, 1})},
                .bob = bob_uniform(),
                .final = ThreeBoxProfile::PostSelect{Ray({1, 1, -1})},
            };
        case GameKind::kMeyerCoin:
            return MeyerProfile{
                .first = MeyerProfile::Quantum{RayOp::hadamard()},
                .bob_flip_prob = Rational(1, 2),
                .last = MeyerProfile::Quantum{RayOp::hadamard()},
            };
        case GameKind::kGhz: {
            GhzProfile p;
            for (auto &player : p.players) {
                player = {GhzProfile::Measure{Axis::kX}, GhzProfile::Measure{Axis::kY}};
            }
            return p;
        }
        case GameKind::kBb84Eaves:
            return Bb84Profile{Rational(1)};
    }
    throw std::invalid_argument("unknown game kind");
}

Profile build_profile(GameKind kind, const std::map<std::string, std::string> &choices, const GameConfig &config) {
    auto pick = [&](const std::string &key, const std::string &fallback) {
        auto it = choices.find(key);
        return it == choices.end() ? fallback : it->second;
    };
    auto known = [&](std::initializer_list<const char *> keys) {
        for (const auto &[k, v] : choices) {
            bool ok = false;
            for (const char *allowed : keys) {
                ok = ok || k == allowed;
            }
            if (!ok) {
                throw std::invalid_argument(
                    "'" + k + "' is not a configurable role of " + std::string(to_string(kind)));
            }
        }
    };
    auto bad = [&](const std::string &role, const std::string &name) {
        return std::invalid_argument("unknown " + role + " policy '" + name + "' for " + std::string(to_string(kind)));
    };

    switch (kind) {
        case GameKind::kThreeBox: {
            known({"alice", "bob"});
            auto p = std::get<ThreeBoxProfile>(quantum_profile(kind));
            auto alice = pick("alice", "quantum");
            if (alice == "classical") {
                p.prepare = classical_three_box_baseline().prepare;
                p.final = ThreeBoxProfile::AcceptAll{};
            } else if (alice == "place-A" || alice == "place-B" || alice == "place-C") {
                std::array<Rational, 3> w{0, 0, 0};
                w[static_cast<size_t>(alice.back() - 'A')] = 1;
                p.prepare = ThreeBoxProfile::Place{w};
                p.final = ThreeBoxProfile::AcceptAll{};
            } else if (alice == "cheat") {
                p.prepare = ThreeBoxProfile::Cheat{};
                p.final = ThreeBoxProfile::AcceptAll{};
            } else if (alice != "quantum") {
                throw bad("alice", alice);
            }
            auto bob = pick("bob", "uniform");
            Rational q = to_rational(config.inspect_prob);
            if (bob == "uniform") {
                p.bob = bob_uniform();
            } else if (bob == "uniform-inspect") {
                p.bob = {(1 - q) / 2, (1 - q) / 2, q};
            } else if (bob == "A") {
                p.bob = {1, 0, 0};
            } else if (bob == "B") {
                p.bob = {0, 1, 0};
            } else if (bob == "inspect") {
                p.bob = {0, 0, 1};
            } else {
                throw bad("bob", bob);
            }
            return p;
        }
        case GameKind::kMeyerCoin: {
            known({"alice", "bob"});
            auto p = std::get<MeyerProfile>(quantum_profile(kind));
            auto alice = pick("alice", "quantum");
            if (alice == "classical") {
                p.first = MeyerProfile::Classical{Rational(1, 2)};
                p.last = MeyerProfile::Classical{Rational(0)};
            } else if (alice != "quantum") {
                throw bad("alice", alice);
            }
            auto bob = pick("bob", "uniform");
            if (bob == "uniform") {
                p.bob_flip_prob = Rational(1, 2);
            } else if (bob == "flip") {
                p.bob_flip_prob = 1;
            } else if (bob == "no-flip") {
                p.bob_flip_prob = 0;
            } else {
                throw bad("bob", bob);
            }
            return p;
        }
        case GameKind::kGhz: {
            known({"players"});
            auto players = pick("players", "quantum");
            if (players == "quantum") {
                return quantum_profile(kind);
            }
            if (players == "classical") {
                auto all = enumerate_ghz({Role::kPlayer1, Role::kPlayer2, Role::kPlayer3});
                const EnumeratedProfile *best = nullptr;
                Rational best_value = -1;
                for (const auto &e : all) {
                    auto v = evaluate_ghz(std::get<GhzProfile>(e.profile)).value;
                    if (v > best_value) {
                        best_value = v;
                        best = &e;
                    }
                }
                return best->profile;
            }
            throw bad("players", players);
        }
        case GameKind::kBb84Eaves: {
            known({"eve"});
            auto eve = pick("eve", "intercept");
            if (eve == "intercept") {
                return Bb84Profile{Rational(1)};
            }
            if (eve == "pass") {
                return Bb84Profile{Rational(0)};
            }
            double f = 0;
            try {
                size_t used = 0;
                f = std::stod(eve, &used);
                if (used != eve.size()) {
                    throw bad("eve", eve);
                }
            } catch (const std::logic_error &) {
                throw bad("eve", eve);
            }
            Rational r = to_rational(f);
            require_probability(r, "intercept fraction");
            return Bb84Profile{r};
        }
    }
    throw std::invalid_argument("unknown game kind");
}

const Rational *GameValue::detail(std::string_view key) const {
    for (const auto &[k, v] : details) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

std::vector<EnumeratedProfile> enumerate_deterministic(GameKind kind, const std::set<Role> &roles, MoveClass move_class) {
    if (move_class == MoveClass::kQuantum) {
        throw NotEnumerable("quantum move sets are continuous and cannot be enumerated");
    }
    auto game_roles = roles_of(kind);
    for (Role r : roles) {
        if (std::find(game_roles.begin(), game_roles.end(), r) == game_roles.end() || r == auditor_of(kind)) {
            throw std::invalid_argument(
                "role " + std::string(to_string(r)) + " has no moves in " + std::string(to_string(kind)));
        }
    }
    switch (kind) {
        case GameKind::kThreeBox:
            return enumerate_three_box(roles);
        case GameKind::kMeyerCoin:
            return enumerate_meyer(roles);
        case GameKind::kGhz:
            return enumerate_ghz(roles);
        case GameKind::kBb84Eaves:
            throw NotEnumerable("bb84-eaves has 3^n Eve strategies per round; not enumerable");
    }
    throw std::invalid_argument("unknown game kind");
}

GameValue evaluate(GameKind kind, const Profile &profile, const GameConfig &config) {
    config.validate();
    if (kind_of(profile) != kind) {
        throw std::invalid_argument("profile does not belong to " + std::string(to_string(kind)));
    }
    return std::visit(
        overloaded{
            [&](const ThreeBoxProfile &p) { return evaluate_three_box(p, config); },
            [&](const MeyerProfile &p) { return evaluate_meyer(p, config); },
            [&](const GhzProfile &p) { return evaluate_ghz(p); },
            [&](const Bb84Profile &p) { return evaluate_bb84(p, config); },
        },
        profile);
}

MatrixGameSolution solve_two_column(const std::vector<std::array<Rational, 2>> &a) {
    if (a.empty()) {
        throw std::invalid_argument("matrix game needs at least one row");
    }
    // Column player picks t = P(column 0) minimizing the upper envelope
    // f(t) = max_i (t a_i0 + (1 - t) a_i1). The minimum of this convex
    // piecewise-linear function sits at an endpoint or a crossing.
    std::vector<Rational> candidates{0, 1};
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = i + 1; j < a.size(); j++) {
            Rational denom = (a[i][0] - a[i][1]) - (a[j][0] - a[j][1]);
            if (denom == 0) {
                continue;
            }
            Rational t = (a[j][1] - a[i][1]) / denom;
            if (t > 0 && t < 1) {
                candidates.push_back(t);
            }
        }
    }
    auto envelope = [&](const Rational &t) {
        Rational best = t * a[0][0] + (1 - t) * a[0][1];
        for (const auto &row : a) {
            best = std::max(best, Rational(t * row[0] + (1 - t) * row[1]));
        }
        return best;
    };
    MatrixGameSolution sol;
    sol.value = envelope(candidates[0]);
    sol.column0 = candidates[0];
    for (const auto &t : candidates) {
        Rational f = envelope(t);
        if (f < sol.value) {
            sol.value = f;
            sol.column0 = t;
        }
    }
    // Row player: an optimal mixture needs at most two rows.
    sol.rows.assign(a.size(), 0);
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = i; j < a.size(); j++) {
            std::vector<Rational> ws{0, 1};
            Rational denom = (a[i][0] - a[j][0]) - (a[i][1] - a[j][1]);
            if (denom != 0) {
                Rational w = (a[j][1] - a[j][0]) / denom;
                if (w > 0 && w < 1) {
                    ws.push_back(w);
                }
            }
            for (const auto &w : ws) {
                Rational c0 = w * a[i][0] + (1 - w) * a[j][0];
                Rational c1 = w * a[i][1] + (1 - w) * a[j][1];
                if (std::min(c0, c1) == sol.value) {
                    sol.rows[i] += w;
                    sol.rows[j] += 1 - w;
                    return sol;
                }
            }
        }
    }
    throw std::logic_error("no optimal row mixture found");
}

GameValue classical_value(GameKind kind, const GameConfig &config) {
    config.validate();
    switch (kind) {
        case GameKind::kThreeBox: {
            // Rows: placements; columns: Bob's box. Each entry is Alice's
            // best conditional win over her final rules for that cell.
            auto all = enumerate_deterministic(kind, {Role::kAlice, Role::kBob});
            std::vector<std::array<Rational, 2>> m(3, {Rational(0), Rational(0)});
            for (const auto &e : all) {
                const auto &p = std::get<ThreeBoxProfile>(e.profile);
                if (!conditional_independence_check(e.profile, config)) {
                    throw NonReducible("classical profile with found-dependent acceptance: " + e.description);
                }
                const auto &w = std::get<ThreeBoxProfile::Place>(p.prepare).weights;
                size_t row = static_cast<size_t>(std::find(w.begin(), w.end(), Rational(1)) - w.begin());
                size_t col = p.bob.open_a == 1 ? 0 : 1;
                m[row][col] = std::max(m[row][col], evaluate(kind, e.profile, config).value);
            }
            auto sol = solve_two_column(m);
            GameValue v;
            v.value = sol.value;
            v.argmax = "alice=[" + mixture_string({"place(A)", "place(B)", "place(C)"}, sol.rows) +
                       "]+accept bob=[open(A):" + to_string(sol.column0) + " open(B):" + to_string(1 - sol.column0) +
                       "]";
            return v;
        }
        case GameKind::kMeyerCoin: {
            auto all = enumerate_deterministic(kind, {Role::kAlice, Role::kBob});
            std::vector<std::array<Rational, 2>> m;
            std::vector<std::string> names;
            for (size_t i = 0; i < all.size(); i += 2) {
                // Consecutive entries share Alice's rule: bob=no_flip, bob=flip.
                m.push_back({evaluate(kind, all[i].profile, config).value,
                             evaluate(kind, all[i + 1].profile, config).value});
                names.push_back(all[i].description.substr(0, all[i].description.find(' ')));
            }
            auto sol = solve_two_column(m);
            GameValue v;
            v.value = sol.value;
            v.argmax = "[" + mixture_string(names, sol.rows) + "] bob=[no_flip:" + to_string(sol.column0) +
                       " flip:" + to_string(1 - sol.column0) + "]";
            return v;
        }
        case GameKind::kGhz: {
            auto all = enumerate_deterministic(kind, {Role::kPlayer1, Role::kPlayer2, Role::kPlayer3});
            GameValue best;
            best.value = -1;
            for (const auto &e : all) {
                auto v = evaluate(kind, e.profile, config);
                if (v.value > best.value) {
                    best.value = v.value;
                    best.argmax = e.description;
                }
            }
            return best;
        }
        case GameKind::kBb84Eaves:
            throw NonReducible("bb84-eaves has no classical counterpart to reduce to a matrix game");
    }
    throw std::invalid_argument("unknown game kind");
}

GameValue quantum_value(GameKind kind, const GameConfig &config) {
    return evaluate(kind, quantum_profile(kind), config);
}

bool conditional_independence_check(const Profile &profile, const GameConfig &config) {
    const auto *p = std::get_if<ThreeBoxProfile>(&profile);
    if (!p) {
        throw std::invalid_argument("conditional independence check applies to three-box profiles only");
    }
    auto t = tally_three_box(*p, config);
    if (t.legit == 0) {
        return true;
    }
    // P(A and F | legit) == P(A | legit) P(F | legit).
    return t.win * t.legit == t.accept * t.found;
}

}  // namespace qga
