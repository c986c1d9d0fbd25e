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

#include "qga/channels.h"

#include <cmath>
#include <stdexcept>

namespace qga {

namespace {

void check_probability(double p, const char *what) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    }
}

void check_basis(const Basis &expected, const StateVector &s) {
    if (!(expected == s.basis())) {
        throw std::invalid_argument("basis mismatch between channel and state");
    }
}

}  // namespace

DephasingChannel::DephasingChannel(double strength, Basis basis) : strength_(strength), basis_(basis) {
    check_probability(strength, "dephasing strength");
}

std::vector<KrausOp> DephasingChannel::kraus() const {
    size_t d = basis_.dim();
    std::vector<KrausOp> ops;
    KrausOp id(d * d);
    for (size_t i = 0; i < d; i++) {
        id[i * d + i] = std::sqrt(1 - strength_);
    }
    ops.push_back(id);
    for (size_t i = 0; i < d; i++) {
        KrausOp k(d * d);
        k[i * d + i] = std::sqrt(strength_);
        ops.push_back(k);
    }
    return ops;
}

DisturbanceChannel::DisturbanceChannel(double leak_prob, Basis basis, std::string leak_target)
    : leak_prob_(leak_prob), basis_(basis), leak_target_(std::move(leak_target)) {
    check_probability(leak_prob, "disturbance probability");
    if (!basis_.index_of(leak_target_)) {
        throw std::invalid_argument("basis is missing the leak label '" + leak_target_ + "'");
    }
}

std::vector<KrausOp> DisturbanceChannel::kraus() const {
    size_t d = basis_.dim();
    size_t leak = basis_.require(leak_target_);
    std::vector<KrausOp> ops;
    KrausOp id(d * d);
    for (size_t i = 0; i < d; i++) {
        id[i * d + i] = std::sqrt(1 - leak_prob_);
    }
    ops.push_back(id);
    for (size_t i = 0; i < d; i++) {
        KrausOp k(d * d);
        k[leak * d + i] = std::sqrt(leak_prob_);
        ops.push_back(k);
    }
    return ops;
}

StateVector dephase(const DephasingChannel &ch, const StateVector &s, RandomStream &rng) {
    check_basis(ch.basis(), s);
    if (rng.uniform() >= ch.strength()) {
        return s;
    }
    double u = rng.uniform();
    double acc = 0;
    size_t pick = s.dim() - 1;
    for (size_t i = 0; i < s.dim(); i++) {
        acc += std::norm(s.amp(i));
        if (u < acc) {
            pick = i;
            break;
        }
    }
    // Guard against landing on a zero-weight tail entry through rounding.
    while (std::norm(s.amp(pick)) == 0 && pick > 0) {
        pick--;
    }
    return basis_state(s.basis(), s.basis().label(pick));
}

StateVector disturb(const DisturbanceChannel &ch, const StateVector &s, RandomStream &rng) {
    check_basis(ch.basis(), s);
    if (rng.uniform() < ch.leak_prob()) {
        return basis_state(s.basis(), ch.leak_target());
    }
    return s;
}

}  // namespace qga
