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

#include <string>
#include <vector>

#include "qga/hilbert.h"

namespace qga {

/// Row-major dim x dim Kraus operator.
using KrausOp = std::vector<Amplitude>;

/// With probability p, an unrecorded projective measurement in the
/// computational basis; otherwise identity.
class DephasingChannel {
   public:
    DephasingChannel(double strength, Basis basis);

    double strength() const {
        return strength_;
    }
    const Basis &basis() const {
        return basis_;
    }
    /// {sqrt(1-p) I} U {sqrt(p) |i><i|}.
    std::vector<KrausOp> kraus() const;

   private:
    double strength_;
    Basis basis_;
};

/// With probability delta, the state is replaced by the flagged leak state
/// (label "D" by default), which lies outside the game's working subspace.
class DisturbanceChannel {
   public:
    DisturbanceChannel(double leak_prob, Basis basis, std::string leak_target = "D");

    double leak_prob() const {
        return leak_prob_;
    }
    const Basis &basis() const {
        return basis_;
    }
    const std::string &leak_target() const {
        return leak_target_;
    }
    /// {sqrt(1-delta) I} U {sqrt(delta) |D><i|}.
    std::vector<KrausOp> kraus() const;

   private:
    double leak_prob_;
    Basis basis_;
    std::string leak_target_;
};

/// Trajectory sample of the dephasing channel. Always draws one variate for
/// the branch choice, plus one for the Born sample when the channel fires.
StateVector dephase(const DephasingChannel &ch, const StateVector &s, RandomStream &rng);

/// Trajectory sample of the disturbance channel. Draws one variate.
StateVector disturb(const DisturbanceChannel &ch, const StateVector &s, RandomStream &rng);

}  // namespace qga
