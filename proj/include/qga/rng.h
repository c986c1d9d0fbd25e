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

#include <cstdint>

namespace qga {

/// Counter-based random stream. Every draw is a pure function of
/// (seed, stream, draw index), so a trial can be replayed from its
/// coordinates alone and trials can run on any thread in any order.
class RandomStream {
   public:
    RandomStream(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {
    }

    uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    bool bernoulli(double p) {
        return uniform() < p;
    }

    /// Uniform integer in [0, n). n must be positive.
    uint64_t below(uint64_t n);

    uint64_t seed() const {
        return seed_;
    }
    uint64_t stream() const {
        return stream_;
    }
    uint64_t draws() const {
        return counter_;
    }

   private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_ = 0;
};

/// Stateless mixing function behind RandomStream.
uint64_t mix_key(uint64_t seed, uint64_t stream, uint64_t counter);

}  // namespace qga
