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

#include "qga/rng.h"

namespace qga {

namespace {

inline uint64_t splitmix(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

uint64_t mix_key(uint64_t seed, uint64_t stream, uint64_t counter) {
    // Three chained rounds; each key word passes through a full avalanche
    // before the next one is folded in.
    uint64_t h = splitmix(seed);
    h = splitmix(h ^ stream);
    h = splitmix(h ^ counter);
    return h;
}

uint64_t RandomStream::next_u64() {
    return mix_key(seed_, stream_, counter_++);
}

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t RandomStream::below(uint64_t n) {
    // Rejection sampling removes modulo bias.
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    while (true) {
        uint64_t x = next_u64();
        if (x < limit) {
            return x % n;
        }
    }
}

}  // namespace qga
