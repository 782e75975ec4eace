// Copyright 2026 The ciswap Authors
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

#ifndef CISWAP_RNG_H
#define CISWAP_RNG_H

#include <cstdint>
#include <random>

namespace ciswap {

// Every stochastic operation draws from a stream keyed by (seed, index) so
// results are reproducible independent of evaluation order.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index + 0x632BE59BD9B4E019ULL));
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t index = 0) {
    return std::mt19937_64(mix_seed(seed, index));
}

}  // namespace ciswap

#endif
