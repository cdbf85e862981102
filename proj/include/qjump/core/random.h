// Copyright 2026 The qjump Authors
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
#include <initializer_list>
#include <limits>
#include <random>
#include <string_view>

namespace qjump {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// FNV-1a over a string, for turning case labels into stream ids.
constexpr uint64_t hash_label(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (char c : s) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001B3ull;
    }
    return h;
}

/// Derives the seed of an independent stream from a master seed and a path
/// of counters (case id, run index, trajectory index, ...). The result only
/// depends on the inputs, never on which thread asks or in what order.
constexpr uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path) {
    uint64_t h = mix64(master);
    for (uint64_t p : path) {
        h = mix64(h ^ mix64(p + 0x632BE59BD9B4E019ull));
    }
    return h;
}

/// A reproducible random stream.
///
/// Uses std::mt19937_64 (whose output sequence is fixed by the standard) and
/// builds the floating and integer draws by hand, because the std
/// distributions are allowed to differ between library implementations.
class RandomStream {
   public:
    using result_type = uint64_t;

    explicit RandomStream(uint64_t seed) : engine_(seed) {}

    static RandomStream derived(uint64_t master, std::initializer_list<uint64_t> path) {
        return RandomStream(derive_seed(master, path));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n); n must be positive.
    uint64_t below(uint64_t n) {
        // Rejection on the top of the range keeps the draw exactly uniform.
        const uint64_t limit = max() - max() % n;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace qjump
