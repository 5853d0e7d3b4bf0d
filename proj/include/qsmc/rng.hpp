// Copyright 2026 The qsmc Authors
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
#include <limits>

namespace qsmc {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t v) {
    v += 0x9e3779b97f4a7c15ULL;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    return v ^ (v >> 31);
}

/// Counter-based random stream: output k is a pure function of (key, k).
///
/// Streams for independent Monte-Carlo trials come from split(index), so
/// trial i draws the same numbers no matter how trials are scheduled.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed) : seed_(seed), key_(mix64(seed)) {}

    RngStream split(std::uint64_t index) const {
        RngStream child(seed_);
        child.key_ = mix64(key_ ^ mix64(index + 0x632be59bd9b4e019ULL));
        return child;
    }

    /// Value at a given counter position without advancing.
    std::uint64_t at(std::uint64_t counter) const {
        return mix64(key_ + counter * 0xd1342543de82ef95ULL);
    }

    std::uint64_t operator()() { return at(counter_++); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

private:
    std::uint64_t seed_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace qsmc
