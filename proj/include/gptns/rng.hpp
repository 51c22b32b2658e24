// Copyright 2026 The gptns Authors
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

#include <cstddef>
#include <cstdint>

#include "gptns/matrix.hpp"

namespace gptns {

/// Counter-based generator: output k of stream s under seed is a SplitMix64
/// hash of (seed, s, k). Splitting derives an independent stream, so results
/// never depend on how many draws some other consumer made. Deliberately
/// avoids <random> distributions, whose outputs vary across standard
/// libraries.
class Rng {
   public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept : seed_(seed), stream_(stream) {
    }

    /// Independent child stream; the parent's counter is unaffected.
    Rng split(std::uint64_t child) const noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept;
    double normal() noexcept;
    /// Uniform on {0, ..., n-1}; n must be positive.
    std::size_t below(std::size_t n) noexcept;
    /// Uniform point of the probability simplex with n vertices.
    Vector simplex_point(std::size_t n) noexcept;

   private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace gptns
