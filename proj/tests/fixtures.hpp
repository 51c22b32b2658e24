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


// Random instances shared by the unit tests and the acceptance suite.

#pragma once

#include <vector>

#include "gptns/gpt_model.hpp"
#include "gptns/rng.hpp"
#include "gptns/theories.hpp"

namespace fixtures {

using gptns::RealMatrix;
using gptns::Vector;

inline RealMatrix outer(const Vector &s, const Vector &e) {
    return RealMatrix::column(s) * RealMatrix::row(e);
}

/// Extremal gbit effect 1/2 (1, +-1, 0) or 1/2 (1, 0, +-1).
inline Vector gbit_effect(int axis, int sign) {
    Vector e{0.5, 0, 0};
    e[static_cast<std::size_t>(axis)] = 0.5 * sign;
    return e;
}

/// Random point of the state space: a convex mixture of the extremal states.
inline Vector random_state(const gptns::GptSystem &sys, gptns::Rng &rng) {
    const auto &gens = sys.state_cone.generators();
    Vector p = rng.simplex_point(gens.size());
    Vector s(sys.dim, 0.0);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        for (std::size_t r = 0; r < s.size(); ++r) {
            s[r] += p[j] * gens[j][r];
        }
    }
    return s;
}

/// Random element of DP and K at once: a nonnegative combination of s e^T
/// over extremal states and effects whose effect weights add up to the
/// discard. Classical and gbit systems only.
inline RealMatrix random_dp_k(const gptns::TheorySpec &t, gptns::Rng &rng) {
    const auto &states = t.system.state_cone.generators();
    RealMatrix x(t.system.dim, t.system.dim);
    std::vector<std::pair<double, Vector>> weighted_effects;
    if (t.kind == gptns::TheoryKind::Gbit) {
        double a = rng.uniform();
        for (int axis = 1; axis <= 2; ++axis) {
            for (int sign : {1, -1}) {
                weighted_effects.emplace_back(axis == 1 ? a : 1.0 - a, gbit_effect(axis, sign));
            }
        }
    } else {
        for (const auto &e : t.system.effect_cone.generators()) {
            weighted_effects.emplace_back(1.0, e);
        }
    }
    for (const auto &[mu, e] : weighted_effects) {
        Vector p = rng.simplex_point(states.size());
        for (std::size_t k = 0; k < states.size(); ++k) {
            x += (mu * p[k]) * outer(states[k], e);
        }
    }
    return x;
}

/// Random measure-and-prepare channel: a refined extremal measurement
/// followed by random states.
inline gptns::PartitionedMap random_measure_prepare(const gptns::TheorySpec &t, gptns::Rng &rng) {
    std::vector<Vector> effects;
    if (t.kind == gptns::TheoryKind::Gbit) {
        int axis = 1 + static_cast<int>(rng.below(2));
        for (int sign : {1, -1}) {
            double cut = rng.uniform();
            for (double part : {cut, 1.0 - cut}) {
                Vector e = gbit_effect(axis, sign);
                for (auto &v : e) {
                    v *= part;
                }
                effects.push_back(e);
            }
        }
    } else {
        effects = t.system.effect_cone.generators();
    }
    std::vector<Vector> states;
    for (std::size_t k = 0; k < effects.size(); ++k) {
        states.push_back(random_state(t.system, rng));
    }
    return gptns::make_measure_and_prepare(effects, states, t.system, t.system);
}

}  // namespace fixtures
