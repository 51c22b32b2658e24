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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gptns/cone.hpp"
#include "gptns/matrix.hpp"

namespace gptns {

inline constexpr double kAlgebraicTol = 1e-9;
inline constexpr double kLpTol = 1e-7;

/// A system of a tomographically local GPT: the real vector space V_S (by its
/// dimension, in a fixed basis), the state and effect cones, and the discard
/// effect, which is 1 on every normalised state.
struct GptSystem {
    std::string name;
    std::size_t dim = 0;
    ConeDescription state_cone;
    ConeDescription effect_cone;
    Vector discard;

    bool is_normalized(std::span<const double> state, double tol = kAlgebraicTol) const;
    bool is_state(std::span<const double> state, double tol = kAlgebraicTol) const;
    bool is_effect(std::span<const double> effect, double tol = kAlgebraicTol) const;
};

/// Product system. Polyhedral factors compose to the cone generated by
/// products of generators; other combinations carry no membership test
/// (theories::compose_systems knows how to compose qubits).
GptSystem compose_systems(std::span<const GptSystem> systems);

/// Wires owned by one party, as indices into the map's input/output lists.
struct Party {
    std::vector<std::size_t> inputs;
    std::vector<std::size_t> outputs;

    friend bool operator==(const Party &, const Party &) = default;
};

/// A real linear map between composite systems, with each input and output
/// wire assigned to exactly one party. Rows index the output wires and columns
/// the input wires, both in Kronecker order (first wire most significant).
class PartitionedMap {
   public:
    PartitionedMap(std::vector<GptSystem> in_systems, std::vector<GptSystem> out_systems, RealMatrix matrix,
                   std::vector<Party> parties);

    /// One party owning one input and one output wire.
    static PartitionedMap local(const GptSystem &in, const GptSystem &out, RealMatrix matrix);
    static PartitionedMap identity(const GptSystem &system);

    const std::vector<GptSystem> &in_systems() const noexcept {
        return data_->in_systems;
    }
    const std::vector<GptSystem> &out_systems() const noexcept {
        return data_->out_systems;
    }
    const RealMatrix &matrix() const noexcept {
        return data_->matrix;
    }
    const std::vector<Party> &parties() const noexcept {
        return data_->parties;
    }
    std::vector<std::size_t> in_dims() const;
    std::vector<std::size_t> out_dims() const;

    /// Same map with wires reordered so each party's wires are contiguous and
    /// parties appear in order.
    PartitionedMap grouped_by_party() const;
    bool is_grouped_by_party() const;

    PartitionedMap with_matrix(RealMatrix matrix) const;

   private:
    // Immutable once built, so copies share one allocation.
    struct Data {
        std::vector<GptSystem> in_systems;
        std::vector<GptSystem> out_systems;
        RealMatrix matrix;
        std::vector<Party> parties;
    };
    std::shared_ptr<const Data> data_;
};

struct MapClass {
    bool discard_preserving = false;
    bool discard_nonincreasing = false;
    std::optional<bool> in_K;
    std::optional<bool> measure_and_prepare;
};

/// Parallel composition: Kronecker product with concatenated wires and
/// parties (wire indices offset).
PartitionedMap compose_parallel(std::span<const PartitionedMap> maps);

Vector discard_of(std::span<const GptSystem> systems);

bool is_discard_preserving(const PartitionedMap &m, double tol = kAlgebraicTol);
bool is_discard_nonincreasing(const PartitionedMap &m, double tol = kAlgebraicTol);

/// sum_i s_i e_i^T after validating that the e_i are effects summing to the
/// discard and the s_i are normalised states.
PartitionedMap make_measure_and_prepare(std::span<const Vector> effects, std::span<const Vector> states,
                                        const GptSystem &system_in, const GptSystem &system_out,
                                        double tol = kAlgebraicTol);

/// Conic hull of the rank-one maps s e^T, s an extremal normalised state of
/// the output and e an extremal effect ray of the input. Maps are vectorised
/// row-major, so s e^T becomes kron(s, e).
ConeDescription product_cone(const GptSystem &system_in, const GptSystem &system_out);

bool in_product_cone(const PartitionedMap &m, double tol = kLpTol);
bool is_measure_and_prepare(const PartitionedMap &m, double tol = kLpTol);

MapClass classify(const PartitionedMap &m, double tol = kLpTol);

/// Relabel tensor wires: output wire k of the result is wire `order[k]` of
/// the input, for both the row and column sides.
RealMatrix permute_wires(const RealMatrix &m, std::span<const std::size_t> out_dims,
                         std::span<const std::size_t> out_order, std::span<const std::size_t> in_dims,
                         std::span<const std::size_t> in_order);

}  // namespace gptns
