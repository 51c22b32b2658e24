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
#include <span>
#include <string>
#include <vector>

#include "gptns/duotensor.hpp"
#include "gptns/lp.hpp"
#include "gptns/nonsignalling.hpp"

namespace gptns {

inline constexpr std::size_t kDefaultTermCap = 1'000'000;
inline constexpr std::size_t kDefaultLpNonzeroCap = 10'000'000;
/// Weights smaller than this in magnitude are dropped from mixtures.
inline constexpr double kDropThreshold = 1e-12;

enum class Objective { Feasible, MinNegativity };
enum class DecomposeMode { DpFactors, ChannelFactors };
/// Pipeline goes through the stochastic coordinates, lifts each party's
/// deterministic factors and (channel mode) expands them into
/// measure-and-prepare channels. Direct solves one system over the product
/// basis: lifted deterministic maps in dp mode, products of fiducial
/// measure-and-prepare channels in channel mode. With h != I the two can
/// disagree on the least sum |q| in channel mode, since the pipeline
/// minimises stage by stage.
enum class Algorithm { Pipeline, Direct };

/// f(x) for x = 0, 1, ..., in-1.
using FunctionTable = std::vector<std::size_t>;

/// Tables are numbered lexicographically with f(0) most significant, so
/// index = sum_x f(x) * out^(in-1-x).
FunctionTable function_table(std::size_t index, std::size_t in_size, std::size_t out_size);
std::size_t function_index(const FunctionTable &f, std::size_t out_size);

/// 0/1 matrix with D[f(x)][x] = 1.
RealMatrix deterministic_matrix(const FunctionTable &f, std::size_t out_size);

struct DeterministicStrategy {
    std::vector<FunctionTable> tables;

    friend bool operator==(const DeterministicStrategy &, const DeterministicStrategy &) = default;
};

/// All out^in single-party strategies, lexicographically. Throws CapExceeded
/// above `cap`.
std::vector<DeterministicStrategy> enumerate_local_deterministic(std::size_t in_size, std::size_t out_size,
                                                                 std::size_t cap = kDefaultTermCap);

struct MixtureTerm {
    double weight = 0.0;
    /// One factor per party, in party order.
    std::vector<PartitionedMap> factors;
    /// Per-party function index labelling each factor: the deterministic
    /// strategy for classical and dp factors, the measure-and-prepare
    /// function for channel factors.
    std::vector<std::size_t> functions;
};

struct QuasiMixture {
    std::vector<MixtureTerm> terms;
    std::string frame_id;
    double negativity = 0.0;
    /// max(||reconstruct - target||_inf, |sum w - 1|)
    double residual = 0.0;
    /// Sum of |w| over terms dropped for being below kDropThreshold.
    double dropped_mass = 0.0;
    double l1 = 0.0;

    Vector weights() const;
};

/// Classical result: writes a non-signalling (quasi)stochastic map as an
/// affine combination of products of deterministic maps. The feasible
/// objective uses a spanning subset of the products, which makes the weights
/// unique; min_negativity searches all of them for the least sum |q|.
QuasiMixture decompose_ns_stochastic(const RealMatrix &s, std::span<const PartyIo> io,
                                     Objective objective = Objective::Feasible, double tol = kLpTol,
                                     std::size_t cap = kDefaultTermCap);

struct LocalDpFactor {
    std::size_t party = 0;
    PartitionedMap map;
    QuasiStochasticMatrix stochastic_coords;
};

/// prep_out * h_out^-1 * s * h_in^-1 * meas_in.
LocalDpFactor lift_local_dp(const RealMatrix &s, const FiducialFrame &frame_in, const FiducialFrame &frame_out,
                            std::size_t party = 0, double tol = kAlgebraicTol);

/// The fiducial measure-and-prepare channel sum_l s_{f(l)} e_l^T.
PartitionedMap measure_prepare_channel(const FunctionTable &f, const FiducialFrame &frame_in,
                                       const FiducialFrame &frame_out);

struct WeightedChannel {
    double weight = 0.0;
    PartitionedMap channel;
    std::size_t function = 0;
};

struct DpDecomposition {
    std::vector<WeightedChannel> terms;
    double residual = 0.0;
    double dropped_mass = 0.0;
};

/// Affine combination of fiducial measure-and-prepare channels equal to a
/// discard-preserving single-party map.
DpDecomposition decompose_dp_map(const PartitionedMap &x, const FiducialFrame &frame_in,
                                 const FiducialFrame &frame_out, double tol = kAlgebraicTol,
                                 Objective objective = Objective::Feasible, std::size_t cap = kDefaultTermCap);
DpDecomposition decompose_dp_map(const LocalDpFactor &x, const FiducialFrame &frame_in,
                                 const FiducialFrame &frame_out, double tol = kAlgebraicTol,
                                 Objective objective = Objective::Feasible, std::size_t cap = kDefaultTermCap);

struct DecomposeOptions {
    DecomposeMode mode = DecomposeMode::ChannelFactors;
    Algorithm algorithm = Algorithm::Pipeline;
    Objective objective = Objective::Feasible;
    double tol = kLpTol;
    std::size_t term_cap = kDefaultTermCap;
    /// Bound on constraint-matrix nonzeros for the direct min-negativity LP.
    std::size_t lp_nonzero_cap = kDefaultLpNonzeroCap;
};

/// Quasimixture of product maps equal to a non-signalling channel. Every
/// party must own exactly one input and one output wire; frames are per
/// wire. Factors follow party order, so the mixture reconstructs
/// c.grouped_by_party().
QuasiMixture decompose_ns_channel(const PartitionedMap &c, std::span<const FiducialFrame> frames_in,
                                  std::span<const FiducialFrame> frames_out, const DecomposeOptions &options = {});

/// sum_b w_b (x)_i factor_{b,i}. Throws EmptyMixture.
PartitionedMap reconstruct(const QuasiMixture &m);
RealMatrix reconstruct_matrix(const QuasiMixture &m);

/// sum max(-w, 0). Throws WeightsNotAffine unless the weights sum to 1.
double negativity(std::span<const double> weights);

}  // namespace gptns
