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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gptns/duotensor.hpp"
#include "gptns/nonsignalling.hpp"
#include "gptns/rng.hpp"

namespace gptns {

enum class TheoryKind { Classical, Gbit, Qubit };

struct TheorySpec {
    TheoryKind kind = TheoryKind::Classical;
    /// Classical alphabet size; unused otherwise.
    std::size_t d = 0;
    /// "classical:<d>", "gbit" or "qubit".
    std::string id;
    GptSystem system;
    FiducialFrame frame;

    /// How many perfectly distinguishable states the system offers for
    /// carrying classical labels.
    std::size_t classical_capacity() const noexcept;
};

/// Point-mass system on d symbols (d = 1 is the trivial system).
GptSystem classical_system(std::size_t d);

TheorySpec build_classical(std::size_t d);
TheorySpec build_gbit();
TheorySpec build_qubit();

/// Throws MalformedInput for unknown identifiers.
TheorySpec parse_theory_id(std::string_view id);
/// Comma-separated identifiers.
std::vector<TheorySpec> parse_theory_list(std::string_view ids);

/// Like gptns::compose_systems, but composites of qubits get a working
/// positivity test on the full 4^n-dimensional space.
GptSystem composite_system(std::span<const GptSystem> systems);
FiducialFrame composite_frame(std::span<const FiducialFrame> frames);

std::vector<FiducialFrame> frames_of(std::span<const TheorySpec> theories);

/// Positivity of sum_a x_a sigma_a over n qubits, with the Pauli strings in
/// Kronecker order (I, X, Y, Z per qubit). `state_scale` applies the 2^-n
/// that turns state coordinates back into a density operator.
bool pauli_operator_psd(std::span<const double> x, double tol, bool state_scale);

/// Row-major square complex matrix.
struct ComplexMatrix {
    std::size_t n = 0;
    std::vector<std::complex<double>> a;
};

/// Real matrix of rho -> sum_k K_k rho K_k^dagger in Pauli coordinates:
/// T[a][b] = 2^-n Tr(sigma_a Phi(sigma_b)).
RealMatrix qubit_transfer_matrix(std::size_t qubits, std::span<const ComplexMatrix> kraus);

RealMatrix random_local_channel(const TheorySpec &theory, Rng &rng);

/// Product of per-party random local channels, mixed over `terms` draws.
RealMatrix random_product_channel(std::span<const TheorySpec> theories, Rng &rng, std::size_t terms = 3);

/// Binary PR box: P(ab|xy) = 1/2 when a xor b = x y. Row a*2+b, column x*2+y.
RealMatrix pr_box();

/// Random non-signalling box: a convex mixture of product deterministic
/// boxes and, when two parties share an output alphabet size, a generalised
/// PR box on such a pair.
RealMatrix random_ns_box(std::span<const PartyIo> io, Rng &rng);

/// Party 1 outputs party 0's input (mod its alphabet); the others answer
/// deterministically. Needs at least two parties.
RealMatrix copy_box(std::span<const PartyIo> io, Rng &rng);

/// Realises a classical box on GPT wires: every party's input is read out by
/// a measurement with one outcome per label and the box's outputs are
/// re-prepared as distinguishable states. Throws LabelOverflow when a
/// theory cannot carry that many labels.
PartitionedMap embed_classical_box(const RealMatrix &box, std::span<const PartyIo> io,
                                   std::span<const TheorySpec> in_theories, std::span<const TheorySpec> out_theories);

/// (1 - mix) * (random convex mixture of product channels) +
/// mix * (embedded random non-signalling box). Deterministic in `seed`.
PartitionedMap random_ns_channel(std::span<const TheorySpec> theories, std::uint64_t seed, double mix = 0.5);

/// As random_ns_channel but with an embedded copy box, which signals from
/// party 0 to party 1.
PartitionedMap random_signalling_channel(std::span<const TheorySpec> theories, std::uint64_t seed,
                                         double mix = 0.5);

/// Label counts used when embedding boxes into these theories.
std::vector<PartyIo> embedding_io(std::span<const TheorySpec> theories);

}  // namespace gptns
