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
#include <span>
#include <string>
#include <vector>

#include "gptns/gpt_model.hpp"
#include "gptns/matrix.hpp"

namespace gptns {

/// A minimal informationally complete preparation/measurement pair. Columns
/// of `prep` are the fiducial states, rows of `meas` the fiducial effects.
struct FiducialFrame {
    std::string name;
    GptSystem system;
    RealMatrix prep;
    RealMatrix meas;

    std::size_t label_count() const noexcept {
        return prep.cols();
    }
};

/// h = meas * prep and its inverse.
struct HoppingMetric {
    RealMatrix h;
    RealMatrix h_inv;
};

/// Columns sum to 1; `stochastic` records whether the entries are also
/// nonnegative.
struct QuasiStochasticMatrix {
    RealMatrix matrix;
    bool stochastic = false;
};

/// Validates the column sums (NotDiscardPreserving otherwise) and sets the
/// stochastic flag.
QuasiStochasticMatrix make_quasistochastic(RealMatrix m, double tol = kAlgebraicTol);

/// Throws SingularFrame when the reciprocal condition number of h is below
/// 1e-12.
HoppingMetric hopping_metric(const FiducialFrame &frame);

struct FrameCheck {
    std::string name;
    bool passed = false;
    /// Size of the violation; zero when the check holds exactly.
    double slack = 0.0;
};

struct FrameReport {
    std::vector<FrameCheck> checks;

    bool all_passed() const;
};

FrameReport validate_frame(const FiducialFrame &frame, double tol = kAlgebraicTol);

/// Tensor product of frames over `system` (which must be the composite of the
/// frames' systems; gptns::compose_systems is used when omitted).
FiducialFrame kron_frames(std::span<const FiducialFrame> frames);
FiducialFrame kron_frames(std::span<const FiducialFrame> frames, GptSystem system);

/// Provenance string naming the frames, in wire order.
std::string frame_id(std::span<const FiducialFrame> frames_in, std::span<const FiducialFrame> frames_out);

/// (x) meas_out * C * (x) prep_in. Frames are given per wire.
QuasiStochasticMatrix to_stochastic(const PartitionedMap &c, std::span<const FiducialFrame> frames_in,
                                    std::span<const FiducialFrame> frames_out, double tol = kAlgebraicTol);

/// (x) prep_out * (x) h_out^-1 * q * (x) h_in^-1 * (x) meas_in.
RealMatrix to_gpt_matrix(const RealMatrix &q, std::span<const FiducialFrame> frames_in,
                         std::span<const FiducialFrame> frames_out);
PartitionedMap to_gpt(const QuasiStochasticMatrix &q, std::span<const FiducialFrame> frames_in,
                      std::span<const FiducialFrame> frames_out, std::vector<Party> parties);
/// Party k owns input wire k and output wire k (one party when the wire
/// counts differ).
PartitionedMap to_gpt(const QuasiStochasticMatrix &q, std::span<const FiducialFrame> frames_in,
                      std::span<const FiducialFrame> frames_out);

std::vector<Party> default_parties(std::size_t in_wires, std::size_t out_wires);

}  // namespace gptns
