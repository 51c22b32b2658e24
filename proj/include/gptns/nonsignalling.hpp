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
#include <vector>

#include "gptns/duotensor.hpp"

namespace gptns {

/// Label counts of one party's (combined) input and output.
struct PartyIo {
    std::size_t inputs = 0;
    std::size_t outputs = 0;

    friend bool operator==(const PartyIo &, const PartyIo &) = default;
};

struct NsReport {
    /// Largest change in the other parties' output distribution caused by
    /// changing this party's input alone. Indexed by party, from 0.
    std::vector<double> per_party_violation;
    bool is_ns = true;
    double tolerance = 0.0;

    double max_violation() const;
};

/// Sums a joint distribution over every party's labels except `party`'s.
/// Result is label_sizes[party] x prod(label_sizes).
RealMatrix marginal_map(std::size_t party_count, std::size_t party, std::span<const std::size_t> label_sizes);

/// Rows of `s` index the joint outputs and columns the joint inputs, each in
/// Kronecker order with party 0 most significant.
NsReport ns_report_stochastic(const RealMatrix &s, std::span<const PartyIo> io, double tol = kLpTol);

/// Checks the channel directly: party i's outputs are discarded with the GPT
/// discard effect and the remaining outputs are probed with the fiducial
/// measurements, for every fiducial input of every party. Frames are per wire
/// in the map's own wire order.
NsReport ns_report_channel(const PartitionedMap &c, std::span<const FiducialFrame> frames_in,
                           std::span<const FiducialFrame> frames_out, double tol = kLpTol);

/// Per-party label counts of `c` once grouped by party.
std::vector<PartyIo> party_io_sizes(const PartitionedMap &c, std::span<const FiducialFrame> frames_in,
                                    std::span<const FiducialFrame> frames_out);

/// Frames reordered to match c.grouped_by_party().
struct GroupedFrames {
    std::vector<FiducialFrame> in;
    std::vector<FiducialFrame> out;
};
GroupedFrames group_frames(const PartitionedMap &c, std::span<const FiducialFrame> frames_in,
                           std::span<const FiducialFrame> frames_out);

}  // namespace gptns
