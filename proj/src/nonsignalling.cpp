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


#include "gptns/nonsignalling.hpp"

#include <algorithm>
#include <cmath>

#include "gptns/error.hpp"

namespace gptns {

namespace {

std::size_t product_of(std::span<const std::size_t> v, std::size_t lo, std::size_t hi) {
    std::size_t p = 1;
    for (std::size_t k = lo; k < hi; ++k) {
        p *= v[k];
    }
    return p;
}

/// Given q whose rows are already marginal over party i's outputs, the
/// largest entrywise spread across columns that differ only in party i's
/// input.
double input_spread(const RealMatrix &q, std::span<const std::size_t> in_sizes, std::size_t party) {
    const std::size_t before = product_of(in_sizes, 0, party);
    const std::size_t mine = in_sizes[party];
    const std::size_t after = product_of(in_sizes, party + 1, in_sizes.size());
    double worst = 0.0;
    for (std::size_t r = 0; r < q.rows(); ++r) {
        for (std::size_t xb = 0; xb < before; ++xb) {
            for (std::size_t xa = 0; xa < after; ++xa) {
                double lo = INFINITY;
                double hi = -INFINITY;
                for (std::size_t xi = 0; xi < mine; ++xi) {
                    double v = q(r, (xb * mine + xi) * after + xa);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                worst = std::max(worst, hi - lo);
            }
        }
    }
    return worst;
}

NsReport finish(std::vector<double> violations, double tol) {
    NsReport r;
    r.per_party_violation = std::move(violations);
    r.tolerance = tol;
    r.is_ns = r.max_violation() <= tol;
    return r;
}

}  // namespace

double NsReport::max_violation() const {
    double m = 0.0;
    for (double v : per_party_violation) {
        m = std::max(m, v);
    }
    return m;
}

RealMatrix marginal_map(std::size_t party_count, std::size_t party, std::span<const std::size_t> label_sizes) {
    if (party >= party_count) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "party " + std::to_string(party) + " of " + std::to_string(party_count));
    }
    if (label_sizes.size() != party_count) {
        throw Error(ErrorKind::ShapeMismatch, "need one label count per party");
    }
    const std::size_t before = product_of(label_sizes, 0, party);
    const std::size_t mine = label_sizes[party];
    const std::size_t after = product_of(label_sizes, party + 1, party_count);
    RealMatrix d(mine, before * mine * after);
    for (std::size_t b = 0; b < before; ++b) {
        for (std::size_t a = 0; a < mine; ++a) {
            for (std::size_t c = 0; c < after; ++c) {
                d(a, (b * mine + a) * after + c) = 1.0;
            }
        }
    }
    return d;
}

NsReport ns_report_stochastic(const RealMatrix &s, std::span<const PartyIo> io, double tol) {
    std::vector<std::size_t> in_sizes;
    std::vector<std::size_t> out_sizes;
    for (const auto &p : io) {
        in_sizes.push_back(p.inputs);
        out_sizes.push_back(p.outputs);
    }
    const std::size_t n = io.size();
    if (s.rows() != product_of(out_sizes, 0, n) || s.cols() != product_of(in_sizes, 0, n)) {
        throw Error(ErrorKind::ShapeMismatch, "stochastic matrix does not factor over the given parties");
    }
    std::vector<double> violations(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        // Sum out party i's own outputs, then compare across its inputs.
        const std::size_t before = product_of(out_sizes, 0, i);
        const std::size_t mine = out_sizes[i];
        const std::size_t after = product_of(out_sizes, i + 1, n);
        RealMatrix rest(before * after, s.cols());
        for (std::size_t b = 0; b < before; ++b) {
            for (std::size_t a = 0; a < mine; ++a) {
                for (std::size_t c = 0; c < after; ++c) {
                    auto row = s.row_span((b * mine + a) * after + c);
                    for (std::size_t x = 0; x < s.cols(); ++x) {
                        rest(b * after + c, x) += row[x];
                    }
                }
            }
        }
        violations[i] = input_spread(rest, in_sizes, i);
    }
    return finish(std::move(violations), tol);
}

GroupedFrames group_frames(const PartitionedMap &c, std::span<const FiducialFrame> frames_in,
                           std::span<const FiducialFrame> frames_out) {
    if (frames_in.size() != c.in_systems().size() || frames_out.size() != c.out_systems().size()) {
        throw Error(ErrorKind::ShapeMismatch, "need one frame per wire");
    }
    GroupedFrames g;
    for (const auto &p : c.parties()) {
        auto ins = p.inputs;
        auto outs = p.outputs;
        std::sort(ins.begin(), ins.end());
        std::sort(outs.begin(), outs.end());
        for (auto w : ins) {
            g.in.push_back(frames_in[w]);
        }
        for (auto w : outs) {
            g.out.push_back(frames_out[w]);
        }
    }
    return g;
}

std::vector<PartyIo> party_io_sizes(const PartitionedMap &c, std::span<const FiducialFrame> frames_in,
                                    std::span<const FiducialFrame> frames_out) {
    std::vector<PartyIo> io;
    for (const auto &p : c.parties()) {
        PartyIo q{1, 1};
        for (auto w : p.inputs) {
            q.inputs *= frames_in[w].label_count();
        }
        for (auto w : p.outputs) {
            q.outputs *= frames_out[w].label_count();
        }
        io.push_back(q);
    }
    return io;
}

NsReport ns_report_channel(const PartitionedMap &c, std::span<const FiducialFrame> frames_in,
                           std::span<const FiducialFrame> frames_out, double tol) {
    if (!is_discard_preserving(c, std::max(tol, kAlgebraicTol))) {
        throw Error(ErrorKind::NotDiscardPreserving, "non-signalling is only defined for discard-preserving maps");
    }
    auto io = party_io_sizes(c, frames_in, frames_out);
    PartitionedMap g = c.grouped_by_party();
    GroupedFrames frames = group_frames(c, frames_in, frames_out);

    std::vector<std::size_t> in_sizes;
    for (const auto &p : io) {
        in_sizes.push_back(p.inputs);
    }
    RealMatrix prep_in = RealMatrix::identity(1);
    for (const auto &f : frames.in) {
        prep_in = kron(prep_in, f.prep);
    }
    RealMatrix probed = g.matrix() * prep_in;

    const std::size_t n = g.parties().size();
    std::vector<double> violations(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        // Discard party i's output wires and read the rest fiducially.
        RealMatrix left = RealMatrix::identity(1);
        for (std::size_t j = 0; j < n; ++j) {
            for (auto w : g.parties()[j].outputs) {
                if (j == i) {
                    left = kron(left, RealMatrix::row(frames.out[w].system.discard));
                } else {
                    left = kron(left, frames.out[w].meas);
                }
            }
        }
        violations[i] = input_spread(left * probed, in_sizes, i);
    }
    return finish(std::move(violations), tol);
}

}  // namespace gptns
