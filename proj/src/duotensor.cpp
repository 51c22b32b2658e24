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


#include "gptns/duotensor.hpp"

#include <algorithm>
#include <cmath>

#include "gptns/error.hpp"

namespace gptns {

namespace {

constexpr double kMinRcond = 1e-12;

std::vector<GptSystem> systems_of(std::span<const FiducialFrame> frames) {
    std::vector<GptSystem> out;
    for (const auto &f : frames) {
        out.push_back(f.system);
    }
    return out;
}

void check_frames(std::span<const GptSystem> systems, std::span<const FiducialFrame> frames, const char *side) {
    if (systems.size() != frames.size()) {
        throw Error(ErrorKind::ShapeMismatch, std::string("need one frame per ") + side + " wire");
    }
    for (std::size_t k = 0; k < frames.size(); ++k) {
        if (frames[k].system.dim != systems[k].dim) {
            throw Error(ErrorKind::ShapeMismatch, std::string("frame for ") + side + " wire " + std::to_string(k) +
                                                      " has the wrong dimension");
        }
    }
}

RealMatrix kron_over(std::span<const FiducialFrame> frames, RealMatrix (*pick)(const FiducialFrame &)) {
    RealMatrix acc = RealMatrix::identity(1);
    for (const auto &f : frames) {
        acc = kron(acc, pick(f));
    }
    return acc;
}

}  // namespace

QuasiStochasticMatrix make_quasistochastic(RealMatrix m, double tol) {
    auto sums = m.column_sums();
    for (std::size_t c = 0; c < sums.size(); ++c) {
        if (std::abs(sums[c] - 1.0) > tol) {
            throw Error(ErrorKind::NotDiscardPreserving,
                        "column " + std::to_string(c) + " sums to " + std::to_string(sums[c]));
        }
    }
    bool nonneg = std::all_of(m.entries().begin(), m.entries().end(), [](double x) { return x >= -1e-12; });
    return QuasiStochasticMatrix{std::move(m), nonneg};
}

HoppingMetric hopping_metric(const FiducialFrame &frame) {
    if (frame.meas.cols() != frame.prep.rows() || frame.meas.rows() != frame.prep.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "frame preparation and measurement shapes disagree");
    }
    RealMatrix h = frame.meas * frame.prep;
    if (h.rows() != h.cols()) {
        throw Error(ErrorKind::SingularFrame, "frame is not minimal");
    }
    auto inv = invert(h);
    if (inv.singular || inv.rcond < kMinRcond) {
        throw Error(ErrorKind::SingularFrame,
                    "hopping metric of frame '" + frame.name + "' has rcond " + std::to_string(inv.rcond));
    }
    return HoppingMetric{std::move(h), std::move(inv.inverse)};
}

bool FrameReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const FrameCheck &c) { return c.passed; });
}

FrameReport validate_frame(const FiducialFrame &frame, double tol) {
    FrameReport report;
    auto add = [&](std::string name, double slack) {
        report.checks.push_back(FrameCheck{std::move(name), slack <= tol, slack});
    };
    const auto &sys = frame.system;
    const std::size_t dim = sys.dim;
    const std::size_t n = frame.label_count();
    bool shapes_ok = frame.prep.rows() == dim && frame.meas.cols() == dim && frame.meas.rows() == n;
    add("shapes", shapes_ok ? 0.0 : 1.0);
    add("minimal (labels = dim)", std::abs(static_cast<double>(n) - static_cast<double>(dim)));
    if (!shapes_ok) {
        return report;
    }

    double norm_slack = 0.0;
    double state_slack = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        auto s = frame.prep.column_vector(k);
        norm_slack = std::max(norm_slack, std::abs(dot(sys.discard, s) - 1.0));
        if (sys.state_cone.polyhedral()) {
            state_slack = std::max(state_slack, cone_member(sys.state_cone, s, tol).residual);
        } else if (!sys.is_state(s, tol)) {
            state_slack = std::max(state_slack, 1.0);
        }
    }
    add("states normalised", norm_slack);
    add("states in state cone", state_slack);

    double effect_slack = 0.0;
    Vector total(dim, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        auto e = frame.meas.row_span(k);
        for (std::size_t r = 0; r < dim; ++r) {
            total[r] += e[r];
        }
        if (sys.effect_cone.polyhedral()) {
            effect_slack = std::max(effect_slack, cone_member(sys.effect_cone, e, tol).residual);
        } else if (!sys.is_effect(e, tol)) {
            effect_slack = std::max(effect_slack, 1.0);
        }
    }
    add("effects in effect cone", effect_slack);
    add("effects sum to discard", max_abs_diff(total, sys.discard));

    RealMatrix h = frame.meas * frame.prep;
    auto inv = invert(h);
    bool invertible = !inv.singular && inv.rcond >= kMinRcond;
    add("hopping metric invertible", invertible ? 0.0 : 1.0);
    double stoch_slack = 0.0;
    for (double x : h.entries()) {
        stoch_slack = std::max(stoch_slack, -x);
    }
    for (double s : h.column_sums()) {
        stoch_slack = std::max(stoch_slack, std::abs(s - 1.0));
    }
    add("hopping metric column-stochastic", stoch_slack);
    if (invertible) {
        double inv_slack = max_abs_diff(h * inv.inverse, RealMatrix::identity(n));
        for (double s : inv.inverse.column_sums()) {
            inv_slack = std::max(inv_slack, std::abs(s - 1.0));
        }
        add("inverse metric normalised", inv_slack);
    }
    return report;
}

FiducialFrame kron_frames(std::span<const FiducialFrame> frames) {
    auto systems = systems_of(frames);
    return kron_frames(frames, compose_systems(systems));
}

FiducialFrame kron_frames(std::span<const FiducialFrame> frames, GptSystem system) {
    if (frames.size() == 1) {
        FiducialFrame f = frames.front();
        f.system = std::move(system);
        return f;
    }
    FiducialFrame out;
    out.prep = kron_over(frames, [](const FiducialFrame &f) { return f.prep; });
    out.meas = kron_over(frames, [](const FiducialFrame &f) { return f.meas; });
    for (std::size_t k = 0; k < frames.size(); ++k) {
        out.name += (k == 0 ? "" : "*") + frames[k].name;
    }
    if (system.dim != out.prep.rows()) {
        throw Error(ErrorKind::ShapeMismatch, "composite system dimension does not match the frames");
    }
    out.system = std::move(system);
    return out;
}

std::string frame_id(std::span<const FiducialFrame> frames_in, std::span<const FiducialFrame> frames_out) {
    std::string id = "in[";
    for (std::size_t k = 0; k < frames_in.size(); ++k) {
        id += (k == 0 ? "" : ",") + frames_in[k].name;
    }
    id += "];out[";
    for (std::size_t k = 0; k < frames_out.size(); ++k) {
        id += (k == 0 ? "" : ",") + frames_out[k].name;
    }
    return id + "]";
}

QuasiStochasticMatrix to_stochastic(const PartitionedMap &c, std::span<const FiducialFrame> frames_in,
                                    std::span<const FiducialFrame> frames_out, double tol) {
    check_frames(c.in_systems(), frames_in, "input");
    check_frames(c.out_systems(), frames_out, "output");
    RealMatrix meas = kron_over(frames_out, [](const FiducialFrame &f) { return f.meas; });
    RealMatrix prep = kron_over(frames_in, [](const FiducialFrame &f) { return f.prep; });
    return make_quasistochastic(meas * c.matrix() * prep, tol);
}

RealMatrix to_gpt_matrix(const RealMatrix &q, std::span<const FiducialFrame> frames_in,
                         std::span<const FiducialFrame> frames_out) {
    // Fold each inverse metric into its neighbouring frame matrix first.
    RealMatrix left = RealMatrix::identity(1);
    for (const auto &f : frames_out) {
        left = kron(left, f.prep * hopping_metric(f).h_inv);
    }
    RealMatrix right = RealMatrix::identity(1);
    for (const auto &f : frames_in) {
        right = kron(right, hopping_metric(f).h_inv * f.meas);
    }
    if (q.rows() != left.cols() || q.cols() != right.rows()) {
        throw Error(ErrorKind::ShapeMismatch, "stochastic matrix shape does not match the frames' label sets");
    }
    return left * q * right;
}

PartitionedMap to_gpt(const QuasiStochasticMatrix &q, std::span<const FiducialFrame> frames_in,
                      std::span<const FiducialFrame> frames_out, std::vector<Party> parties) {
    return PartitionedMap(systems_of(frames_in), systems_of(frames_out), to_gpt_matrix(q.matrix, frames_in, frames_out),
                          std::move(parties));
}

PartitionedMap to_gpt(const QuasiStochasticMatrix &q, std::span<const FiducialFrame> frames_in,
                      std::span<const FiducialFrame> frames_out) {
    return to_gpt(q, frames_in, frames_out, default_parties(frames_in.size(), frames_out.size()));
}

std::vector<Party> default_parties(std::size_t in_wires, std::size_t out_wires) {
    std::vector<Party> parties;
    if (in_wires == out_wires) {
        for (std::size_t k = 0; k < in_wires; ++k) {
            parties.push_back(Party{{k}, {k}});
        }
        return parties;
    }
    Party p;
    for (std::size_t k = 0; k < in_wires; ++k) {
        p.inputs.push_back(k);
    }
    for (std::size_t k = 0; k < out_wires; ++k) {
        p.outputs.push_back(k);
    }
    parties.push_back(std::move(p));
    return parties;
}

}  // namespace gptns
