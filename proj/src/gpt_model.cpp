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

#include "gptns/gpt_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gptns/error.hpp"

namespace gptns {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
    std::size_t p = 1;
    for (auto d : dims) {
        p *= d;
    }
    return p;
}

/// Maps every flat index over `dims` to its flat index after reordering the
/// wires by `order`.
std::vector<std::size_t> index_permutation(std::span<const std::size_t> dims, std::span<const std::size_t> order) {
    const std::size_t n = dims.size();
    std::vector<std::size_t> new_dims(n);
    for (std::size_t k = 0; k < n; ++k) {
        new_dims[k] = dims[order[k]];
    }
    std::vector<std::size_t> new_stride(n, 1);
    for (std::size_t k = n; k-- > 1;) {
        new_stride[k - 1] = new_stride[k] * new_dims[k];
    }
    // Position of old wire w in the new ordering.
    std::vector<std::size_t> where(n);
    for (std::size_t k = 0; k < n; ++k) {
        where[order[k]] = k;
    }
    const std::size_t total = product(dims);
    std::vector<std::size_t> map(total);
    std::vector<std::size_t> digit(n, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (std::size_t w = n; w-- > 0;) {
            digit[w] = rest % dims[w];
            rest /= dims[w];
        }
        std::size_t target = 0;
        for (std::size_t w = 0; w < n; ++w) {
            target += digit[w] * new_stride[where[w]];
        }
        map[flat] = target;
    }
    return map;
}

void check_order(std::span<const std::size_t> order, std::size_t n) {
    if (order.size() != n) {
        throw Error(ErrorKind::ShapeMismatch, "wire order has the wrong length");
    }
    std::vector<bool> seen(n, false);
    for (auto w : order) {
        if (w >= n || seen[w]) {
            throw Error(ErrorKind::IndexOutOfRange, "wire order is not a permutation");
        }
        seen[w] = true;
    }
}

}  // namespace

bool GptSystem::is_normalized(std::span<const double> state, double tol) const {
    return std::abs(dot(discard, state) - 1.0) <= tol;
}

bool GptSystem::is_state(std::span<const double> state, double tol) const {
    return state_cone.contains(state, tol);
}

bool GptSystem::is_effect(std::span<const double> effect, double tol) const {
    return effect_cone.contains(effect, tol);
}

GptSystem compose_systems(std::span<const GptSystem> systems) {
    if (systems.size() == 1) {
        return systems.front();
    }
    GptSystem out;
    out.dim = 1;
    out.discard = {1.0};
    bool all_polyhedral = true;
    for (std::size_t k = 0; k < systems.size(); ++k) {
        const auto &s = systems[k];
        out.name += (k == 0 ? "" : "*") + s.name;
        out.dim *= s.dim;
        out.discard = kron(out.discard, s.discard);
        all_polyhedral = all_polyhedral && s.state_cone.polyhedral() && s.effect_cone.polyhedral();
    }
    if (systems.empty()) {
        out.name = "trivial";
    }
    if (all_polyhedral) {
        std::vector<Vector> states{{1.0}};
        std::vector<Vector> effects{{1.0}};
        for (const auto &s : systems) {
            std::vector<Vector> next_states;
            for (const auto &a : states) {
                for (const auto &b : s.state_cone.generators()) {
                    next_states.push_back(kron(a, b));
                }
            }
            std::vector<Vector> next_effects;
            for (const auto &a : effects) {
                for (const auto &b : s.effect_cone.generators()) {
                    next_effects.push_back(kron(a, b));
                }
            }
            states = std::move(next_states);
            effects = std::move(next_effects);
        }
        out.state_cone = ConeDescription::from_generators(out.dim, std::move(states));
        out.effect_cone = ConeDescription::from_generators(out.dim, std::move(effects));
    } else {
        out.state_cone = ConeDescription::from_oracle(out.dim, nullptr, out.name + " states");
        out.effect_cone = ConeDescription::from_oracle(out.dim, nullptr, out.name + " effects");
    }
    return out;
}

PartitionedMap::PartitionedMap(std::vector<GptSystem> in_systems, std::vector<GptSystem> out_systems,
                               RealMatrix matrix, std::vector<Party> parties)
    : data_(std::make_shared<const Data>(
          Data{std::move(in_systems), std::move(out_systems), std::move(matrix), std::move(parties)})) {
    const auto &m = data_->matrix;
    auto in = in_dims();
    auto out = out_dims();
    if (m.rows() != product(out) || m.cols() != product(in)) {
        throw Error(ErrorKind::ShapeMismatch,
                    "map matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                        " but the wires require " + std::to_string(product(out)) + "x" +
                        std::to_string(product(in)));
    }
    if (!m.all_finite()) {
        throw Error(ErrorKind::MalformedInput, "map matrix has non-finite entries");
    }
    std::vector<int> in_owner(in.size(), 0);
    std::vector<int> out_owner(out.size(), 0);
    for (const auto &p : data_->parties) {
        for (auto w : p.inputs) {
            if (w >= in.size()) {
                throw Error(ErrorKind::IndexOutOfRange, "party refers to a missing input wire");
            }
            ++in_owner[w];
        }
        for (auto w : p.outputs) {
            if (w >= out.size()) {
                throw Error(ErrorKind::IndexOutOfRange, "party refers to a missing output wire");
            }
            ++out_owner[w];
        }
    }
    auto exactly_once = [](int n) { return n == 1; };
    if (!std::all_of(in_owner.begin(), in_owner.end(), exactly_once) ||
        !std::all_of(out_owner.begin(), out_owner.end(), exactly_once)) {
        throw Error(ErrorKind::MalformedInput, "every wire must belong to exactly one party");
    }
}

PartitionedMap PartitionedMap::local(const GptSystem &in, const GptSystem &out, RealMatrix matrix) {
    return PartitionedMap({in}, {out}, std::move(matrix), {Party{{0}, {0}}});
}

PartitionedMap PartitionedMap::identity(const GptSystem &system) {
    return local(system, system, RealMatrix::identity(system.dim));
}

std::vector<std::size_t> PartitionedMap::in_dims() const {
    std::vector<std::size_t> d;
    for (const auto &s : in_systems()) {
        d.push_back(s.dim);
    }
    return d;
}

std::vector<std::size_t> PartitionedMap::out_dims() const {
    std::vector<std::size_t> d;
    for (const auto &s : out_systems()) {
        d.push_back(s.dim);
    }
    return d;
}

bool PartitionedMap::is_grouped_by_party() const {
    std::size_t next_in = 0;
    std::size_t next_out = 0;
    for (const auto &p : parties()) {
        for (auto w : p.inputs) {
            if (w != next_in++) {
                return false;
            }
        }
        for (auto w : p.outputs) {
            if (w != next_out++) {
                return false;
            }
        }
    }
    return true;
}

PartitionedMap PartitionedMap::grouped_by_party() const {
    if (is_grouped_by_party()) {
        return *this;
    }
    std::vector<std::size_t> in_order;
    std::vector<std::size_t> out_order;
    std::vector<Party> parties;
    for (const auto &p : data_->parties) {
        Party q;
        auto ins = p.inputs;
        auto outs = p.outputs;
        std::sort(ins.begin(), ins.end());
        std::sort(outs.begin(), outs.end());
        for (auto w : ins) {
            q.inputs.push_back(in_order.size());
            in_order.push_back(w);
        }
        for (auto w : outs) {
            q.outputs.push_back(out_order.size());
            out_order.push_back(w);
        }
        parties.push_back(std::move(q));
    }
    std::vector<GptSystem> ins;
    std::vector<GptSystem> outs;
    for (auto w : in_order) {
        ins.push_back(in_systems()[w]);
    }
    for (auto w : out_order) {
        outs.push_back(out_systems()[w]);
    }
    auto m = permute_wires(matrix(), out_dims(), out_order, in_dims(), in_order);
    return PartitionedMap(std::move(ins), std::move(outs), std::move(m), std::move(parties));
}

PartitionedMap PartitionedMap::with_matrix(RealMatrix matrix) const {
    return PartitionedMap(in_systems(), out_systems(), std::move(matrix), parties());
}

RealMatrix permute_wires(const RealMatrix &m, std::span<const std::size_t> out_dims,
                         std::span<const std::size_t> out_order, std::span<const std::size_t> in_dims,
                         std::span<const std::size_t> in_order) {
    check_order(out_order, out_dims.size());
    check_order(in_order, in_dims.size());
    if (m.rows() != product(out_dims) || m.cols() != product(in_dims)) {
        throw Error(ErrorKind::ShapeMismatch, "matrix shape does not match wire dimensions");
    }
    auto row_map = index_permutation(out_dims, out_order);
    auto col_map = index_permutation(in_dims, in_order);
    RealMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(row_map[r], col_map[c]) = m(r, c);
        }
    }
    return out;
}

PartitionedMap compose_parallel(std::span<const PartitionedMap> maps) {
    std::vector<GptSystem> ins;
    std::vector<GptSystem> outs;
    std::vector<Party> parties;
    RealMatrix acc = RealMatrix::identity(1);
    for (const auto &m : maps) {
        std::size_t in_off = ins.size();
        std::size_t out_off = outs.size();
        for (const auto &p : m.parties()) {
            Party q;
            for (auto w : p.inputs) {
                q.inputs.push_back(w + in_off);
            }
            for (auto w : p.outputs) {
                q.outputs.push_back(w + out_off);
            }
            parties.push_back(std::move(q));
        }
        ins.insert(ins.end(), m.in_systems().begin(), m.in_systems().end());
        outs.insert(outs.end(), m.out_systems().begin(), m.out_systems().end());
        acc = kron(acc, m.matrix());
    }
    return PartitionedMap(std::move(ins), std::move(outs), std::move(acc), std::move(parties));
}

Vector discard_of(std::span<const GptSystem> systems) {
    Vector d{1.0};
    for (const auto &s : systems) {
        d = kron(d, s.discard);
    }
    return d;
}

bool is_discard_preserving(const PartitionedMap &m, double tol) {
    Vector d_in = discard_of(m.in_systems());
    Vector d_out = discard_of(m.out_systems());
    Vector pulled = m.matrix().transpose() * d_out;
    return max_abs_diff(pulled, d_in) <= tol;
}

bool is_discard_nonincreasing(const PartitionedMap &m, double tol) {
    GptSystem in = compose_systems(m.in_systems());
    GptSystem out = compose_systems(m.out_systems());
    if (!in.effect_cone.polyhedral() || !out.effect_cone.polyhedral()) {
        throw Error(ErrorKind::UnsupportedCone, "discard-non-increasing test needs polyhedral effect cones");
    }
    Vector pulled = m.matrix().transpose() * out.discard;
    Vector remainder(in.dim);
    for (std::size_t k = 0; k < in.dim; ++k) {
        remainder[k] = in.discard[k] - pulled[k];
    }
    return cone_member(in.effect_cone, remainder, tol).member;
}

PartitionedMap make_measure_and_prepare(std::span<const Vector> effects, std::span<const Vector> states,
                                        const GptSystem &system_in, const GptSystem &system_out, double tol) {
    if (effects.size() != states.size() || effects.empty()) {
        throw Error(ErrorKind::ShapeMismatch, "measure-and-prepare needs equally many effects and states");
    }
    Vector total(system_in.dim, 0.0);
    for (const auto &e : effects) {
        if (e.size() != system_in.dim) {
            throw Error(ErrorKind::ShapeMismatch, "effect length does not match the input system");
        }
        if (!system_in.is_effect(e, tol)) {
            throw Error(ErrorKind::NotAnEffect, "vector is outside the effect cone of " + system_in.name);
        }
        for (std::size_t k = 0; k < e.size(); ++k) {
            total[k] += e[k];
        }
    }
    if (max_abs_diff(total, system_in.discard) > kAlgebraicTol) {
        throw Error(ErrorKind::EffectsDontSumToDiscard,
                    "effects miss the discard by " + std::to_string(max_abs_diff(total, system_in.discard)));
    }
    RealMatrix m(system_out.dim, system_in.dim);
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto &s = states[i];
        if (s.size() != system_out.dim) {
            throw Error(ErrorKind::ShapeMismatch, "state length does not match the output system");
        }
        if (!system_out.is_normalized(s, tol) || !system_out.is_state(s, tol)) {
            throw Error(ErrorKind::NotAState, "vector is not a normalised state of " + system_out.name);
        }
        m += kron(RealMatrix::column(s), RealMatrix::row(effects[i]));
    }
    return PartitionedMap::local(system_in, system_out, std::move(m));
}

ConeDescription product_cone(const GptSystem &system_in, const GptSystem &system_out) {
    if (!system_in.effect_cone.polyhedral() || !system_out.state_cone.polyhedral()) {
        throw Error(ErrorKind::UnsupportedCone, "product cone needs polyhedral state and effect cones");
    }
    std::vector<Vector> gens;
    for (const auto &s : system_out.state_cone.generators()) {
        double norm = dot(system_out.discard, s);
        if (norm <= 0.0) {
            continue;
        }
        Vector sn(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
            sn[k] = s[k] / norm;
        }
        for (const auto &e : system_in.effect_cone.generators()) {
            gens.push_back(kron(sn, e));
        }
    }
    return ConeDescription::from_generators(system_in.dim * system_out.dim, std::move(gens));
}

bool in_product_cone(const PartitionedMap &m, double tol) {
    if (m.parties().size() != 1) {
        throw Error(ErrorKind::UnsupportedCone, "product-cone membership is defined for single-party maps only");
    }
    GptSystem in = compose_systems(m.in_systems());
    GptSystem out = compose_systems(m.out_systems());
    return cone_member(product_cone(in, out), m.matrix().entries(), tol).member;
}

bool is_measure_and_prepare(const PartitionedMap &m, double tol) {
    if (m.parties().size() != 1) {
        throw Error(ErrorKind::UnsupportedCone, "measure-and-prepare test is defined for single-party maps only");
    }
    GptSystem in = compose_systems(m.in_systems());
    GptSystem out = compose_systems(m.out_systems());
    auto cone = product_cone(in, out);
    if (!is_discard_preserving(m, std::max(tol, kAlgebraicTol))) {
        return false;
    }
    return cone_member(cone, m.matrix().entries(), tol).member;
}

MapClass classify(const PartitionedMap &m, double tol) {
    MapClass c;
    c.discard_preserving = is_discard_preserving(m, kAlgebraicTol);
    try {
        c.discard_nonincreasing = is_discard_nonincreasing(m, tol);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::UnsupportedCone) {
            throw;
        }
        c.discard_nonincreasing = c.discard_preserving;
    }
    if (m.parties().size() == 1) {
        try {
            c.in_K = in_product_cone(m, tol);
            c.measure_and_prepare = c.discard_preserving && *c.in_K;
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::UnsupportedCone) {
                throw;
            }
        }
    }
    return c;
}

}  // namespace gptns
