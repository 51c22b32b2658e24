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


#include "gptns/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "gptns/affine.hpp"
#include "gptns/error.hpp"
#include "gptns/theories.hpp"

namespace gptns {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
    std::size_t p = 1;
    for (std::size_t k = 0; k < exp; ++k) {
        if (p > cap / base) {
            throw Error(ErrorKind::CapExceeded, std::to_string(base) + "^" + std::to_string(exp) +
                                                    " strategies exceed the cap of " + std::to_string(cap));
        }
        p *= base;
    }
    return p;
}

std::size_t strategy_count(std::span<const PartyIo> io, std::size_t cap) {
    std::size_t total = 1;
    for (const auto &p : io) {
        std::size_t n = checked_power(p.outputs, p.inputs, cap);
        if (total > cap / n) {
            throw Error(ErrorKind::CapExceeded, "product strategy count exceeds the cap of " + std::to_string(cap));
        }
        total *= n;
    }
    return total;
}

/// Joint-index arithmetic for a Kronecker-ordered multi-party label space.
struct Strides {
    std::vector<std::size_t> in;
    std::vector<std::size_t> out;
    std::size_t rows = 1;
    std::size_t cols = 1;

    explicit Strides(std::span<const PartyIo> io) : in(io.size()), out(io.size()) {
        for (std::size_t i = io.size(); i-- > 0;) {
            in[i] = cols;
            out[i] = rows;
            cols *= io[i].inputs;
            rows *= io[i].outputs;
        }
    }
};

/// For each party, the deterministic function picking the most likely output
/// of its marginal (other inputs fixed to 0). Anchoring the spanning set
/// there means a product deterministic target is hit by a single term.
std::vector<FunctionTable> marginal_modes(const RealMatrix &y, std::span<const PartyIo> io) {
    Strides st(io);
    std::vector<FunctionTable> anchors;
    for (std::size_t i = 0; i < io.size(); ++i) {
        FunctionTable g(io[i].inputs, 0);
        for (std::size_t x = 0; x < io[i].inputs; ++x) {
            Vector marginal(io[i].outputs, 0.0);
            std::size_t col = x * st.in[i];
            for (std::size_t r = 0; r < st.rows; ++r) {
                marginal[(r / st.out[i]) % io[i].outputs] += y(r, col);
            }
            g[x] = static_cast<std::size_t>(std::max_element(marginal.begin(), marginal.end()) - marginal.begin());
        }
        anchors.push_back(std::move(g));
    }
    return anchors;
}

/// Per-party candidate functions: every table for min_negativity, otherwise
/// the anchor and its single-entry deviations, which affinely span the
/// column-stochastic matrices with in*(out-1)+1 elements.
std::vector<std::vector<std::size_t>> candidate_functions(const RealMatrix &y, std::span<const PartyIo> io,
                                                          Objective objective) {
    std::vector<std::vector<std::size_t>> lists;
    if (objective == Objective::MinNegativity) {
        for (const auto &p : io) {
            std::size_t n = checked_power(p.outputs, p.inputs, SIZE_MAX);
            std::vector<std::size_t> all(n);
            for (std::size_t k = 0; k < n; ++k) {
                all[k] = k;
            }
            lists.push_back(std::move(all));
        }
        return lists;
    }
    auto anchors = marginal_modes(y, io);
    for (std::size_t i = 0; i < io.size(); ++i) {
        const auto &g = anchors[i];
        std::vector<std::size_t> list{function_index(g, io[i].outputs)};
        for (std::size_t x = 0; x < io[i].inputs; ++x) {
            for (std::size_t k = 0; k < io[i].outputs; ++k) {
                if (k != g[x]) {
                    FunctionTable dev = g;
                    dev[x] = k;
                    list.push_back(function_index(dev, io[i].outputs));
                }
            }
        }
        lists.push_back(std::move(list));
    }
    return lists;
}

/// Cartesian product of the candidate lists, first party most significant.
std::vector<std::vector<std::size_t>> product_tuples(const std::vector<std::vector<std::size_t>> &lists,
                                                     std::size_t cap) {
    std::size_t total = 1;
    for (const auto &l : lists) {
        if (l.empty() || total > cap / l.size()) {
            throw Error(ErrorKind::CapExceeded, "product basis exceeds the cap of " + std::to_string(cap));
        }
        total *= l.size();
    }
    std::vector<std::vector<std::size_t>> tuples;
    tuples.reserve(total);
    std::vector<std::size_t> pos(lists.size(), 0);
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t rest = t;
        std::vector<std::size_t> tuple(lists.size());
        for (std::size_t i = lists.size(); i-- > 0;) {
            tuple[i] = lists[i][rest % lists[i].size()];
            rest /= lists[i].size();
        }
        tuples.push_back(std::move(tuple));
    }
    return tuples;
}

/// vec(kron_i D_{f_i}) as a sparse column: one entry per joint input.
void add_strategy_column(SparseColumns &cols, std::span<const PartyIo> io, const Strides &st,
                         const std::vector<FunctionTable> &tables, std::vector<std::uint32_t> &idx, Vector &val) {
    idx.clear();
    val.assign(st.cols, 1.0);
    for (std::size_t x = 0; x < st.cols; ++x) {
        std::size_t a = 0;
        for (std::size_t i = 0; i < io.size(); ++i) {
            std::size_t xi = (x / st.in[i]) % io[i].inputs;
            a += tables[i][xi] * st.out[i];
        }
        idx.push_back(static_cast<std::uint32_t>(a * st.cols + x));
    }
    std::sort(idx.begin(), idx.end());
    cols.add_sparse(idx, val);
}

AffineSolution solve_columns(const SparseColumns &cols, std::span<const double> target, Objective objective,
                             double tol) {
    if (objective == Objective::MinNegativity) {
        return min_l1_affine(cols, target, tol);
    }
    return solve_affine(cols, target, tol);
}

struct WeightedTuples {
    std::vector<std::vector<std::size_t>> functions;
    Vector weights;
    double dropped_mass = 0.0;
    bool feasible = false;
    double residual = 0.0;
};

WeightedTuples keep_significant(const std::vector<std::vector<std::size_t>> &tuples, const AffineSolution &sol) {
    WeightedTuples out;
    out.feasible = sol.feasible;
    out.residual = sol.residual_norm;
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        double w = sol.weights[k];
        if (std::abs(w) < kDropThreshold) {
            out.dropped_mass += std::abs(w);
            continue;
        }
        out.functions.push_back(tuples[k]);
        out.weights.push_back(w);
    }
    return out;
}

/// Writes y = sum_t w_t kron_i D_{f_{t,i}}.
WeightedTuples solve_strategies(const RealMatrix &y, std::span<const PartyIo> io, Objective objective, double tol,
                                std::size_t cap) {
    strategy_count(io, cap);
    auto tuples = product_tuples(candidate_functions(y, io, objective), cap);
    Strides st(io);
    if (st.rows * st.cols >= (std::size_t{1} << 32)) {
        throw Error(ErrorKind::CapExceeded, "label space too large for the strategy basis");
    }
    SparseColumns cols(st.rows * st.cols);
    cols.reserve(tuples.size(), tuples.size() * st.cols);
    std::vector<std::uint32_t> idx;
    Vector val;
    std::vector<FunctionTable> tables(io.size());
    for (const auto &t : tuples) {
        for (std::size_t i = 0; i < io.size(); ++i) {
            tables[i] = function_table(t[i], io[i].inputs, io[i].outputs);
        }
        add_strategy_column(cols, io, st, tables, idx, val);
    }
    return keep_significant(tuples, solve_columns(cols, y.entries(), objective, tol));
}

void require_agreement(bool ns, bool feasible, double violation, double residual) {
    if (ns && feasible) {
        return;
    }
    if (!ns && !feasible) {
        throw Error(ErrorKind::NotNonSignalling, "largest marginal violation " + std::to_string(violation) +
                                                     ", affine residual " + std::to_string(residual));
    }
    throw Error(ErrorKind::InternalError,
                std::string("non-signalling check (") + (ns ? "passed" : "failed") +
                    ") disagrees with the product decomposition (" + (feasible ? "feasible" : "infeasible") +
                    "): violation " + std::to_string(violation) + ", residual " + std::to_string(residual));
}

RealMatrix inverse_of(const RealMatrix &m, const std::string &what) {
    auto inv = invert(m);
    if (inv.singular || inv.rcond < 1e-12) {
        throw Error(ErrorKind::SingularFrame, what + " is not invertible");
    }
    return std::move(inv.inverse);
}

void check_dp(const PartitionedMap &x, double tol) {
    if (!is_discard_preserving(x, std::max(tol, kAlgebraicTol))) {
        throw Error(ErrorKind::NotDiscardPreserving, "map does not preserve the discard effect");
    }
}

/// Weights of x over the fiducial measure-and-prepare channels.
WeightedTuples dp_weights(const RealMatrix &x, const FiducialFrame &frame_in, const FiducialFrame &frame_out,
                          double tol, Objective objective, std::size_t cap) {
    // x = sum r_f prep_out D_f meas_in  <=>  prep_out^-1 x meas_in^-1 = sum r_f D_f.
    RealMatrix y = inverse_of(frame_out.prep, "output preparation") * x * inverse_of(frame_in.meas, "input measurement");
    const PartyIo io[1] = {PartyIo{frame_in.label_count(), frame_out.label_count()}};
    return solve_strategies(y, io, objective, tol, cap);
}

double mixture_residual(const RealMatrix &target, const RealMatrix &approx, std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    return std::max(max_abs_diff(target, approx), std::abs(total - 1.0));
}

void finish(QuasiMixture &m, const RealMatrix &target) {
    auto w = m.weights();
    m.l1 = 0.0;
    m.negativity = 0.0;
    for (double x : w) {
        m.l1 += std::abs(x);
        m.negativity += std::max(-x, 0.0);
    }
    m.residual = mixture_residual(target, reconstruct_matrix(m), w);
}

/// Memoises per-party factor maps keyed by (party, function index).
class FactorCache {
   public:
    template <typename Make>
    const PartitionedMap &get(std::size_t party, std::size_t f, Make make) {
        auto key = std::make_pair(party, f);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            it = cache_.emplace(key, make()).first;
        }
        return it->second;
    }

   private:
    std::map<std::pair<std::size_t, std::size_t>, PartitionedMap> cache_;
};

}  // namespace

FunctionTable function_table(std::size_t index, std::size_t in_size, std::size_t out_size) {
    FunctionTable f(in_size);
    for (std::size_t x = in_size; x-- > 0;) {
        f[x] = index % out_size;
        index /= out_size;
    }
    return f;
}

std::size_t function_index(const FunctionTable &f, std::size_t out_size) {
    std::size_t index = 0;
    for (auto v : f) {
        index = index * out_size + v;
    }
    return index;
}

RealMatrix deterministic_matrix(const FunctionTable &f, std::size_t out_size) {
    RealMatrix d(out_size, f.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (f[x] >= out_size) {
            throw Error(ErrorKind::IndexOutOfRange, "function value outside the output alphabet");
        }
        d(f[x], x) = 1.0;
    }
    return d;
}

std::vector<DeterministicStrategy> enumerate_local_deterministic(std::size_t in_size, std::size_t out_size,
                                                                 std::size_t cap) {
    if (out_size == 0) {
        throw Error(ErrorKind::ShapeMismatch, "empty output alphabet");
    }
    std::size_t n = checked_power(out_size, in_size, cap);
    std::vector<DeterministicStrategy> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(DeterministicStrategy{{function_table(k, in_size, out_size)}});
    }
    return out;
}

Vector QuasiMixture::weights() const {
    Vector w;
    w.reserve(terms.size());
    for (const auto &t : terms) {
        w.push_back(t.weight);
    }
    return w;
}

QuasiMixture decompose_ns_stochastic(const RealMatrix &s, std::span<const PartyIo> io, Objective objective,
                                     double tol, std::size_t cap) {
    auto report = ns_report_stochastic(s, io, tol);
    auto sol = solve_strategies(s, io, objective, tol, cap);
    require_agreement(report.is_ns, sol.feasible, report.max_violation(), sol.residual);

    QuasiMixture m;
    m.frame_id = "classical";
    m.dropped_mass = sol.dropped_mass;
    std::vector<GptSystem> ins;
    std::vector<GptSystem> outs;
    for (const auto &p : io) {
        ins.push_back(classical_system(p.inputs));
        outs.push_back(classical_system(p.outputs));
    }
    FactorCache cache;
    for (std::size_t t = 0; t < sol.weights.size(); ++t) {
        MixtureTerm term{sol.weights[t], {}, sol.functions[t]};
        for (std::size_t i = 0; i < io.size(); ++i) {
            std::size_t f = sol.functions[t][i];
            term.factors.push_back(cache.get(i, f, [&] {
                return PartitionedMap::local(
                    ins[i], outs[i], deterministic_matrix(function_table(f, io[i].inputs, io[i].outputs), io[i].outputs));
            }));
        }
        m.terms.push_back(std::move(term));
    }
    finish(m, s);
    return m;
}

LocalDpFactor lift_local_dp(const RealMatrix &s, const FiducialFrame &frame_in, const FiducialFrame &frame_out,
                            std::size_t party, double tol) {
    auto coords = make_quasistochastic(s, tol);
    const FiducialFrame fin[1] = {frame_in};
    const FiducialFrame fout[1] = {frame_out};
    RealMatrix x = to_gpt_matrix(coords.matrix, fin, fout);
    PartitionedMap map = PartitionedMap::local(frame_in.system, frame_out.system, std::move(x));
    if (!is_discard_preserving(map, std::max(tol, kAlgebraicTol))) {
        throw Error(ErrorKind::InternalError, "lifted map lost discard preservation");
    }
    return LocalDpFactor{party, std::move(map), std::move(coords)};
}

PartitionedMap measure_prepare_channel(const FunctionTable &f, const FiducialFrame &frame_in,
                                       const FiducialFrame &frame_out) {
    if (f.size() != frame_in.label_count()) {
        throw Error(ErrorKind::ShapeMismatch, "function table does not cover the input labels");
    }
    std::vector<Vector> effects;
    std::vector<Vector> states;
    for (std::size_t l = 0; l < f.size(); ++l) {
        if (f[l] >= frame_out.label_count()) {
            throw Error(ErrorKind::IndexOutOfRange, "function value outside the output labels");
        }
        auto e = frame_in.meas.row_span(l);
        effects.emplace_back(e.begin(), e.end());
        states.push_back(frame_out.prep.column_vector(f[l]));
    }
    return make_measure_and_prepare(effects, states, frame_in.system, frame_out.system);
}

DpDecomposition decompose_dp_map(const PartitionedMap &x, const FiducialFrame &frame_in,
                                 const FiducialFrame &frame_out, double tol, Objective objective, std::size_t cap) {
    if (x.in_systems().size() != 1 || x.out_systems().size() != 1) {
        throw Error(ErrorKind::ShapeMismatch, "decompose_dp_map takes a single-wire map");
    }
    check_dp(x, tol);
    auto sol = dp_weights(x.matrix(), frame_in, frame_out, tol, objective, cap);
    if (!sol.feasible) {
        throw Error(ErrorKind::InternalError,
                    "measure-and-prepare basis failed to span a discard-preserving map (residual " +
                        std::to_string(sol.residual) + ")");
    }
    DpDecomposition out;
    out.dropped_mass = sol.dropped_mass;
    RealMatrix sum(x.matrix().rows(), x.matrix().cols());
    for (std::size_t t = 0; t < sol.weights.size(); ++t) {
        std::size_t f = sol.functions[t][0];
        auto channel = measure_prepare_channel(function_table(f, frame_in.label_count(), frame_out.label_count()),
                                               frame_in, frame_out);
        sum += sol.weights[t] * channel.matrix();
        out.terms.push_back(WeightedChannel{sol.weights[t], std::move(channel), f});
    }
    out.residual = mixture_residual(x.matrix(), sum, sol.weights);
    return out;
}

DpDecomposition decompose_dp_map(const LocalDpFactor &x, const FiducialFrame &frame_in,
                                 const FiducialFrame &frame_out, double tol, Objective objective, std::size_t cap) {
    return decompose_dp_map(x.map, frame_in, frame_out, tol, objective, cap);
}

QuasiMixture decompose_ns_channel(const PartitionedMap &c, std::span<const FiducialFrame> frames_in,
                                  std::span<const FiducialFrame> frames_out, const DecomposeOptions &options) {
    const double tol = options.tol;
    for (const auto &p : c.parties()) {
        if (p.inputs.size() != 1 || p.outputs.size() != 1) {
            throw Error(ErrorKind::ShapeMismatch, "decomposition needs one input and one output wire per party");
        }
    }
    if (frames_in.size() != c.in_systems().size() || frames_out.size() != c.out_systems().size()) {
        throw Error(ErrorKind::ShapeMismatch, "need one frame per wire");
    }
    check_dp(c, tol);
    auto report = ns_report_channel(c, frames_in, frames_out, tol);
    PartitionedMap g = c.grouped_by_party();
    GroupedFrames fr = group_frames(c, frames_in, frames_out);
    const std::size_t n = g.parties().size();
    std::vector<PartyIo> io;
    for (std::size_t i = 0; i < n; ++i) {
        io.push_back(PartyIo{fr.in[i].label_count(), fr.out[i].label_count()});
    }
    strategy_count(io, options.term_cap);

    QuasiMixture m;
    m.frame_id = frame_id(fr.in, fr.out);
    FactorCache channels;
    auto channel_for = [&](std::size_t party, std::size_t f) -> const PartitionedMap & {
        return channels.get(party, f, [&] {
            return measure_prepare_channel(function_table(f, io[party].inputs, io[party].outputs), fr.in[party],
                                           fr.out[party]);
        });
    };
    FactorCache lifted;
    auto lifted_for = [&](std::size_t party, std::size_t f) -> const PartitionedMap & {
        return lifted.get(party, f, [&] {
            auto table = function_table(f, io[party].inputs, io[party].outputs);
            return lift_local_dp(deterministic_matrix(table, io[party].outputs), fr.in[party], fr.out[party], party)
                .map;
        });
    };
    auto s = to_stochastic(g, fr.in, fr.out, std::max(tol, kAlgebraicTol));

    if (options.algorithm == Algorithm::Direct) {
        // The product basis is built from the factors the mode asks for:
        // lifted deterministic maps, or measure-and-prepare channels.
        auto factor_for = [&](std::size_t party, std::size_t f) -> const PartitionedMap & {
            return options.mode == DecomposeMode::DpFactors ? lifted_for(party, f) : channel_for(party, f);
        };
        auto tuples = product_tuples(candidate_functions(s.matrix, io, options.objective), options.term_cap);
        const std::size_t length = g.matrix().rows() * g.matrix().cols();
        if (options.objective == Objective::MinNegativity && tuples.size() > options.lp_nonzero_cap / length) {
            throw Error(ErrorKind::CapExceeded, "direct min-negativity LP would have about " +
                                                    std::to_string(tuples.size()) + " x " + std::to_string(length) +
                                                    " nonzeros");
        }
        SparseColumns cols(length);
        for (const auto &t : tuples) {
            RealMatrix prod = RealMatrix::identity(1);
            for (std::size_t i = 0; i < n; ++i) {
                prod = kron(prod, factor_for(i, t[i]).matrix());
            }
            cols.add_dense(prod.entries());
        }
        auto sol = keep_significant(tuples, solve_columns(cols, g.matrix().entries(), options.objective, tol));
        require_agreement(report.is_ns, sol.feasible, report.max_violation(), sol.residual);
        m.dropped_mass = sol.dropped_mass;
        for (std::size_t t = 0; t < sol.weights.size(); ++t) {
            MixtureTerm term{sol.weights[t], {}, sol.functions[t]};
            for (std::size_t i = 0; i < n; ++i) {
                term.factors.push_back(factor_for(i, sol.functions[t][i]));
            }
            m.terms.push_back(std::move(term));
        }
        finish(m, g.matrix());
        return m;
    }

    // Pipeline: stochastic decomposition, lift each local strategy, and in
    // channel mode expand every lifted factor over measure-and-prepare
    // channels and merge the weights per function tuple.
    auto sol = solve_strategies(s.matrix, io, options.objective, tol, options.term_cap);
    require_agreement(report.is_ns, sol.feasible, report.max_violation(), sol.residual);
    m.dropped_mass = sol.dropped_mass;

    if (options.mode == DecomposeMode::DpFactors) {
        for (std::size_t t = 0; t < sol.weights.size(); ++t) {
            MixtureTerm term{sol.weights[t], {}, sol.functions[t]};
            for (std::size_t i = 0; i < n; ++i) {
                term.factors.push_back(lifted_for(i, sol.functions[t][i]));
            }
            m.terms.push_back(std::move(term));
        }
        finish(m, g.matrix());
        return m;
    }

    std::map<std::pair<std::size_t, std::size_t>, WeightedTuples> expansions;
    auto expansion_for = [&](std::size_t party, std::size_t f) -> const WeightedTuples & {
        auto key = std::make_pair(party, f);
        auto it = expansions.find(key);
        if (it == expansions.end()) {
            auto w = dp_weights(lifted_for(party, f).matrix(), fr.in[party], fr.out[party], tol, options.objective,
                                options.term_cap);
            if (!w.feasible) {
                throw Error(ErrorKind::InternalError, "measure-and-prepare expansion of a lifted factor failed");
            }
            m.dropped_mass += w.dropped_mass;
            it = expansions.emplace(key, std::move(w)).first;
        }
        return it->second;
    };

    std::map<std::vector<std::size_t>, double> merged;
    std::vector<std::size_t> tuple(n);
    for (std::size_t t = 0; t < sol.weights.size(); ++t) {
        std::vector<const WeightedTuples *> parts;
        for (std::size_t i = 0; i < n; ++i) {
            parts.push_back(&expansion_for(i, sol.functions[t][i]));
        }
        // Walk the product of the per-party expansions.
        std::vector<std::size_t> pos(n, 0);
        while (true) {
            double w = sol.weights[t];
            for (std::size_t i = 0; i < n; ++i) {
                tuple[i] = parts[i]->functions[pos[i]][0];
                w *= parts[i]->weights[pos[i]];
            }
            merged[tuple] += w;
            std::size_t i = n;
            while (i-- > 0) {
                if (++pos[i] < parts[i]->weights.size()) {
                    break;
                }
                pos[i] = 0;
            }
            if (i == SIZE_MAX) {
                break;
            }
        }
    }
    for (const auto &[functions, w] : merged) {
        if (std::abs(w) < kDropThreshold) {
            m.dropped_mass += std::abs(w);
            continue;
        }
        MixtureTerm term{w, {}, functions};
        for (std::size_t i = 0; i < n; ++i) {
            term.factors.push_back(channel_for(i, functions[i]));
        }
        m.terms.push_back(std::move(term));
    }
    finish(m, g.matrix());
    return m;
}

RealMatrix reconstruct_matrix(const QuasiMixture &m) {
    if (m.terms.empty()) {
        throw Error(ErrorKind::EmptyMixture, "mixture has no terms");
    }
    RealMatrix sum;
    for (const auto &t : m.terms) {
        RealMatrix prod = RealMatrix::identity(1);
        for (const auto &f : t.factors) {
            prod = kron(prod, f.matrix());
        }
        if (sum.empty()) {
            sum = RealMatrix(prod.rows(), prod.cols());
        } else if (prod.rows() != sum.rows() || prod.cols() != sum.cols()) {
            throw Error(ErrorKind::ShapeMismatch, "mixture terms have different shapes");
        }
        prod *= t.weight;
        sum += prod;
    }
    return sum;
}

PartitionedMap reconstruct(const QuasiMixture &m) {
    RealMatrix sum = reconstruct_matrix(m);
    return compose_parallel(m.terms.front().factors).with_matrix(std::move(sum));
}

double negativity(std::span<const double> weights) {
    double total = 0.0;
    double neg = 0.0;
    for (double w : weights) {
        total += w;
        neg += std::max(-w, 0.0);
    }
    if (std::abs(total - 1.0) > kAlgebraicTol) {
        throw Error(ErrorKind::WeightsNotAffine, "weights sum to " + std::to_string(total));
    }
    return neg;
}

}  // namespace gptns
