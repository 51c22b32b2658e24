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


#include "gptns/theories.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "gptns/error.hpp"

namespace gptns {

namespace {

constexpr const char *kPsdStates = "pauli-psd states";
constexpr const char *kPsdEffects = "pauli-psd effects";

std::vector<std::size_t> digits(std::size_t flat, std::span<const std::size_t> sizes) {
    std::vector<std::size_t> d(sizes.size());
    for (std::size_t k = sizes.size(); k-- > 0;) {
        d[k] = flat % sizes[k];
        flat /= sizes[k];
    }
    return d;
}

std::size_t product_of(std::span<const std::size_t> sizes) {
    std::size_t p = 1;
    for (auto s : sizes) {
        p *= s;
    }
    return p;
}

/// Box with entries prob(a, x) for output tuple a and input tuple x.
RealMatrix box_from(std::span<const PartyIo> io,
                    const std::function<double(const std::vector<std::size_t> &, const std::vector<std::size_t> &)> &prob) {
    std::vector<std::size_t> ins;
    std::vector<std::size_t> outs;
    for (const auto &p : io) {
        ins.push_back(p.inputs);
        outs.push_back(p.outputs);
    }
    RealMatrix box(product_of(outs), product_of(ins));
    for (std::size_t x = 0; x < box.cols(); ++x) {
        auto xd = digits(x, ins);
        for (std::size_t a = 0; a < box.rows(); ++a) {
            box(a, x) = prob(digits(a, outs), xd);
        }
    }
    return box;
}

std::vector<std::vector<std::size_t>> random_functions(std::span<const PartyIo> io, Rng &rng) {
    std::vector<std::vector<std::size_t>> f;
    for (const auto &p : io) {
        std::vector<std::size_t> table(p.inputs);
        for (auto &t : table) {
            t = rng.below(p.outputs);
        }
        f.push_back(std::move(table));
    }
    return f;
}

Eigen::MatrixXcd pauli(std::size_t k) {
    using C = std::complex<double>;
    Eigen::MatrixXcd m(2, 2);
    switch (k) {
        case 0:
            m << 1, 0, 0, 1;
            break;
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 0, C(0, -1), C(0, 1), 0;
            break;
        default:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

Eigen::MatrixXcd kron_c(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Eigen::MatrixXcd pauli_string(std::size_t index, std::size_t qubits) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t q = 0; q < qubits; ++q) {
        std::size_t shift = 2 * (qubits - 1 - q);
        acc = kron_c(acc, pauli((index >> shift) & 3));
    }
    return acc;
}

std::size_t qubit_count(std::size_t dim) {
    std::size_t n = 0;
    std::size_t d = 1;
    while (d < dim) {
        d *= 4;
        ++n;
    }
    if (d != dim) {
        throw Error(ErrorKind::ShapeMismatch, "length is not a power of 4");
    }
    return n;
}

GptSystem qubit_system(std::size_t qubits) {
    GptSystem s;
    s.name = "qubit";
    for (std::size_t k = 1; k < qubits; ++k) {
        s.name += "*qubit";
    }
    s.dim = std::size_t{1} << (2 * qubits);
    s.discard.assign(s.dim, 0.0);
    s.discard[0] = 1.0;
    s.state_cone = ConeDescription::from_oracle(
        s.dim, [](std::span<const double> x, double tol) { return pauli_operator_psd(x, tol, true); }, kPsdStates);
    s.effect_cone = ConeDescription::from_oracle(
        s.dim, [](std::span<const double> x, double tol) { return pauli_operator_psd(x, tol, false); }, kPsdEffects);
    return s;
}

bool is_qubit_family(const GptSystem &s) {
    return !s.state_cone.polyhedral() && s.state_cone.label() == kPsdStates;
}

/// Effects (rows) reading out `labels` classical values.
RealMatrix encoding_effects(const TheorySpec &t, std::size_t labels) {
    RealMatrix e(labels, t.system.dim);
    if (labels == 1) {
        for (std::size_t k = 0; k < t.system.dim; ++k) {
            e(0, k) = t.system.discard[k];
        }
        return e;
    }
    switch (t.kind) {
        case TheoryKind::Classical:
            for (std::size_t k = 0; k < t.d; ++k) {
                e(std::min(k, labels - 1), k) = 1.0;
            }
            break;
        case TheoryKind::Gbit:
            e = RealMatrix{{0.5, 0.5, 0.0}, {0.5, -0.5, 0.0}};
            break;
        case TheoryKind::Qubit:
            e = RealMatrix{{0.5, 0.0, 0.0, 0.5}, {0.5, 0.0, 0.0, -0.5}};
            break;
    }
    return e;
}

/// States (columns) carrying `labels` classical values.
RealMatrix encoding_states(const TheorySpec &t, std::size_t labels) {
    RealMatrix s(t.system.dim, labels);
    switch (t.kind) {
        case TheoryKind::Classical:
            for (std::size_t k = 0; k < labels; ++k) {
                s(k, k) = 1.0;
            }
            break;
        case TheoryKind::Gbit: {
            const double sign[2] = {1.0, -1.0};
            for (std::size_t k = 0; k < labels; ++k) {
                s(0, k) = 1.0;
                s(1, k) = sign[k];
                s(2, k) = sign[k];
            }
            break;
        }
        case TheoryKind::Qubit: {
            const double sign[2] = {1.0, -1.0};
            for (std::size_t k = 0; k < labels; ++k) {
                s(0, k) = 1.0;
                s(3, k) = sign[k];
            }
            break;
        }
    }
    return s;
}

RealMatrix random_stochastic(std::size_t rows, std::size_t cols, Rng &rng) {
    RealMatrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        auto p = rng.simplex_point(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            m(r, c) = p[r];
        }
    }
    return m;
}

RealMatrix random_gbit_channel(Rng &rng) {
    static const double kSymmetries[8][4] = {
        {1, 0, 0, 1}, {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0},
        {1, 0, 0, -1}, {-1, 0, 0, 1}, {0, 1, 1, 0}, {0, -1, -1, 0},
    };
    auto weights = rng.simplex_point(3);
    RealMatrix out(3, 3);
    for (double w : weights) {
        RealMatrix part(3, 3);
        if (rng.uniform() < 0.5) {
            const auto &r = kSymmetries[rng.below(8)];
            part = RealMatrix{{1, 0, 0}, {0, r[0], r[1]}, {0, r[2], r[3]}};
        } else {
            // Measure one of the two binary observables and prepare a random
            // state of the square for each outcome.
            std::size_t axis = 1 + rng.below(2);
            for (double sign : {1.0, -1.0}) {
                Vector e{0.5, 0.0, 0.0};
                e[axis] = 0.5 * sign;
                Vector s{1.0, rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
                part += kron(RealMatrix::column(s), RealMatrix::row(e));
            }
        }
        part *= w;
        out += part;
    }
    return out;
}

RealMatrix random_qubit_channel(Rng &rng) {
    const std::size_t k = 1 + rng.below(4);
    Eigen::MatrixXcd g(2 * k, 2);
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            double re = rng.normal();
            double im = rng.normal();
            g(r, c) = std::complex<double>(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd v = qr.householderQ() * Eigen::MatrixXcd::Identity(2 * k, 2);
    std::vector<ComplexMatrix> kraus;
    for (std::size_t j = 0; j < k; ++j) {
        ComplexMatrix m{2, {}};
        for (Eigen::Index r = 0; r < 2; ++r) {
            for (Eigen::Index c = 0; c < 2; ++c) {
                m.a.push_back(v(2 * j + r, c));
            }
        }
        kraus.push_back(std::move(m));
    }
    return qubit_transfer_matrix(1, kraus);
}

PartitionedMap mix_with_box(std::span<const TheorySpec> theories, Rng &rng, const RealMatrix &box,
                            std::span<const PartyIo> io, double mix) {
    Rng product_rng = rng.split(1);
    RealMatrix m = random_product_channel(theories, product_rng);
    m *= 1.0 - mix;
    PartitionedMap embedded = embed_classical_box(box, io, theories, theories);
    m += mix * embedded.matrix();
    return embedded.with_matrix(std::move(m));
}

bool is_classical(const GptSystem &s) {
    if (!s.state_cone.polyhedral() || s.state_cone.generators().size() != s.dim) {
        return false;
    }
    for (std::size_t k = 0; k < s.dim; ++k) {
        const auto &g = s.state_cone.generators()[k];
        for (std::size_t r = 0; r < s.dim; ++r) {
            if (g[r] != (r == k ? 1.0 : 0.0)) {
                return false;
            }
        }
    }
    return true;
}

/// Membership test for a product of classical factors with either qubits
/// or polyhedral systems. Empty when no exact test is available (a qubit
/// next to a gbit, say).
MembershipOracle mixed_membership(const std::vector<GptSystem> &systems, bool states) {
    std::vector<std::size_t> dims;
    std::vector<bool> classical;
    std::vector<GptSystem> rest;
    for (const auto &s : systems) {
        dims.push_back(s.dim);
        classical.push_back(is_classical(s));
        if (!classical.back()) {
            rest.push_back(s);
        }
    }
    MembershipOracle inner;
    if (rest.empty()) {
        inner = [](std::span<const double> x, double tol) { return x[0] >= -tol; };
    } else if (std::all_of(rest.begin(), rest.end(), is_qubit_family)) {
        inner = [states](std::span<const double> x, double tol) { return pauli_operator_psd(x, tol, states); };
    } else if (std::all_of(rest.begin(), rest.end(),
                           [](const GptSystem &s) { return s.state_cone.polyhedral(); })) {
        GptSystem joint = compose_systems(rest);
        ConeDescription cone = states ? joint.state_cone : joint.effect_cone;
        inner = [cone](std::span<const double> x, double tol) { return cone.contains(x, tol); };
    } else {
        return nullptr;
    }
    std::size_t rest_dim = 1;
    for (const auto &s : rest) {
        rest_dim *= s.dim;
    }
    return [dims, classical, rest_dim, inner](std::span<const double> x, double tol) {
        // Walk the joint index as a mixed-radix counter; the classical digits
        // select the block, the others the position inside it.
        std::vector<std::size_t> digit(dims.size(), 0);
        std::map<std::vector<std::size_t>, Vector> blocks;
        for (std::size_t flat = 0; flat < x.size(); ++flat) {
            std::vector<std::size_t> key;
            std::size_t pos = 0;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                if (classical[k]) {
                    key.push_back(digit[k]);
                } else {
                    pos = pos * dims[k] + digit[k];
                }
            }
            auto &block = blocks[key];
            block.resize(rest_dim, 0.0);
            block[pos] = x[flat];
            for (std::size_t k = dims.size(); k-- > 0;) {
                if (++digit[k] < dims[k]) {
                    break;
                }
                digit[k] = 0;
            }
        }
        return std::all_of(blocks.begin(), blocks.end(), [&](const auto &b) { return inner(b.second, tol); });
    };
}

}  // namespace

std::size_t TheorySpec::classical_capacity() const noexcept {
    return kind == TheoryKind::Classical ? d : 2;
}

GptSystem classical_system(std::size_t d) {
    if (d == 0) {
        throw Error(ErrorKind::MalformedInput, "classical system needs at least one symbol");
    }
    std::vector<Vector> units;
    for (std::size_t k = 0; k < d; ++k) {
        Vector u(d, 0.0);
        u[k] = 1.0;
        units.push_back(std::move(u));
    }
    GptSystem s;
    s.name = "classical:" + std::to_string(d);
    s.dim = d;
    s.state_cone = ConeDescription::from_generators(d, units);
    s.effect_cone = ConeDescription::from_generators(d, std::move(units));
    s.discard.assign(d, 1.0);
    return s;
}

TheorySpec build_classical(std::size_t d) {
    if (d < 2) {
        throw Error(ErrorKind::MalformedInput, "classical alphabet needs at least 2 symbols");
    }
    TheorySpec t;
    t.kind = TheoryKind::Classical;
    t.d = d;
    t.id = "classical:" + std::to_string(d);
    t.system = classical_system(d);
    t.frame = FiducialFrame{t.id + "/point-masses", t.system, RealMatrix::identity(d), RealMatrix::identity(d)};
    return t;
}

TheorySpec build_gbit() {
    TheorySpec t;
    t.kind = TheoryKind::Gbit;
    t.id = "gbit";
    t.system.name = "gbit";
    t.system.dim = 3;
    t.system.state_cone =
        ConeDescription::from_generators(3, {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1}});
    t.system.effect_cone = ConeDescription::from_generators(
        3, {{0.5, 0.5, 0.0}, {0.5, -0.5, 0.0}, {0.5, 0.0, 0.5}, {0.5, 0.0, -0.5}});
    t.system.discard = {1.0, 0.0, 0.0};
    // Three vertices of the square, and three effects summing to the discard.
    RealMatrix prep{{1, 1, 1}, {1, -1, 0}, {1, 1, -1}};
    RealMatrix meas{{0.25, 0.25, 0.0}, {0.5, -0.25, 0.25}, {0.25, 0.0, -0.25}};
    t.frame = FiducialFrame{"gbit/square-3", t.system, std::move(prep), std::move(meas)};
    return t;
}

TheorySpec build_qubit() {
    TheorySpec t;
    t.kind = TheoryKind::Qubit;
    t.id = "qubit";
    t.system = qubit_system(1);
    // Tetrahedral SIC with the first vertex on the +Z pole.
    const double r2 = std::sqrt(2.0);
    const double n[4][3] = {
        {0.0, 0.0, 1.0},
        {2.0 * r2 / 3.0, 0.0, -1.0 / 3.0},
        {-r2 / 3.0, std::sqrt(2.0 / 3.0), -1.0 / 3.0},
        {-r2 / 3.0, -std::sqrt(2.0 / 3.0), -1.0 / 3.0},
    };
    RealMatrix prep(4, 4);
    RealMatrix meas(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        prep(0, k) = 1.0;
        meas(k, 0) = 0.25;
        for (std::size_t j = 0; j < 3; ++j) {
            prep(j + 1, k) = n[k][j];
            meas(k, j + 1) = 0.25 * n[k][j];
        }
    }
    t.frame = FiducialFrame{"qubit/sic", t.system, std::move(prep), std::move(meas)};
    return t;
}

TheorySpec parse_theory_id(std::string_view id) {
    if (id == "gbit") {
        return build_gbit();
    }
    if (id == "qubit") {
        return build_qubit();
    }
    constexpr std::string_view prefix = "classical:";
    if (id.starts_with(prefix)) {
        auto digits_part = id.substr(prefix.size());
        std::size_t d = 0;
        auto [end, ec] = std::from_chars(digits_part.data(), digits_part.data() + digits_part.size(), d);
        if (ec == std::errc() && end == digits_part.data() + digits_part.size() && d >= 2 && d <= 64) {
            return build_classical(d);
        }
    }
    throw Error(ErrorKind::MalformedInput, "unknown theory '" + std::string(id) + "'");
}

std::vector<TheorySpec> parse_theory_list(std::string_view ids) {
    std::vector<TheorySpec> out;
    std::size_t start = 0;
    while (start <= ids.size()) {
        auto comma = ids.find(',', start);
        auto piece = ids.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_theory_id(piece));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

GptSystem composite_system(std::span<const GptSystem> systems) {
    if (systems.size() > 1 && std::all_of(systems.begin(), systems.end(), is_qubit_family)) {
        std::size_t qubits = 0;
        for (const auto &s : systems) {
            qubits += qubit_count(s.dim);
        }
        return qubit_system(qubits);
    }
    GptSystem out = compose_systems(systems);
    if (out.state_cone.polyhedral() || out.state_cone.has_oracle()) {
        return out;
    }
    // Mixed composites: classical factors split the cone into blocks, one
    // per symbol, so what remains must be all qubits or all polyhedral.
    std::vector<GptSystem> parts(systems.begin(), systems.end());
    if (auto states = mixed_membership(parts, true)) {
        out.state_cone = ConeDescription::from_oracle(out.dim, std::move(states), out.name + " states");
        out.effect_cone =
            ConeDescription::from_oracle(out.dim, mixed_membership(parts, false), out.name + " effects");
    }
    return out;
}

FiducialFrame composite_frame(std::span<const FiducialFrame> frames) {
    std::vector<GptSystem> systems;
    for (const auto &f : frames) {
        systems.push_back(f.system);
    }
    return kron_frames(frames, composite_system(systems));
}

std::vector<FiducialFrame> frames_of(std::span<const TheorySpec> theories) {
    std::vector<FiducialFrame> out;
    for (const auto &t : theories) {
        out.push_back(t.frame);
    }
    return out;
}

bool pauli_operator_psd(std::span<const double> x, double tol, bool state_scale) {
    const std::size_t qubits = qubit_count(x.size());
    const double scale = state_scale ? std::ldexp(1.0, -static_cast<int>(qubits)) : 1.0;
    if (qubits == 1) {
        double r = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        return scale * (x[0] - r) >= -tol;
    }
    const Eigen::Index n = Eigen::Index{1} << qubits;
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (x[a] != 0.0) {
            op += x[a] * pauli_string(a, qubits);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(op, Eigen::EigenvaluesOnly);
    return scale * eig.eigenvalues().minCoeff() >= -tol;
}

RealMatrix qubit_transfer_matrix(std::size_t qubits, std::span<const ComplexMatrix> kraus) {
    const std::size_t n = std::size_t{1} << qubits;
    const std::size_t dim = n * n;
    std::vector<Eigen::MatrixXcd> ks;
    for (const auto &k : kraus) {
        if (k.n != n || k.a.size() != n * n) {
            throw Error(ErrorKind::ShapeMismatch, "Kraus operator has the wrong size");
        }
        Eigen::MatrixXcd m(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                m(r, c) = k.a[r * n + c];
            }
        }
        ks.push_back(std::move(m));
    }
    std::vector<Eigen::MatrixXcd> sigma;
    for (std::size_t a = 0; a < dim; ++a) {
        sigma.push_back(pauli_string(a, qubits));
    }
    RealMatrix t(dim, dim);
    const double norm = 1.0 / static_cast<double>(n);
    for (std::size_t b = 0; b < dim; ++b) {
        Eigen::MatrixXcd image = Eigen::MatrixXcd::Zero(n, n);
        for (const auto &k : ks) {
            image += k * sigma[b] * k.adjoint();
        }
        for (std::size_t a = 0; a < dim; ++a) {
            t(a, b) = norm * (sigma[a] * image).trace().real();
        }
    }
    return t;
}

RealMatrix random_local_channel(const TheorySpec &theory, Rng &rng) {
    switch (theory.kind) {
        case TheoryKind::Classical:
            return random_stochastic(theory.d, theory.d, rng);
        case TheoryKind::Gbit:
            return random_gbit_channel(rng);
        case TheoryKind::Qubit:
            return random_qubit_channel(rng);
    }
    throw Error(ErrorKind::InternalError, "unknown theory kind");
}

RealMatrix random_product_channel(std::span<const TheorySpec> theories, Rng &rng, std::size_t terms) {
    auto weights = rng.simplex_point(terms);
    RealMatrix out;
    for (double w : weights) {
        RealMatrix term = RealMatrix::identity(1);
        for (const auto &t : theories) {
            term = kron(term, random_local_channel(t, rng));
        }
        term *= w;
        if (out.empty()) {
            out = std::move(term);
        } else {
            out += term;
        }
    }
    return out;
}

RealMatrix pr_box() {
    const PartyIo bit{2, 2};
    const PartyIo io[2] = {bit, bit};
    return box_from(io, [](const auto &a, const auto &x) { return ((a[0] ^ a[1]) == (x[0] & x[1])) ? 0.5 : 0.0; });
}

RealMatrix random_ns_box(std::span<const PartyIo> io, Rng &rng) {
    auto weights = rng.simplex_point(4);
    RealMatrix box;
    auto accumulate = [&](RealMatrix part, double w) {
        part *= w;
        if (box.empty()) {
            box = std::move(part);
        } else {
            box += part;
        }
    };
    for (std::size_t k = 0; k < 3; ++k) {
        auto f = random_functions(io, rng);
        accumulate(box_from(io,
                            [&](const auto &a, const auto &x) {
                                for (std::size_t i = 0; i < a.size(); ++i) {
                                    if (a[i] != f[i][x[i]]) {
                                        return 0.0;
                                    }
                                }
                                return 1.0;
                            }),
                   weights[k]);
    }
    // Correlated part: a generalised PR box on a pair with equal output
    // alphabets, other parties deterministic.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < io.size(); ++i) {
        for (std::size_t j = i + 1; j < io.size(); ++j) {
            if (io[i].outputs == io[j].outputs && io[i].outputs >= 2) {
                pairs.emplace_back(i, j);
            }
        }
    }
    auto f = random_functions(io, rng);
    if (pairs.empty()) {
        accumulate(box_from(io,
                            [&](const auto &a, const auto &x) {
                                for (std::size_t i = 0; i < a.size(); ++i) {
                                    if (a[i] != f[i][x[i]]) {
                                        return 0.0;
                                    }
                                }
                                return 1.0;
                            }),
                   weights[3]);
        return box;
    }
    auto [pi, pj] = pairs[rng.below(pairs.size())];
    const std::size_t d = io[pi].outputs;
    accumulate(box_from(io,
                        [&](const auto &a, const auto &x) {
                            for (std::size_t i = 0; i < a.size(); ++i) {
                                if (i != pi && i != pj && a[i] != f[i][x[i]]) {
                                    return 0.0;
                                }
                            }
                            std::size_t diff = (a[pj] + d - a[pi]) % d;
                            return diff == (x[pi] * x[pj]) % d ? 1.0 / static_cast<double>(d) : 0.0;
                        }),
               weights[3]);
    return box;
}

RealMatrix copy_box(std::span<const PartyIo> io, Rng &rng) {
    if (io.size() < 2) {
        throw Error(ErrorKind::ShapeMismatch, "copy box needs two parties");
    }
    auto f = random_functions(io, rng);
    return box_from(io, [&](const auto &a, const auto &x) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::size_t want = i == 1 ? x[0] % io[1].outputs : f[i][x[i]];
            if (a[i] != want) {
                return 0.0;
            }
        }
        return 1.0;
    });
}

PartitionedMap embed_classical_box(const RealMatrix &box, std::span<const PartyIo> io,
                                   std::span<const TheorySpec> in_theories, std::span<const TheorySpec> out_theories) {
    if (io.size() != in_theories.size() || io.size() != out_theories.size()) {
        throw Error(ErrorKind::ShapeMismatch, "need one input and one output theory per party");
    }
    RealMatrix left = RealMatrix::identity(1);
    RealMatrix right = RealMatrix::identity(1);
    std::vector<GptSystem> ins;
    std::vector<GptSystem> outs;
    for (std::size_t i = 0; i < io.size(); ++i) {
        if (io[i].inputs > in_theories[i].classical_capacity() || io[i].outputs > out_theories[i].classical_capacity()) {
            throw Error(ErrorKind::LabelOverflow, "party " + std::to_string(i) + " needs more labels than " +
                                                      in_theories[i].id + "/" + out_theories[i].id + " can carry");
        }
        if (io[i].inputs == 0 || io[i].outputs == 0) {
            throw Error(ErrorKind::ShapeMismatch, "party with an empty alphabet");
        }
        left = kron(left, encoding_states(out_theories[i], io[i].outputs));
        right = kron(right, encoding_effects(in_theories[i], io[i].inputs));
        ins.push_back(in_theories[i].system);
        outs.push_back(out_theories[i].system);
    }
    if (box.rows() != left.cols() || box.cols() != right.rows()) {
        throw Error(ErrorKind::ShapeMismatch, "box shape does not match the party alphabets");
    }
    return PartitionedMap(std::move(ins), std::move(outs), left * box * right, default_parties(io.size(), io.size()));
}

std::vector<PartyIo> embedding_io(std::span<const TheorySpec> theories) {
    std::vector<PartyIo> io;
    for (const auto &t : theories) {
        io.push_back(PartyIo{t.classical_capacity(), t.classical_capacity()});
    }
    return io;
}

PartitionedMap random_ns_channel(std::span<const TheorySpec> theories, std::uint64_t seed, double mix) {
    Rng rng(seed);
    auto io = embedding_io(theories);
    Rng box_rng = rng.split(2);
    return mix_with_box(theories, rng, random_ns_box(io, box_rng), io, mix);
}

PartitionedMap random_signalling_channel(std::span<const TheorySpec> theories, std::uint64_t seed, double mix) {
    Rng rng(seed);
    auto io = embedding_io(theories);
    Rng box_rng = rng.split(3);
    return mix_with_box(theories, rng, copy_box(io, box_rng), io, mix);
}

}  // namespace gptns
