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


#include <gtest/gtest.h>

#include <complex>
#include <vector>

#include "gptns/decompose.hpp"
#include "gptns/theories.hpp"
#include "test_util.hpp"

using namespace gptns;

TEST(Theories, Classical) {
    TheorySpec b = build_classical(2);
    EXPECT_EQ(b.id, "classical:2");
    EXPECT_EQ(hopping_metric(b.frame).h, RealMatrix::identity(2));
    EXPECT_EQ(build_classical(3).system.discard, (Vector{1, 1, 1}));
    EXPECT_EQ(build_classical(3).classical_capacity(), 3u);
    EXPECT_EQ(classical_system(1).discard, (Vector{1}));
}

TEST(Theories, Gbit) {
    TheorySpec g = build_gbit();
    EXPECT_TRUE(validate_frame(g.frame).all_passed());
    EXPECT_TRUE(strict_interior(g.system.effect_cone, g.system.discard, 1e-9));
    EXPECT_FALSE(is_measure_and_prepare(PartitionedMap::identity(g.system)));
    EXPECT_EQ(g.classical_capacity(), 2u);
}

TEST(Theories, Qubit) {
    TheorySpec q = build_qubit();
    FrameReport r = validate_frame(q.frame);
    EXPECT_TRUE(r.all_passed());
    EXPECT_EQ(q.system.discard, (Vector{1, 0, 0, 0}));
    EXPECT_TRUE(q.system.is_state(Vector{1, 0, 0, 1}));
    EXPECT_FALSE(q.system.is_state(Vector{1, 0.8, 0, 0.8}));
    EXPECT_TRUE(q.system.is_effect(Vector{0.5, 0, 0.5, 0}));
    EXPECT_FALSE(q.system.is_effect(Vector{0.5, 0, 0.6, 0}));
    Vector total(4, 0.0);
    for (std::size_t l = 0; l < 4; ++l) {
        for (std::size_t c = 0; c < 4; ++c) {
            total[c] += q.frame.meas(l, c);
        }
    }
    EXPECT_LE(max_abs_diff(total, q.system.discard), 1e-15);
}

TEST(Theories, EveryBuiltInFrameHasTinySlack) {
    for (const auto &t : {build_classical(2), build_classical(3), build_classical(7), build_gbit(), build_qubit()}) {
        for (const auto &c : validate_frame(t.frame).checks) {
            EXPECT_LE(c.slack, 1e-9) << t.id << ": " << c.name;
        }
    }
}

TEST(Theories, CompositeFramesValidate) {
    std::vector<TheorySpec> t{build_qubit(), build_classical(3), build_classical(2)};
    auto frames = frames_of(t);
    FiducialFrame joint = composite_frame(frames);
    EXPECT_EQ(joint.system.dim, 24u);
    EXPECT_TRUE(joint.system.is_state(kron(Vector{1, 0, 0, 1}, Vector{0, 0, 1, 0, 0, 0})));
    EXPECT_FALSE(joint.system.is_state(kron(Vector{1, 0, 0, 1.1}, Vector{0, 0, 1, 0, 0, 0})));
    EXPECT_TRUE(validate_frame(joint).all_passed());
    std::vector<TheorySpec> qq{build_qubit(), build_qubit()};
    FiducialFrame two = composite_frame(frames_of(qq));
    EXPECT_TRUE(validate_frame(two).all_passed());
    // Bell state coordinates: (1/4)(II + XX - YY + ZZ) scaled to trace one.
    Vector bell(16, 0.0);
    bell[0] = 1;
    bell[5] = 1;
    bell[10] = -1;
    bell[15] = 1;
    EXPECT_TRUE(two.system.is_state(bell));
    bell[10] = 1;
    EXPECT_FALSE(two.system.is_state(bell));
}

TEST(Theories, ParseIds) {
    EXPECT_EQ(parse_theory_id("classical:5").d, 5u);
    EXPECT_EQ(parse_theory_id("gbit").kind, TheoryKind::Gbit);
    EXPECT_EQ(parse_theory_id("qubit").kind, TheoryKind::Qubit);
    auto list = parse_theory_list("qubit,classical:3");
    ASSERT_EQ(list.size(), 2u);
    EXPECT_EQ(list[1].id, "classical:3");
    for (const char *bad : {"classical", "classical:1", "classical:x", "qutrit", "", "gbit,"}) {
        EXPECT_GPTNS_ERROR(parse_theory_list(bad), ErrorKind::MalformedInput);
    }
}

TEST(Theories, PauliPsd) {
    EXPECT_TRUE(pauli_operator_psd(Vector{1, 0, 0, 0}, 1e-12, true));
    EXPECT_TRUE(pauli_operator_psd(Vector{1, 0.6, 0, 0.8}, 1e-12, true));
    EXPECT_FALSE(pauli_operator_psd(Vector{1, 0.6, 0.1, 0.8}, 1e-12, true));
    EXPECT_FALSE(pauli_operator_psd(Vector{-1, 0, 0, 0}, 1e-12, false));
}

TEST(Theories, QubitTransferMatrix) {
    using C = std::complex<double>;
    ComplexMatrix id{2, {C(1), C(0), C(0), C(1)}};
    std::vector<ComplexMatrix> kraus{id};
    EXPECT_LE(max_abs_diff(qubit_transfer_matrix(1, kraus), RealMatrix::identity(4)), 1e-15);
    // Z conjugation flips the X and Y coordinates.
    ComplexMatrix z{2, {C(1), C(0), C(0), C(-1)}};
    std::vector<ComplexMatrix> zk{z};
    RealMatrix t = qubit_transfer_matrix(1, zk);
    RealMatrix expected{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}};
    EXPECT_LE(max_abs_diff(t, expected), 1e-15);
}

TEST(Theories, RandomLocalChannelsArePhysical) {
    Rng rng(1);
    for (const auto &t : {build_classical(3), build_gbit(), build_qubit()}) {
        std::vector<FiducialFrame> f{t.frame};
        for (int trial = 0; trial < 20; ++trial) {
            PartitionedMap c = PartitionedMap::local(t.system, t.system, random_local_channel(t, rng));
            EXPECT_TRUE(is_discard_preserving(c));
            // Physical channels map fiducial states to states.
            for (std::size_t l = 0; l < t.frame.label_count(); ++l) {
                EXPECT_TRUE(t.system.is_state(c.matrix() * t.frame.prep.column_vector(l), 1e-9)) << t.id;
            }
        }
    }
}

TEST(Embed, ClassicalIsTheBoxItself) {
    std::vector<TheorySpec> t{build_classical(2), build_classical(2)};
    std::vector<PartyIo> io{{2, 2}, {2, 2}};
    EXPECT_EQ(embed_classical_box(pr_box(), io, t, t).matrix(), pr_box());
}

TEST(Embed, PrBoxIntoQubits) {
    std::vector<TheorySpec> t{build_qubit(), build_qubit()};
    std::vector<PartyIo> io{{2, 2}, {2, 2}};
    auto frames = frames_of(t);
    PartitionedMap c = embed_classical_box(pr_box(), io, t, t);
    EXPECT_TRUE(is_discard_preserving(c));
    EXPECT_TRUE(ns_report_channel(c, frames, frames).is_ns);
}

TEST(Embed, LabelOverflow) {
    std::vector<TheorySpec> t{build_qubit()};
    std::vector<PartyIo> io{{3, 3}};
    Rng rng(2);
    RealMatrix box = testutil::random_stochastic(rng, 3, 3);
    EXPECT_GPTNS_ERROR(embed_classical_box(box, io, t, t), ErrorKind::LabelOverflow);
    std::vector<TheorySpec> g{build_gbit()};
    EXPECT_GPTNS_ERROR(embed_classical_box(box, io, g, g), ErrorKind::LabelOverflow);
}

TEST(RandomNs, DeterministicInSeed) {
    std::vector<TheorySpec> t{build_gbit(), build_qubit()};
    EXPECT_EQ(random_ns_channel(t, 42).matrix(), random_ns_channel(t, 42).matrix());
    EXPECT_NE(random_ns_channel(t, 42).matrix(), random_ns_channel(t, 43).matrix());
}

TEST(RandomNs, AlwaysNonSignalling) {
    std::vector<std::vector<TheorySpec>> sets{{build_classical(2), build_classical(3)},
                                              {build_gbit(), build_gbit()},
                                              {build_qubit(), build_gbit()},
                                              {build_classical(2), build_classical(2), build_classical(2)}};
    for (const auto &t : sets) {
        auto frames = frames_of(t);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            EXPECT_TRUE(ns_report_channel(random_ns_channel(t, seed), frames, frames).is_ns);
        }
    }
}

TEST(RandomNs, ZeroMixIsConvexOverProducts) {
    // With no embedded box the stochastic coordinates are a convex mixture
    // of products, so dp-factor min-negativity vanishes.
    DecomposeOptions opt;
    opt.mode = DecomposeMode::DpFactors;
    opt.objective = Objective::MinNegativity;
    for (const auto &theory : {build_classical(3), build_gbit(), build_qubit()}) {
        std::vector<TheorySpec> t{theory, theory};
        auto frames = frames_of(t);
        QuasiMixture m = decompose_ns_channel(random_ns_channel(t, 5, 0.0), frames, frames, opt);
        EXPECT_LE(m.negativity, 1e-7) << theory.id;
        EXPECT_LE(m.residual, 1e-7) << theory.id;
    }
}
