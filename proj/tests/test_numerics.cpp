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

#include <cmath>

#include "gptns/affine.hpp"
#include "gptns/cone.hpp"
#include "gptns/lp.hpp"
#include "gptns/matrix.hpp"
#include "gptns/theories.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gptns;

namespace {

Vector vec_of(const RealMatrix &m) {
    return Vector(m.entries().begin(), m.entries().end());
}

Vector pr_box_vector() {
    return vec_of(pr_box());
}

}  // namespace

TEST(Kron, IdentityAndUnit) {
    EXPECT_EQ(kron(RealMatrix::identity(2), RealMatrix::identity(2)), RealMatrix::identity(4));
    RealMatrix a{{1, 2, 3}, {4, 5, 6}};
    EXPECT_EQ(kron(a, RealMatrix{{1}}), a);
    EXPECT_EQ(kron(RealMatrix{{1}}, a), a);
}

TEST(Kron, HandExpandedExample) {
    RealMatrix k = kron(RealMatrix{{0.5, 0.25}, {0.5, 0.75}}, RealMatrix{{1, 1}, {0, 0}});
    ASSERT_EQ(k.rows(), 4u);
    ASSERT_EQ(k.cols(), 4u);
    EXPECT_EQ(k(0, 0), 0.5);
    for (double s : k.column_sums()) {
        EXPECT_DOUBLE_EQ(s, 1.0);
    }
    RealMatrix expected{{0.5, 0.5, 0.25, 0.25}, {0, 0, 0, 0}, {0.5, 0.5, 0.75, 0.75}, {0, 0, 0, 0}};
    EXPECT_EQ(k, expected);
}

TEST(Kron, MatchesIndexFormula) {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = testutil::random_matrix(rng, 1 + rng.below(4), 1 + rng.below(4));
        auto b = testutil::random_matrix(rng, 1 + rng.below(4), 1 + rng.below(4));
        EXPECT_EQ(kron(a, b), oracle::kron(a, b));
    }
}

TEST(KronProperty, AssociativeAndBilinear) {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = testutil::random_matrix(rng, 2, 3);
        auto a2 = testutil::random_matrix(rng, 2, 3);
        auto b = testutil::random_matrix(rng, 3, 2);
        auto c = testutil::random_matrix(rng, 2, 2);
        double s = rng.uniform(-2, 2);
        EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
        EXPECT_LE(max_abs_diff(kron(a + a2, b), kron(a, b) + kron(a2, b)), 1e-12);
        EXPECT_LE(max_abs_diff(kron(s * a, b), s * kron(a, b)), 1e-12);
        EXPECT_LE(max_abs_diff(kron(a, s * b), s * kron(a, b)), 1e-12);
    }
}

TEST(Matrix, LuInverseAndRank) {
    RealMatrix a{{4, 3, 0}, {6, 3, 1}, {0, 1, 2}};
    InverseResult inv = invert(a);
    ASSERT_FALSE(inv.singular);
    EXPECT_LE(max_abs_diff(a * inv.inverse, RealMatrix::identity(3)), 1e-12);
    EXPECT_NEAR(LuDecomposition(a).determinant(), -16.0, 1e-12);
    EXPECT_EQ(matrix_rank(a), 3u);
    RealMatrix singular{{1, 2}, {2, 4}};
    EXPECT_TRUE(invert(singular).singular);
    EXPECT_EQ(matrix_rank(singular), 1u);
}

TEST(Matrix, ShapeErrors) {
    RealMatrix a(2, 3);
    RealMatrix b(2, 2);
    EXPECT_GPTNS_ERROR(a * a, ErrorKind::ShapeMismatch);
    EXPECT_GPTNS_ERROR(a + b, ErrorKind::ShapeMismatch);
}

TEST(Lp, TextbookOptimum) {
    // min -x1 - x2  s.t.  x1 + 2 x2 <= 4,  3 x1 + x2 <= 6.
    SparseColumns a(2);
    a.add_dense(Vector{1, 3});
    a.add_dense(Vector{2, 1});
    a.add_dense(Vector{1, 0});
    a.add_dense(Vector{0, 1});
    LpResult r = solve_lp(a, Vector{4, 6}, Vector{-1, -1, 0, 0});
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_NEAR(r.objective, -2.8, 1e-12);
    EXPECT_NEAR(r.x[0], 1.6, 1e-12);
    EXPECT_NEAR(r.x[1], 1.2, 1e-12);
}

TEST(Lp, InfeasibleAndUnbounded) {
    SparseColumns a(1);
    a.add_dense(Vector{1});
    a.add_dense(Vector{1});
    EXPECT_EQ(solve_lp(a, Vector{-1}, Vector{0, 0}).status, LpStatus::Infeasible);
    SparseColumns b(1);
    b.add_dense(Vector{1});
    b.add_dense(Vector{-1});
    EXPECT_EQ(solve_lp(b, Vector{1}, Vector{-1, 0}).status, LpStatus::Unbounded);
}

TEST(Lp, CyclingExampleTerminatesUnderEitherPricing) {
    // Beale's example, which cycles under naive largest-coefficient pricing.
    SparseColumns a(3);
    a.add_dense(Vector{0.25, 0.5, 0});
    a.add_dense(Vector{-60, -90, 0});
    a.add_dense(Vector{-1.0 / 25, -1.0 / 50, 1});
    a.add_dense(Vector{9, 3, 0});
    a.add_dense(Vector{1, 0, 0});
    a.add_dense(Vector{0, 1, 0});
    a.add_dense(Vector{0, 0, 1});
    Vector b{0, 0, 1};
    Vector c{-0.75, 150, -1.0 / 50, 6, 0, 0, 0};
    for (bool bland : {false, true}) {
        LpOptions opts;
        opts.bland_only = bland;
        LpResult r = solve_lp(a, b, c, opts);
        ASSERT_EQ(r.status, LpStatus::Optimal);
        EXPECT_NEAR(r.objective, -0.05, 1e-12);
    }
}

TEST(SolveAffine, SingletonAndMidpoint) {
    Vector v{1, 2, 3};
    AffineSolution s = solve_affine(std::vector<Vector>{v}, v, 1e-12);
    ASSERT_TRUE(s.feasible);
    ASSERT_EQ(s.weights.size(), 1u);
    EXPECT_NEAR(s.weights[0], 1.0, 1e-12);
    EXPECT_LE(s.residual_norm, 1e-12);

    Vector v2{3, 0, -1};
    Vector mid{2, 1, 1};
    AffineSolution m = solve_affine(std::vector<Vector>{v, v2}, mid, 1e-9);
    ASSERT_TRUE(m.feasible);
    EXPECT_NEAR(m.weights[0] + m.weights[1], 1.0, 1e-12);
    EXPECT_LE(m.residual_norm, 1e-9);
}

TEST(SolveAffine, PrBoxOverLocalBoxes) {
    auto basis = oracle::binary_local_boxes();
    Vector pr = pr_box_vector();
    AffineSolution s = solve_affine(basis, pr, 1e-12);
    ASSERT_TRUE(s.feasible);
    EXPECT_LE(s.residual_norm, 1e-12);
    // Independent check of the reported residual.
    Vector combo(16, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        total += s.weights[k];
        for (std::size_t r = 0; r < 16; ++r) {
            combo[r] += s.weights[k] * basis[k][r];
        }
    }
    EXPECT_LE(max_abs_diff(combo, pr), 1e-12);
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(SolveAffine, InfeasibleReportsResidual) {
    std::vector<Vector> basis{{1, 0}, {2, 0}};
    AffineSolution s = solve_affine(basis, Vector{0, 1}, 1e-9);
    EXPECT_FALSE(s.feasible);
    EXPECT_GT(s.residual_norm, 0.1);
}

TEST(SolveAffineProperty, RecombinationReproducesTarget) {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t dim = 2 + rng.below(5);
        std::size_t n = 1 + rng.below(8);
        std::vector<Vector> basis(n, Vector(dim));
        for (auto &b : basis) {
            for (auto &v : b) {
                v = rng.uniform(-1, 1);
            }
        }
        // Random affine combination, so the target is always in the hull.
        Vector w = rng.simplex_point(n);
        w[0] += 0.7;
        w[n - 1] -= 0.7;
        Vector target(dim, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t r = 0; r < dim; ++r) {
                target[r] += w[k] * basis[k][r];
            }
        }
        AffineSolution s = solve_affine(basis, target, 1e-9);
        ASSERT_TRUE(s.feasible);
        EXPECT_LE(affine_residual(columns_from(basis), s.weights, target), 1e-9);
    }
}

TEST(MinL1, ColumnAndConvexTargets) {
    std::vector<Vector> basis{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    AffineSolution col = min_l1_affine(basis, basis[2], 1e-9);
    ASSERT_TRUE(col.feasible);
    EXPECT_NEAR(col.l1_norm, 1.0, 1e-12);
    AffineSolution convex = min_l1_affine(basis, Vector{0.3, 0.6}, 1e-9);
    ASSERT_TRUE(convex.feasible);
    EXPECT_NEAR(convex.l1_norm, 1.0, 1e-12);
    AffineSolution outside = min_l1_affine(basis, Vector{2, 0}, 1e-9);
    ASSERT_TRUE(outside.feasible);
    EXPECT_NEAR(outside.l1_norm, 3.0, 1e-12);
}

TEST(MinL1, PrBoxMatchesVertexOracle) {
    auto basis = oracle::binary_local_boxes();
    Vector pr = pr_box_vector();
    double expected = oracle::min_l1_by_vertices(basis, pr);
    EXPECT_NEAR(expected, 2.0, 1e-9);
    AffineSolution s = min_l1_affine(basis, pr, 1e-9);
    ASSERT_TRUE(s.feasible);
    EXPECT_NEAR(s.l1_norm, expected, 1e-9);
}

TEST(MinL1Property, AtLeastOneAndOneIffConvex) {
    Rng rng(31);
    int convex_seen = 0;
    int outside_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t dim = 2 + rng.below(2);
        std::size_t n = dim + 1 + rng.below(3);
        std::vector<Vector> basis(n, Vector(dim));
        for (auto &b : basis) {
            for (auto &v : b) {
                v = rng.uniform(-1, 1);
            }
        }
        Vector target(dim);
        for (auto &v : target) {
            v = rng.uniform(-0.8, 0.8);
        }
        AffineSolution s = min_l1_affine(basis, target, 1e-9);
        ASSERT_TRUE(s.feasible);
        EXPECT_GE(s.l1_norm, 1.0 - 1e-9);
        EXPECT_NEAR(s.l1_norm, oracle::min_l1_by_vertices(basis, target), 1e-8);
        bool convex = oracle::in_convex_hull(basis, target);
        EXPECT_EQ(std::abs(s.l1_norm - 1.0) <= 1e-9, convex);
        (convex ? convex_seen : outside_seen)++;
    }
    // Both branches of the equivalence were exercised.
    EXPECT_GT(convex_seen, 5);
    EXPECT_GT(outside_seen, 5);
}

TEST(ConeMember, ApexAndGenerators) {
    TheorySpec g = build_gbit();
    const auto &cone = g.system.state_cone;
    ConeMembership zero = cone_member(cone, Vector{0, 0, 0}, 1e-9);
    EXPECT_TRUE(zero.member);
    for (double l : zero.certificate) {
        EXPECT_EQ(l, 0.0);
    }
    const auto &gens = cone.generators();
    for (std::size_t k = 0; k < gens.size(); ++k) {
        ConeMembership m = cone_member(cone, gens[k], 1e-9);
        ASSERT_TRUE(m.member);
        for (std::size_t j = 0; j < gens.size(); ++j) {
            EXPECT_NEAR(m.certificate[j], j == k ? 1.0 : 0.0, 1e-12);
        }
    }
}

TEST(ConeMember, GbitSquare) {
    TheorySpec g = build_gbit();
    const auto &cone = g.system.state_cone;
    Vector inside{1, 0.5, 0.5};
    Vector outside{1, 1.5, 0};
    EXPECT_TRUE(cone_member(cone, inside, 1e-9).member);
    EXPECT_FALSE(cone_member(cone, outside, 1e-9).member);
    EXPECT_TRUE(oracle::in_cone(cone.generators(), inside));
    EXPECT_FALSE(oracle::in_cone(cone.generators(), outside));
}

TEST(ConeMember, Errors) {
    TheorySpec q = build_qubit();
    EXPECT_GPTNS_ERROR(cone_member(q.system.state_cone, Vector{1, 0, 0, 0}, 1e-9), ErrorKind::UnsupportedCone);
    TheorySpec g = build_gbit();
    EXPECT_GPTNS_ERROR(cone_member(g.system.state_cone, Vector{1, 0}, 1e-9), ErrorKind::ShapeMismatch);
}

TEST(StrictInterior, GbitExamples) {
    TheorySpec g = build_gbit();
    EXPECT_TRUE(strict_interior(g.system.effect_cone, g.system.discard, 1e-9));
    EXPECT_FALSE(strict_interior(g.system.effect_cone, g.system.effect_cone.generators().front(), 1e-9));
    EXPECT_TRUE(strict_interior(g.system.state_cone, Vector{1, 0, 0}, 1e-9));
    EXPECT_FALSE(strict_interior(g.system.state_cone, Vector{1, 1, 0}, 1e-9));
}

TEST(StrictInterior, DegenerateAndUnsupported) {
    auto flat = ConeDescription::from_generators(3, {{1, 0, 0}, {0, 1, 0}});
    EXPECT_GPTNS_ERROR(strict_interior(flat, Vector{1, 1, 0}, 1e-9), ErrorKind::DegenerateCone);
    TheorySpec q = build_qubit();
    EXPECT_GPTNS_ERROR(strict_interior(q.system.state_cone, Vector{1, 0, 0, 0}, 1e-9), ErrorKind::UnsupportedCone);
}

TEST(ConeProperty, FullDimensionalInteriorPoints) {
    // A point that can be pushed back along every generator stays inside the
    // cone, hence lies in its interior.
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t dim = 3 + rng.below(2);
        std::size_t n = dim + 2 + rng.below(4);
        std::vector<Vector> gens(n, Vector(dim));
        for (auto &g : gens) {
            g[0] = 1.0;
            for (std::size_t r = 1; r < dim; ++r) {
                g[r] = rng.uniform(-1, 1);
            }
        }
        auto cone = ConeDescription::from_generators(dim, gens);
        Vector x(dim, 0.0);
        for (const auto &g : gens) {
            double l = rng.uniform(0.2, 1.0);
            for (std::size_t r = 0; r < dim; ++r) {
                x[r] += l * g[r];
            }
        }
        for (const auto &s : gens) {
            Vector pushed = x;
            for (std::size_t r = 0; r < dim; ++r) {
                pushed[r] -= 0.1 * s[r];
            }
            ASSERT_TRUE(oracle::in_cone(gens, pushed));
        }
        EXPECT_TRUE(strict_interior(cone, x, 1e-9));
    }
}

TEST(ConeProperty, SliceThroughCorePointHasFullAffineDimension) {
    // S = conv(random points), A = p + span(u_1..u_k) through an interior
    // point p. Points of S near p along A span an affine set of dimension k.
    Rng rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t dim = 3;
        std::vector<Vector> pts(8, Vector(dim));
        Vector p(dim, 0.0);
        for (auto &q : pts) {
            for (std::size_t r = 0; r < dim; ++r) {
                q[r] = rng.uniform(-1, 1);
                p[r] += q[r] / 8.0;
            }
        }
        ASSERT_TRUE(oracle::in_convex_hull(pts, p));
        std::size_t k = 1 + rng.below(dim);
        std::vector<Vector> dirs(k, Vector(dim));
        for (auto &u : dirs) {
            for (auto &v : u) {
                v = rng.normal();
            }
        }
        std::vector<Vector> samples;
        for (int s = 0; s < 40; ++s) {
            Vector q = p;
            double scale = rng.uniform(0.0, 0.5);
            for (const auto &u : dirs) {
                double c = scale * rng.uniform(-1, 1);
                for (std::size_t r = 0; r < dim; ++r) {
                    q[r] += c * u[r];
                }
            }
            AffineSolution in_s = min_l1_affine(pts, q, 1e-9);
            if (in_s.feasible && in_s.l1_norm <= 1.0 + 1e-9) {
                samples.push_back(q);
            }
        }
        ASSERT_GT(samples.size(), k);
        RealMatrix diffs(dim, samples.size() - 1);
        for (std::size_t s = 1; s < samples.size(); ++s) {
            for (std::size_t r = 0; r < dim; ++r) {
                diffs(r, s - 1) = samples[s][r] - samples[0][r];
            }
        }
        EXPECT_EQ(matrix_rank(diffs, 1e-8), k);
    }
}
