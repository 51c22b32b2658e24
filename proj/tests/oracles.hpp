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


// Reference computations used by the tests. They deliberately share no code
// with the library's solvers: linear algebra goes through Eigen, and LPs are
// solved by enumerating basic solutions.

#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <vector>

#include "gptns/matrix.hpp"
#include "gptns/nonsignalling.hpp"

namespace oracle {

using gptns::RealMatrix;
using gptns::Vector;

inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

/// min sum|w| s.t. sum w_k b_k = t, sum w_k = 1, by visiting every basic
/// solution (every rank-sized independent column subset). Exponential; keep
/// instances small.
double min_l1_by_vertices(const std::vector<Vector> &basis, const Vector &target);

/// Whether t is a convex combination of the basis (Caratheodory: some basic
/// solution is nonnegative).
bool in_convex_hull(const std::vector<Vector> &basis, const Vector &target);

/// Whether x is a nonnegative combination of the generators.
bool in_cone(const std::vector<Vector> &generators, const Vector &x);

/// Closed-form affine decomposition of a column-sum-1 matrix y into
/// deterministic 0/1 matrices: anchor g(x) = argmax_k y[k][x]; the weight of
/// g with entry x changed to k is y[k][x], and g takes the rest. Keys are
/// lexicographic function indices.
std::map<std::size_t, double> closed_form_deterministic(const RealMatrix &y);

/// Largest marginal change per party, by explicit enumeration of all input
/// pairs that differ at that party only.
std::vector<double> ns_violations(const RealMatrix &s, const std::vector<gptns::PartyIo> &io);

/// Matrix inverse through Eigen's full-pivot LU.
RealMatrix inverse(const RealMatrix &a);

/// Kronecker product straight from the index formula.
RealMatrix kron(const RealMatrix &a, const RealMatrix &b);

/// Vectorised product deterministic boxes for two parties with binary inputs
/// and outputs, functions ordered (f(0), f(1)) lexicographically, party 0
/// outer.
std::vector<Vector> binary_local_boxes();

}  // namespace oracle
