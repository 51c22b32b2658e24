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

#include <span>
#include <vector>

#include "gptns/lp.hpp"
#include "gptns/matrix.hpp"

namespace gptns {

/// Outcome of expressing a target as an affine combination of basis columns.
/// When `feasible` is false the weights are the least-squares attempt and
/// `residual_norm` says how far the target is from the affine hull.
struct AffineSolution {
    bool feasible = false;
    Vector weights;
    /// max(||sum_k w_k b_k - target||_inf, |sum_k w_k - 1|)
    double residual_norm = 0.0;
    double l1_norm = 0.0;
};

/// Any affine combination reproducing `target`. The system is homogenised
/// with a row of ones and solved by column-pivoted Householder QR, which
/// returns a basic solution (at most rank-many nonzero weights).
AffineSolution solve_affine(const SparseColumns &basis, std::span<const double> target, double tol);
AffineSolution solve_affine(const std::vector<Vector> &basis, std::span<const double> target, double tol);

/// Affine combination with minimal sum |w_k|, via the split w = w+ - w- LP.
AffineSolution min_l1_affine(const SparseColumns &basis, std::span<const double> target, double tol,
                             const LpOptions &options = {});
AffineSolution min_l1_affine(const std::vector<Vector> &basis, std::span<const double> target, double tol,
                             const LpOptions &options = {});

/// Residual of a given weight vector, in the AffineSolution sense.
double affine_residual(const SparseColumns &basis, std::span<const double> weights, std::span<const double> target);

SparseColumns columns_from(const std::vector<Vector> &basis);

}  // namespace gptns
