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
#include <cstdint>
#include <span>
#include <vector>

#include "gptns/matrix.hpp"

namespace gptns {

/// Column-compressed storage for the constraint matrices of the LPs and
/// affine systems in this library. Product deterministic strategies have one
/// nonzero per input label, so keeping columns sparse is what makes the
/// two-qubit instances tractable.
class SparseColumns {
   public:
    explicit SparseColumns(std::size_t rows = 0);

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return starts_.size() - 1;
    }
    std::size_t nonzeros() const noexcept {
        return values_.size();
    }

    void add_dense(std::span<const double> column);
    void add_sparse(std::span<const std::uint32_t> indices, std::span<const double> values);
    void reserve(std::size_t cols, std::size_t nonzeros);

    std::span<const std::uint32_t> indices(std::size_t col) const {
        return std::span<const std::uint32_t>(indices_).subspan(starts_[col], starts_[col + 1] - starts_[col]);
    }
    std::span<const double> values(std::size_t col) const {
        return std::span<const double>(values_).subspan(starts_[col], starts_[col + 1] - starts_[col]);
    }

    double dot(std::size_t col, std::span<const double> y) const;
    void axpy(std::size_t col, double alpha, std::span<double> out) const;
    Vector dense(std::size_t col) const;
    /// Same columns with a trailing row of ones appended.
    SparseColumns homogenized() const;
    RealMatrix to_dense() const;

   private:
    std::size_t rows_;
    std::vector<std::size_t> starts_{0};
    std::vector<std::uint32_t> indices_;
    std::vector<double> values_;
};

struct LpOptions {
    double pivot_tol = 1e-10;
    double optimality_tol = 1e-10;
    /// Phase-one objective (the l1 norm of the constraint residual) above
    /// which the problem is declared infeasible.
    double feasibility_tol = 1e-9;
    std::size_t max_iterations = 2'000'000;
    std::size_t refactor_interval = 50;
    /// Consecutive degenerate pivots tolerated under largest-coefficient
    /// pricing before switching permanently to Bland's rule.
    std::size_t degenerate_switch = 30;
    bool bland_only = false;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    /// Primal point. For Infeasible this is the phase-one optimum, i.e. a
    /// nonnegative x minimising ||Ax - b||_1.
    Vector x;
    double objective = 0.0;
    double phase1_objective = 0.0;
    std::size_t iterations = 0;
};

/// Two-phase revised simplex for  min c.x  s.t.  A x = b,  x >= 0.
/// Deterministic: ties in both pricing and the ratio test go to the smallest
/// variable index.
LpResult solve_lp(const SparseColumns &a, std::span<const double> b, std::span<const double> c,
                  const LpOptions &options = {});

}  // namespace gptns
