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

#include "gptns/affine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gptns/error.hpp"

namespace gptns {

namespace {

constexpr double kRankTolerance = 1e-10;

void check_shapes(const SparseColumns &basis, std::span<const double> target) {
    if (basis.cols() == 0) {
        throw Error(ErrorKind::ShapeMismatch, "affine basis is empty");
    }
    if (basis.rows() != target.size()) {
        throw Error(ErrorKind::ShapeMismatch, "basis vectors and target differ in length");
    }
}

/// Basic least-squares solution of W x = rhs by Householder QR with column
/// pivoting (largest remaining norm, ties to the lowest column index).
Vector pivoted_qr_solve(RealMatrix w, Vector rhs) {
    const std::size_t m = w.rows();
    const std::size_t n = w.cols();
    std::vector<std::size_t> cols(n);
    std::iota(cols.begin(), cols.end(), 0);
    std::vector<double> norm2(n, 0.0);
    double max_norm = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < m; ++r) {
            norm2[c] += w(r, c) * w(r, c);
        }
        max_norm = std::max(max_norm, std::sqrt(norm2[c]));
    }
    std::size_t rank = 0;
    std::vector<double> v(m);
    for (std::size_t k = 0; k < std::min(m, n); ++k) {
        std::size_t best = k;
        double best_norm = -1.0;
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            std::size_t c = cols[j];
            for (std::size_t r = k; r < m; ++r) {
                s += w(r, c) * w(r, c);
            }
            if (s > best_norm * (1.0 + 1e-12) + 1e-300) {
                best_norm = s;
                best = j;
            }
        }
        if (std::sqrt(best_norm) <= kRankTolerance * std::max(max_norm, 1.0)) {
            break;
        }
        std::swap(cols[k], cols[best]);
        std::size_t pc = cols[k];
        double alpha = std::sqrt(best_norm);
        if (w(k, pc) > 0.0) {
            alpha = -alpha;
        }
        std::fill(v.begin(), v.end(), 0.0);
        for (std::size_t r = k; r < m; ++r) {
            v[r] = w(r, pc);
        }
        v[k] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t r = k; r < m; ++r) {
            vnorm2 += v[r] * v[r];
        }
        if (vnorm2 > 0.0) {
            for (std::size_t j = k; j < n; ++j) {
                std::size_t c = cols[j];
                double s = 0.0;
                for (std::size_t r = k; r < m; ++r) {
                    s += v[r] * w(r, c);
                }
                if (s == 0.0) {
                    continue;
                }
                s = 2.0 * s / vnorm2;
                for (std::size_t r = k; r < m; ++r) {
                    w(r, c) -= s * v[r];
                }
            }
            double s = 0.0;
            for (std::size_t r = k; r < m; ++r) {
                s += v[r] * rhs[r];
            }
            s = 2.0 * s / vnorm2;
            for (std::size_t r = k; r < m; ++r) {
                rhs[r] -= s * v[r];
            }
        }
        ++rank;
    }
    Vector z(rank, 0.0);
    for (std::size_t i = rank; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t j = i + 1; j < rank; ++j) {
            s -= w(i, cols[j]) * z[j];
        }
        z[i] = s / w(i, cols[i]);
    }
    Vector x(n, 0.0);
    for (std::size_t i = 0; i < rank; ++i) {
        x[cols[i]] = z[i];
    }
    return x;
}

double l1(std::span<const double> w) {
    double s = 0.0;
    for (double x : w) {
        s += std::abs(x);
    }
    return s;
}

}  // namespace

SparseColumns columns_from(const std::vector<Vector> &basis) {
    if (basis.empty()) {
        throw Error(ErrorKind::ShapeMismatch, "affine basis is empty");
    }
    SparseColumns cols(basis.front().size());
    for (const auto &b : basis) {
        cols.add_dense(b);
    }
    return cols;
}

double affine_residual(const SparseColumns &basis, std::span<const double> weights, std::span<const double> target) {
    Vector combo(basis.rows(), 0.0);
    double total = 0.0;
    for (std::size_t c = 0; c < basis.cols(); ++c) {
        if (weights[c] != 0.0) {
            basis.axpy(c, weights[c], combo);
        }
        total += weights[c];
    }
    return std::max(max_abs_diff(combo, target), std::abs(total - 1.0));
}

AffineSolution solve_affine(const SparseColumns &basis, std::span<const double> target, double tol) {
    check_shapes(basis, target);
    SparseColumns homog = basis.homogenized();
    Vector rhs(target.begin(), target.end());
    rhs.push_back(1.0);
    AffineSolution out;
    out.weights = pivoted_qr_solve(homog.to_dense(), std::move(rhs));
    out.residual_norm = affine_residual(basis, out.weights, target);
    out.l1_norm = l1(out.weights);
    out.feasible = out.residual_norm <= tol;
    return out;
}

AffineSolution solve_affine(const std::vector<Vector> &basis, std::span<const double> target, double tol) {
    return solve_affine(columns_from(basis), target, tol);
}

AffineSolution min_l1_affine(const SparseColumns &basis, std::span<const double> target, double tol,
                             const LpOptions &options) {
    check_shapes(basis, target);
    const std::size_t n = basis.cols();
    SparseColumns split(basis.rows() + 1);
    split.reserve(2 * n, 2 * (basis.nonzeros() + n));
    std::vector<std::uint32_t> idx;
    std::vector<double> val;
    for (int sign : {1, -1}) {
        for (std::size_t c = 0; c < n; ++c) {
            auto i = basis.indices(c);
            auto v = basis.values(c);
            idx.assign(i.begin(), i.end());
            val.resize(v.size());
            for (std::size_t k = 0; k < v.size(); ++k) {
                val[k] = sign * v[k];
            }
            idx.push_back(static_cast<std::uint32_t>(basis.rows()));
            val.push_back(sign);
            split.add_sparse(idx, val);
        }
    }
    Vector rhs(target.begin(), target.end());
    rhs.push_back(1.0);
    Vector cost(2 * n, 1.0);
    LpOptions opts = options;
    opts.feasibility_tol = tol;
    LpResult lp = solve_lp(split, rhs, cost, opts);

    AffineSolution out;
    if (lp.status != LpStatus::Optimal) {
        if (lp.status == LpStatus::IterationLimit) {
            throw Error(ErrorKind::InternalError, "simplex iteration limit reached in min_l1_affine");
        }
        // Report the least-squares distance to the affine hull.
        return solve_affine(basis, target, tol);
    }
    out.weights.assign(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        out.weights[c] = lp.x[c] - lp.x[n + c];
    }
    out.residual_norm = affine_residual(basis, out.weights, target);
    out.l1_norm = l1(out.weights);
    out.feasible = out.residual_norm <= tol;
    return out;
}

AffineSolution min_l1_affine(const std::vector<Vector> &basis, std::span<const double> target, double tol,
                             const LpOptions &options) {
    return min_l1_affine(columns_from(basis), target, tol, options);
}

}  // namespace gptns
