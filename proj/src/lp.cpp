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

#include "gptns/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gptns/error.hpp"

namespace gptns {

SparseColumns::SparseColumns(std::size_t rows) : rows_(rows) {
}

void SparseColumns::add_dense(std::span<const double> column) {
    if (column.size() != rows_) {
        throw Error(ErrorKind::ShapeMismatch, "column length does not match row count");
    }
    for (std::size_t r = 0; r < column.size(); ++r) {
        if (column[r] != 0.0) {
            indices_.push_back(static_cast<std::uint32_t>(r));
            values_.push_back(column[r]);
        }
    }
    starts_.push_back(values_.size());
}

void SparseColumns::add_sparse(std::span<const std::uint32_t> indices, std::span<const double> values) {
    if (indices.size() != values.size()) {
        throw Error(ErrorKind::ShapeMismatch, "sparse column index/value length mismatch");
    }
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= rows_) {
            throw Error(ErrorKind::IndexOutOfRange, "sparse column row index out of range");
        }
        if (values[k] != 0.0) {
            indices_.push_back(indices[k]);
            values_.push_back(values[k]);
        }
    }
    starts_.push_back(values_.size());
}

void SparseColumns::reserve(std::size_t cols, std::size_t nonzeros) {
    starts_.reserve(cols + 1);
    indices_.reserve(nonzeros);
    values_.reserve(nonzeros);
}

double SparseColumns::dot(std::size_t col, std::span<const double> y) const {
    double s = 0.0;
    for (std::size_t k = starts_[col]; k < starts_[col + 1]; ++k) {
        s += values_[k] * y[indices_[k]];
    }
    return s;
}

void SparseColumns::axpy(std::size_t col, double alpha, std::span<double> out) const {
    for (std::size_t k = starts_[col]; k < starts_[col + 1]; ++k) {
        out[indices_[k]] += alpha * values_[k];
    }
}

Vector SparseColumns::dense(std::size_t col) const {
    Vector out(rows_, 0.0);
    axpy(col, 1.0, out);
    return out;
}

SparseColumns SparseColumns::homogenized() const {
    SparseColumns out(rows_ + 1);
    out.reserve(cols(), nonzeros() + cols());
    std::vector<std::uint32_t> idx;
    std::vector<double> val;
    for (std::size_t c = 0; c < cols(); ++c) {
        auto i = indices(c);
        auto v = values(c);
        idx.assign(i.begin(), i.end());
        val.assign(v.begin(), v.end());
        idx.push_back(static_cast<std::uint32_t>(rows_));
        val.push_back(1.0);
        out.add_sparse(idx, val);
    }
    return out;
}

RealMatrix SparseColumns::to_dense() const {
    RealMatrix out(rows_, cols());
    for (std::size_t c = 0; c < cols(); ++c) {
        auto i = indices(c);
        auto v = values(c);
        for (std::size_t k = 0; k < i.size(); ++k) {
            out(i[k], c) = v[k];
        }
    }
    return out;
}

namespace {

/// Revised simplex working state. Variables 0..n-1 are structural, n..n+m-1
/// are the phase-one artificials (unit columns on sign-normalised rows).
class RevisedSimplex {
   public:
    RevisedSimplex(const SparseColumns &a, std::span<const double> b, const LpOptions &options)
        : a_(a), m_(a.rows()), n_(a.cols()), options_(options), sign_(m_, 1.0), rhs_(m_), basis_(m_),
          in_basis_(n_ + m_, -1), binv_(m_, m_), xb_(m_), blocked_(n_ + m_, false) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (b[i] < 0.0) {
                sign_[i] = -1.0;
            }
            rhs_[i] = sign_[i] * b[i];
            basis_[i] = n_ + i;
            in_basis_[n_ + i] = static_cast<long>(i);
            binv_(i, i) = 1.0;
            xb_[i] = rhs_[i];
        }
        // Artificials never re-enter once they leave.
        for (std::size_t i = 0; i < m_; ++i) {
            blocked_[n_ + i] = true;
        }
    }

    LpStatus run(std::span<const double> costs) {
        costs_.assign(costs.begin(), costs.end());
        bool bland = options_.bland_only;
        std::size_t degenerate_streak = 0;
        std::vector<double> y(m_);
        std::vector<double> u(m_);
        while (true) {
            if (iterations_ >= options_.max_iterations) {
                return LpStatus::IterationLimit;
            }
            if (since_refactor_ >= options_.refactor_interval) {
                refactor();
            }
            // Duals y = c_B^T B^{-1}.
            std::fill(y.begin(), y.end(), 0.0);
            for (std::size_t i = 0; i < m_; ++i) {
                double cb = costs_[basis_[i]];
                if (cb == 0.0) {
                    continue;
                }
                auto row = binv_.row_span(i);
                for (std::size_t j = 0; j < m_; ++j) {
                    y[j] += cb * row[j];
                }
            }
            for (std::size_t j = 0; j < m_; ++j) {
                y[j] *= sign_[j];
            }
            std::size_t entering = kNone;
            double best = -options_.optimality_tol;
            for (std::size_t j = 0; j < n_; ++j) {
                if (in_basis_[j] >= 0 || blocked_[j]) {
                    continue;
                }
                double d = costs_[j] - a_.dot(j, y);
                if (d < best) {
                    entering = j;
                    if (bland) {
                        break;
                    }
                    best = d;
                }
            }
            if (entering == kNone) {
                return LpStatus::Optimal;
            }
            column_in_basis(entering, u);
            std::size_t leave = kNone;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (u[i] <= options_.pivot_tol) {
                    continue;
                }
                double ratio = std::max(xb_[i], 0.0) / u[i];
                if (leave == kNone || ratio < best_ratio - 1e-12) {
                    best_ratio = ratio;
                    leave = i;
                } else if (ratio <= best_ratio + 1e-12 && basis_[i] < basis_[leave]) {
                    best_ratio = std::min(best_ratio, ratio);
                    leave = i;
                }
            }
            if (leave == kNone) {
                return LpStatus::Unbounded;
            }
            if (best_ratio <= 1e-12) {
                if (++degenerate_streak >= options_.degenerate_switch) {
                    bland = true;
                }
            } else {
                degenerate_streak = 0;
            }
            pivot(entering, leave, u);
        }
    }

    /// After phase one: replace artificials still in the basis (at level ~0)
    /// by structural columns where possible. Rows that admit no replacement
    /// are linearly dependent on the others; their artificial stays basic.
    void drive_out_artificials() {
        std::vector<double> u(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) {
                continue;
            }
            auto row = binv_.row_span(i);
            std::vector<double> signed_row(m_);
            for (std::size_t k = 0; k < m_; ++k) {
                signed_row[k] = row[k] * sign_[k];
            }
            std::size_t pick = kNone;
            double pick_abs = options_.pivot_tol;
            for (std::size_t j = 0; j < n_; ++j) {
                if (in_basis_[j] >= 0) {
                    continue;
                }
                double r = std::abs(a_.dot(j, signed_row));
                if (r > pick_abs * (1.0 + 1e-12)) {
                    pick_abs = r;
                    pick = j;
                }
            }
            if (pick == kNone) {
                continue;
            }
            column_in_basis(pick, u);
            pivot(pick, i, u);
        }
        refactor();
    }

    double artificial_mass() const {
        double s = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= n_) {
                s += std::abs(xb_[i]);
            }
        }
        return s;
    }

    Vector primal() const {
        Vector x(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) {
                x[basis_[i]] = std::max(xb_[i], 0.0);
            }
        }
        return x;
    }

    void refactor() {
        since_refactor_ = 0;
        RealMatrix bmat(m_, m_);
        std::vector<double> col(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            signed_column(basis_[i], col);
            for (std::size_t r = 0; r < m_; ++r) {
                bmat(r, i) = col[r];
            }
        }
        LuDecomposition lu(bmat);
        if (lu.singular()) {
            return;
        }
        binv_ = lu.inverse();
        xb_ = binv_ * std::span<const double>(rhs_);
    }

    std::size_t iterations() const {
        return iterations_;
    }

   private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    void signed_column(std::size_t j, std::vector<double> &out) const {
        std::fill(out.begin(), out.end(), 0.0);
        if (j >= n_) {
            out[j - n_] = 1.0;
            return;
        }
        auto idx = a_.indices(j);
        auto val = a_.values(j);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            out[idx[k]] = sign_[idx[k]] * val[k];
        }
    }

    void column_in_basis(std::size_t j, std::vector<double> &u) const {
        std::fill(u.begin(), u.end(), 0.0);
        auto idx = a_.indices(j);
        auto val = a_.values(j);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            std::size_t r = idx[k];
            double v = sign_[r] * val[k];
            for (std::size_t i = 0; i < m_; ++i) {
                u[i] += binv_(i, r) * v;
            }
        }
    }

    void pivot(std::size_t entering, std::size_t leave, const std::vector<double> &u) {
        double piv = u[leave];
        double theta = xb_[leave] / piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i != leave) {
                xb_[i] -= theta * u[i];
            }
        }
        xb_[leave] = theta;
        auto prow = binv_.row_span(leave);
        std::vector<double> pivot_row(prow.begin(), prow.end());
        for (double &v : pivot_row) {
            v /= piv;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == leave || u[i] == 0.0) {
                continue;
            }
            double f = u[i];
            for (std::size_t j = 0; j < m_; ++j) {
                binv_(i, j) -= f * pivot_row[j];
            }
        }
        for (std::size_t j = 0; j < m_; ++j) {
            binv_(leave, j) = pivot_row[j];
        }
        in_basis_[basis_[leave]] = -1;
        basis_[leave] = entering;
        in_basis_[entering] = static_cast<long>(leave);
        ++iterations_;
        ++since_refactor_;
    }

    const SparseColumns &a_;
    std::size_t m_;
    std::size_t n_;
    LpOptions options_;
    std::vector<double> sign_;
    std::vector<double> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<long> in_basis_;
    RealMatrix binv_;
    std::vector<double> xb_;
    std::vector<bool> blocked_;
    std::vector<double> costs_;
    std::size_t iterations_ = 0;
    std::size_t since_refactor_ = 0;
};

}  // namespace

LpResult solve_lp(const SparseColumns &a, std::span<const double> b, std::span<const double> c,
                  const LpOptions &options) {
    if (b.size() != a.rows() || c.size() != a.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "LP dimensions do not match the constraint matrix");
    }
    const std::size_t n = a.cols();
    const std::size_t m = a.rows();
    LpResult result;
    if (m == 0) {
        result.status = LpStatus::Optimal;
        result.x.assign(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (c[j] < 0.0) {
                result.status = LpStatus::Unbounded;
            }
        }
        return result;
    }
    RevisedSimplex simplex(a, b, options);

    std::vector<double> phase1(n + m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        phase1[n + i] = 1.0;
    }
    LpStatus s1 = simplex.run(phase1);
    simplex.refactor();
    result.phase1_objective = simplex.artificial_mass();
    if (s1 == LpStatus::IterationLimit) {
        result.status = s1;
        result.x = simplex.primal();
        result.iterations = simplex.iterations();
        return result;
    }
    if (result.phase1_objective > options.feasibility_tol) {
        result.status = LpStatus::Infeasible;
        result.x = simplex.primal();
        result.iterations = simplex.iterations();
        return result;
    }
    simplex.drive_out_artificials();

    std::vector<double> phase2(n + m, 0.0);
    std::copy(c.begin(), c.end(), phase2.begin());
    LpStatus s2 = simplex.run(phase2);
    simplex.refactor();
    result.status = s2;
    result.x = simplex.primal();
    result.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        result.objective += c[j] * result.x[j];
    }
    result.iterations = simplex.iterations();
    return result;
}

}  // namespace gptns
