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
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace gptns {

using Vector = std::vector<double>;

/// Dense real matrix, row-major. Every linear map between GPT systems, every
/// stochastic map, and every effect/state column lives in one of these.
class RealMatrix {
   public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    RealMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static RealMatrix identity(std::size_t n);
    static RealMatrix column(std::span<const double> v);
    static RealMatrix row(std::span<const double> v);

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool empty() const noexcept {
        return entries_.empty();
    }

    double &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    double operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    std::span<const double> entries() const noexcept {
        return entries_;
    }
    std::span<double> entries() noexcept {
        return entries_;
    }
    std::span<const double> row_span(std::size_t r) const {
        return std::span<const double>(entries_).subspan(r * cols_, cols_);
    }

    Vector column_vector(std::size_t c) const;
    Vector column_sums() const;
    RealMatrix transpose() const;
    bool all_finite() const;

    RealMatrix &operator+=(const RealMatrix &other);
    RealMatrix &operator-=(const RealMatrix &other);
    RealMatrix &operator*=(double s);

    friend bool operator==(const RealMatrix &, const RealMatrix &) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

RealMatrix operator+(RealMatrix a, const RealMatrix &b);
RealMatrix operator-(RealMatrix a, const RealMatrix &b);
RealMatrix operator*(double s, RealMatrix a);
RealMatrix operator*(const RealMatrix &a, const RealMatrix &b);
Vector operator*(const RealMatrix &a, std::span<const double> v);

/// Kronecker product; index (i_a, i_b) maps to i_a * b.rows() + i_b.
RealMatrix kron(const RealMatrix &a, const RealMatrix &b);
RealMatrix kron_all(std::span<const RealMatrix> factors);
Vector kron(std::span<const double> a, std::span<const double> b);

double max_abs(const RealMatrix &a);
double max_abs_diff(const RealMatrix &a, const RealMatrix &b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);

/// LU factorisation with partial pivoting of a square matrix.
class LuDecomposition {
   public:
    explicit LuDecomposition(const RealMatrix &a);

    bool singular() const noexcept {
        return singular_;
    }
    double determinant() const;
    Vector solve(std::span<const double> b) const;
    RealMatrix inverse() const;

   private:
    RealMatrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
    bool singular_ = false;
};

/// Inverse plus the reciprocal 1-norm condition number of the input.
struct InverseResult {
    RealMatrix inverse;
    double rcond = 0.0;
    bool singular = true;
};

InverseResult invert(const RealMatrix &a);

/// Numerical rank by column-pivoted Householder QR.
std::size_t matrix_rank(const RealMatrix &a, double rel_tol = 1e-10);

std::ostream &operator<<(std::ostream &out, const RealMatrix &m);

}  // namespace gptns
