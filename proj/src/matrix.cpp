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

#include "gptns/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "gptns/error.hpp"

namespace gptns {

namespace {

void require_same_shape(const RealMatrix &a, const RealMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(
            ErrorKind::ShapeMismatch,
            std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

double one_norm(const RealMatrix &a) {
    double best = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            s += std::abs(a(r, c));
        }
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw Error(ErrorKind::ShapeMismatch, "entry count does not match rows x cols");
    }
}

RealMatrix::RealMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
        }
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
}

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

RealMatrix RealMatrix::column(std::span<const double> v) {
    return RealMatrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

RealMatrix RealMatrix::row(std::span<const double> v) {
    return RealMatrix(1, v.size(), std::vector<double>(v.begin(), v.end()));
}

Vector RealMatrix::column_vector(std::size_t c) const {
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

Vector RealMatrix::column_sums() const {
    Vector out(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out[c] += (*this)(r, c);
        }
    }
    return out;
}

RealMatrix RealMatrix::transpose() const {
    RealMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

bool RealMatrix::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(), [](double x) { return std::isfinite(x); });
}

RealMatrix &RealMatrix::operator+=(const RealMatrix &other) {
    require_same_shape(*this, other, "matrix addition");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

RealMatrix &RealMatrix::operator-=(const RealMatrix &other) {
    require_same_shape(*this, other, "matrix subtraction");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

RealMatrix &RealMatrix::operator*=(double s) {
    for (double &x : entries_) {
        x *= s;
    }
    return *this;
}

RealMatrix operator+(RealMatrix a, const RealMatrix &b) {
    a += b;
    return a;
}

RealMatrix operator-(RealMatrix a, const RealMatrix &b) {
    a -= b;
    return a;
}

RealMatrix operator*(double s, RealMatrix a) {
    a *= s;
    return a;
}

RealMatrix operator*(const RealMatrix &a, const RealMatrix &b) {
    if (a.cols() != b.rows()) {
        throw Error(
            ErrorKind::ShapeMismatch,
            "matrix product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    RealMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Vector operator*(const RealMatrix &a, std::span<const double> v) {
    if (a.cols() != v.size()) {
        throw Error(ErrorKind::ShapeMismatch, "matrix-vector product length mismatch");
    }
    Vector out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out[i] = dot(a.row_span(i), v);
    }
    return out;
}

RealMatrix kron(const RealMatrix &a, const RealMatrix &b) {
    RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia) {
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            double x = a(ia, ja);
            if (x == 0.0) {
                continue;
            }
            for (std::size_t ib = 0; ib < b.rows(); ++ib) {
                for (std::size_t jb = 0; jb < b.cols(); ++jb) {
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = x * b(ib, jb);
                }
            }
        }
    }
    return out;
}

RealMatrix kron_all(std::span<const RealMatrix> factors) {
    RealMatrix acc = RealMatrix::identity(1);
    for (const auto &f : factors) {
        acc = kron(acc, f);
    }
    return acc;
}

Vector kron(std::span<const double> a, std::span<const double> b) {
    Vector out;
    out.reserve(a.size() * b.size());
    for (double x : a) {
        for (double y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

double max_abs(const RealMatrix &a) {
    double best = 0.0;
    for (double x : a.entries()) {
        best = std::max(best, std::abs(x));
    }
    return best;
}

double max_abs_diff(const RealMatrix &a, const RealMatrix &b) {
    require_same_shape(a, b, "matrix comparison");
    return max_abs_diff(a.entries(), b.entries());
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::ShapeMismatch, "vector comparison length mismatch");
    }
    double best = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        best = std::max(best, std::abs(a[k] - b[k]));
    }
    return best;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::ShapeMismatch, "dot product length mismatch");
    }
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += a[k] * b[k];
    }
    return s;
}

LuDecomposition::LuDecomposition(const RealMatrix &a) : lu_(a), perm_(a.rows()) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "LU of a non-square matrix");
    }
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        perm_[i] = i;
    }
    double scale = max_abs(a);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu_(i, k)) > std::abs(lu_(piv, k))) {
                piv = i;
            }
        }
        if (std::abs(lu_(piv, k)) <= 1e-300 || std::abs(lu_(piv, k)) <= scale * 1e-15) {
            singular_ = true;
            continue;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu_(k, j), lu_(piv, j));
            }
            std::swap(perm_[k], perm_[piv]);
            sign_ = -sign_;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = lu_(i, k) / lu_(k, k);
            lu_(i, k) = f;
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                lu_(i, j) -= f * lu_(k, j);
            }
        }
    }
}

double LuDecomposition::determinant() const {
    if (singular_) {
        return 0.0;
    }
    double det = sign_;
    for (std::size_t i = 0; i < lu_.rows(); ++i) {
        det *= lu_(i, i);
    }
    return det;
}

Vector LuDecomposition::solve(std::span<const double> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) {
        throw Error(ErrorKind::ShapeMismatch, "LU solve length mismatch");
    }
    if (singular_) {
        throw Error(ErrorKind::InternalError, "LU solve on a singular matrix");
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) {
            s -= lu_(i, j) * x[j];
        }
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            s -= lu_(i, j) * x[j];
        }
        x[i] = s / lu_(i, i);
    }
    return x;
}

RealMatrix LuDecomposition::inverse() const {
    const std::size_t n = lu_.rows();
    RealMatrix inv(n, n);
    Vector e(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        std::fill(e.begin(), e.end(), 0.0);
        e[c] = 1.0;
        Vector col = solve(e);
        for (std::size_t r = 0; r < n; ++r) {
            inv(r, c) = col[r];
        }
    }
    return inv;
}

InverseResult invert(const RealMatrix &a) {
    LuDecomposition lu(a);
    InverseResult out;
    if (lu.singular()) {
        return out;
    }
    out.inverse = lu.inverse();
    double denom = one_norm(a) * one_norm(out.inverse);
    out.rcond = denom > 0.0 && std::isfinite(denom) ? 1.0 / denom : 0.0;
    out.singular = !out.inverse.all_finite();
    return out;
}

std::size_t matrix_rank(const RealMatrix &a, double rel_tol) {
    RealMatrix w = a;
    const std::size_t m = w.rows();
    const std::size_t n = w.cols();
    std::vector<double> norms(n, 0.0);
    double max_norm = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < m; ++r) {
            norms[c] += w(r, c) * w(r, c);
        }
        max_norm = std::max(max_norm, std::sqrt(norms[c]));
    }
    if (max_norm == 0.0) {
        return 0;
    }
    std::vector<std::size_t> cols(n);
    for (std::size_t c = 0; c < n; ++c) {
        cols[c] = c;
    }
    std::size_t rank = 0;
    for (std::size_t k = 0; k < std::min(m, n); ++k) {
        // Recompute remaining column norms below row k.
        std::size_t best = k;
        double best_norm = -1.0;
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t r = k; r < m; ++r) {
                s += w(r, cols[j]) * w(r, cols[j]);
            }
            if (s > best_norm) {
                best_norm = s;
                best = j;
            }
        }
        if (std::sqrt(best_norm) <= rel_tol * max_norm) {
            break;
        }
        std::swap(cols[k], cols[best]);
        std::size_t pc = cols[k];
        double alpha = std::sqrt(best_norm);
        if (w(k, pc) > 0) {
            alpha = -alpha;
        }
        std::vector<double> v(m, 0.0);
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
                s = 2.0 * s / vnorm2;
                for (std::size_t r = k; r < m; ++r) {
                    w(r, c) -= s * v[r];
                }
            }
        }
        ++rank;
    }
    return rank;
}

std::ostream &operator<<(std::ostream &out, const RealMatrix &m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << (r == 0 ? "[[" : " [");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c > 0) {
                out << ", ";
            }
            out << m(r, c);
        }
        out << (r + 1 == m.rows() ? "]]" : "]\n");
    }
    return out;
}

}  // namespace gptns
