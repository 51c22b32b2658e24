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

#include "gptns/cone.hpp"

#include <algorithm>
#include <cmath>

#include "gptns/error.hpp"
#include "gptns/lp.hpp"

namespace gptns {

namespace {

void require_polyhedral(const ConeDescription &cone, std::span<const double> x) {
    if (!cone.polyhedral()) {
        throw Error(ErrorKind::UnsupportedCone, "cone '" + cone.label() + "' has no finite generator set");
    }
    if (x.size() != cone.ambient_dim()) {
        throw Error(ErrorKind::ShapeMismatch, "vector length does not match the cone's ambient dimension");
    }
}

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

}  // namespace

ConeDescription ConeDescription::from_generators(std::size_t ambient_dim, std::vector<Vector> generators) {
    for (const auto &g : generators) {
        if (g.size() != ambient_dim) {
            throw Error(ErrorKind::ShapeMismatch, "cone generator length does not match ambient dimension");
        }
    }
    ConeDescription c;
    c.ambient_dim_ = ambient_dim;
    c.polyhedral_ = true;
    c.generators_ = std::make_shared<const std::vector<Vector>>(std::move(generators));
    c.label_ = "polyhedral";
    return c;
}

ConeDescription ConeDescription::from_oracle(std::size_t ambient_dim, MembershipOracle oracle, std::string label) {
    ConeDescription c;
    c.ambient_dim_ = ambient_dim;
    c.oracle_ = std::move(oracle);
    c.label_ = std::move(label);
    return c;
}

const std::vector<Vector> &ConeDescription::generators() const noexcept {
    static const std::vector<Vector> kNone;
    return generators_ ? *generators_ : kNone;
}

bool ConeDescription::contains(std::span<const double> x, double tol) const {
    if (polyhedral_) {
        return cone_member(*this, x, tol).member;
    }
    if (!oracle_) {
        throw Error(ErrorKind::UnsupportedCone, "cone '" + label_ + "' has no membership test");
    }
    if (x.size() != ambient_dim_) {
        throw Error(ErrorKind::ShapeMismatch, "vector length does not match the cone's ambient dimension");
    }
    return oracle_(x, tol);
}

ConeMembership cone_member(const ConeDescription &cone, std::span<const double> x, double tol) {
    require_polyhedral(cone, x);
    ConeMembership out;
    const auto &gens = cone.generators();
    if (gens.empty()) {
        out.residual = inf_norm(x);
        out.member = out.residual <= tol;
        return out;
    }
    SparseColumns cols(cone.ambient_dim());
    for (const auto &g : gens) {
        cols.add_dense(g);
    }
    Vector zero_cost(gens.size(), 0.0);
    LpOptions opts;
    opts.feasibility_tol = tol;
    LpResult lp = solve_lp(cols, x, zero_cost, opts);
    out.certificate = lp.x;
    Vector combo(cone.ambient_dim(), 0.0);
    for (std::size_t k = 0; k < gens.size(); ++k) {
        cols.axpy(k, out.certificate[k], combo);
    }
    out.residual = max_abs_diff(combo, x);
    out.member = out.residual <= tol;
    return out;
}

bool strict_interior(const ConeDescription &cone, std::span<const double> x, double tol) {
    require_polyhedral(cone, x);
    const auto &gens = cone.generators();
    const std::size_t dim = cone.ambient_dim();
    RealMatrix g(dim, gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
        for (std::size_t r = 0; r < dim; ++r) {
            g(r, k) = gens[k][r];
        }
    }
    if (gens.empty() || matrix_rank(g) < dim) {
        throw Error(ErrorKind::DegenerateCone, "cone generators do not span the ambient space");
    }
    double xn = inf_norm(x);
    if (xn == 0.0) {
        return false;
    }
    // x is interior iff x = sum_k (s + mu_k) g_k with mu >= 0 and s > 0; the LP
    // maximises the uniform slack s (capped at 1) on normalised data.
    SparseColumns cols(dim + 1);
    Vector col(dim + 1, 0.0);
    Vector total(dim + 1, 0.0);
    for (const auto &gen : gens) {
        double gn = inf_norm(gen);
        for (std::size_t r = 0; r < dim; ++r) {
            col[r] = gen[r] / gn;
            total[r] += col[r];
        }
        col[dim] = 0.0;
        cols.add_dense(col);
    }
    total[dim] = 1.0;
    cols.add_dense(total);
    Vector cap(dim + 1, 0.0);
    cap[dim] = 1.0;
    cols.add_dense(cap);
    Vector rhs(dim + 1);
    for (std::size_t r = 0; r < dim; ++r) {
        rhs[r] = x[r] / xn;
    }
    rhs[dim] = 1.0;
    Vector cost(gens.size() + 2, 0.0);
    cost[gens.size()] = -1.0;
    LpOptions opts;
    opts.feasibility_tol = std::max(tol, 1e-12);
    LpResult lp = solve_lp(cols, rhs, cost, opts);
    if (lp.status != LpStatus::Optimal) {
        return false;
    }
    return lp.x[gens.size()] > tol;
}

}  // namespace gptns
