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
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gptns/matrix.hpp"

namespace gptns {

using MembershipOracle = std::function<bool(std::span<const double>, double)>;

/// A closed convex cone, either finitely generated or known only through a
/// membership predicate (the qubit cone, for instance).
class ConeDescription {
   public:
    ConeDescription() = default;

    static ConeDescription from_generators(std::size_t ambient_dim, std::vector<Vector> generators);
    static ConeDescription from_oracle(std::size_t ambient_dim, MembershipOracle oracle, std::string label);

    std::size_t ambient_dim() const noexcept {
        return ambient_dim_;
    }
    bool polyhedral() const noexcept {
        return polyhedral_;
    }
    bool has_oracle() const noexcept {
        return static_cast<bool>(oracle_);
    }
    const std::vector<Vector> &generators() const noexcept;
    const std::string &label() const noexcept {
        return label_;
    }

    /// Membership through whichever description is available. Throws
    /// UnsupportedCone when the cone has neither generators nor an oracle.
    bool contains(std::span<const double> x, double tol) const;

   private:
    std::size_t ambient_dim_ = 0;
    bool polyhedral_ = false;
    // Shared so that copying a system (which happens once per factor map) is
    // cheap.
    std::shared_ptr<const std::vector<Vector>> generators_;
    MembershipOracle oracle_;
    std::string label_;
};

struct ConeMembership {
    bool member = false;
    /// Nonnegative generator weights; when `member` is true they reproduce x
    /// to within the requested tolerance.
    Vector certificate;
    double residual = 0.0;
};

ConeMembership cone_member(const ConeDescription &cone, std::span<const double> x, double tol);

/// True iff x lies in the topological interior of a full-dimensional
/// polyhedral cone.
bool strict_interior(const ConeDescription &cone, std::span<const double> x, double tol);

}  // namespace gptns
