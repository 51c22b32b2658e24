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

#include <stdexcept>
#include <string>
#include <string_view>

namespace gptns {

enum class ErrorKind {
    ShapeMismatch,
    UnsupportedCone,
    DegenerateCone,
    SingularFrame,
    NotDiscardPreserving,
    NotNonSignalling,
    EffectsDontSumToDiscard,
    NotAState,
    NotAnEffect,
    IndexOutOfRange,
    CapExceeded,
    EmptyMixture,
    WeightsNotAffine,
    LabelOverflow,
    MalformedInput,
    InternalError,
};

std::string_view error_name(ErrorKind kind);

/// All library failures are reported through this exception. `kind()` is the
/// stable identifier the CLI prints and maps to exit codes.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &detail);

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

}  // namespace gptns
