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

#include "gptns/error.hpp"

namespace gptns {

std::string_view error_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ShapeMismatch:
            return "ShapeMismatch";
        case ErrorKind::UnsupportedCone:
            return "UnsupportedCone";
        case ErrorKind::DegenerateCone:
            return "DegenerateCone";
        case ErrorKind::SingularFrame:
            return "SingularFrame";
        case ErrorKind::NotDiscardPreserving:
            return "NotDiscardPreserving";
        case ErrorKind::NotNonSignalling:
            return "NotNonSignalling";
        case ErrorKind::EffectsDontSumToDiscard:
            return "EffectsDontSumToDiscard";
        case ErrorKind::NotAState:
            return "NotAState";
        case ErrorKind::NotAnEffect:
            return "NotAnEffect";
        case ErrorKind::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorKind::CapExceeded:
            return "CapExceeded";
        case ErrorKind::EmptyMixture:
            return "EmptyMixture";
        case ErrorKind::WeightsNotAffine:
            return "WeightsNotAffine";
        case ErrorKind::LabelOverflow:
            return "LabelOverflow";
        case ErrorKind::MalformedInput:
            return "MalformedInput";
        case ErrorKind::InternalError:
            return "InternalError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {
}

}  // namespace gptns
