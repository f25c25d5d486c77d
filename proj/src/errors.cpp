// Copyright 2026 The ghzlbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ghzlbc/errors.hpp"

namespace ghzlbc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NormViolation: return "NormViolation";
    case ErrorCode::PatternLengthMismatch: return "PatternLengthMismatch";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::TooFewQubits: return "TooFewQubits";
    case ErrorCode::NotXStructured: return "NotXStructured";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::QubitCapExceeded: return "QubitCapExceeded";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DegenerateState: return "DegenerateState";
    case ErrorCode::UnsupportedScenario: return "UnsupportedScenario";
    case ErrorCode::ConfigParseError: return "ConfigParseError";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace ghzlbc
