// Copyright 2026 The eqr Authors
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

#include "eqr/error.hpp"

namespace eqr
{

std::string_view error_code_name(ErrorCode code) noexcept
{
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::NonPositiveObservation: return "NonPositiveObservation";
    case ErrorCode::NonFiniteObservation: return "NonFiniteObservation";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::InvalidQuery: return "InvalidQuery";
    case ErrorCode::DegenerateTail: return "DegenerateTail";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ThresholdAtEndpoint: return "ThresholdAtEndpoint";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::DeterminantNotOne: return "DeterminantNotOne";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace eqr
