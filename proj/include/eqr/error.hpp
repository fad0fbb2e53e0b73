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

#ifndef EQR_ERROR_HPP_
#define EQR_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqr
{

enum class ErrorCode
{
  // linear algebra
  NotSymmetric,
  NotPositiveDefinite,
  NoConvergence,
  DimensionMismatch,
  SingularTransform,
  // univariate estimation
  TooFewObservations,
  NonPositiveObservation,
  NonFiniteObservation,
  InvalidK,
  InvalidQuery,
  DegenerateTail,
  InvalidArgument,
  InvalidSchedule,
  // models and sampling
  InvalidParameter,
  ThresholdAtEndpoint,
  UnknownModel,
  DeterminantNotOne,
  // regions
  SingularCovariance,
  InvalidP,
  // simulation harness
  ConfigError,
  IoError,
};

/// Stable identifier used in CSV/JSON output. Never renamed.
std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & what)
  : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace eqr

#endif  // EQR_ERROR_HPP_
