// Copyright 2026 The SkewSharp Authors
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

#ifndef SKEWSHARP_ERROR_H_
#define SKEWSHARP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace skewsharp {

enum class ErrorCode {
  kNonHermitianInput,
  kNotPsd,
  kInvalidState,
  kDimensionMismatch,
  kConstructionMismatch,
  kKernelDomainError,
  kKernelContractViolation,
  kPreconditionViolation,
  kInvalidFunction,
  kUnknownLabel,
  kInvalidGenerator,
  kSingularM,
  kSingularCovariance,
  kUnsupportedModeCount,
  kCutoffTooSmall,
  kAlreadyQuadrature,
  kNonSymplectic,
  kLogBranchFailure,
  kInvalidConfig,
  kParseError,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// message names the violated condition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonHermitianInput: return "NonHermitianInput";
    case ErrorCode::kNotPsd: return "NotPSD";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kConstructionMismatch: return "ConstructionMismatch";
    case ErrorCode::kKernelDomainError: return "KernelDomainError";
    case ErrorCode::kKernelContractViolation: return "KernelContractViolation";
    case ErrorCode::kPreconditionViolation: return "PreconditionViolation";
    case ErrorCode::kInvalidFunction: return "InvalidFunction";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kInvalidGenerator: return "InvalidGenerator";
    case ErrorCode::kSingularM: return "SingularM";
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kUnsupportedModeCount: return "UnsupportedModeCount";
    case ErrorCode::kCutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::kAlreadyQuadrature: return "AlreadyQuadrature";
    case ErrorCode::kNonSymplectic: return "NonSymplectic";
    case ErrorCode::kLogBranchFailure: return "LogBranchFailure";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace skewsharp

#endif  // SKEWSHARP_ERROR_H_
