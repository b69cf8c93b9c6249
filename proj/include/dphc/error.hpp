// Copyright 2026 The dphc Authors.
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

#ifndef DPHC_ERROR_HPP_
#define DPHC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dphc {

enum class ErrorCode {
  kDuplicateEdge,
  kSelfLoop,
  kNegativeWeight,
  kEndpointOutOfRange,
  kEmptyOrFullSide,
  kEmptySet,
  kParseError,
  kInvalidHeader,
  kIoError,
  kNonPositiveScale,
  kNonPositiveEpsilon,
  kNonPositiveSensitivity,
  kNonPositiveDeltaPrime,
  kLeafMismatch,
  kEmptyCandidateList,
  kTooLargeForOracle,
  kTooLargeForEnumeration,
  kSingletonGraph,
  kNegativeResultingWeight,
  kNonBalancedCutFromSubroutine,
  kUnknownMethod,
  kUnknownAlgorithm,
  kInvalidProbability,
  kNonPositiveSigma,
  kNotDivisibleBy5,
  kInvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kEndpointOutOfRange: return "EndpointOutOfRange";
    case ErrorCode::kEmptyOrFullSide: return "EmptyOrFullSide";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidHeader: return "InvalidHeader";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNonPositiveScale: return "NonPositiveScale";
    case ErrorCode::kNonPositiveEpsilon: return "NonPositiveEpsilon";
    case ErrorCode::kNonPositiveSensitivity: return "NonPositiveSensitivity";
    case ErrorCode::kNonPositiveDeltaPrime: return "NonPositiveDeltaPrime";
    case ErrorCode::kLeafMismatch: return "LeafMismatch";
    case ErrorCode::kEmptyCandidateList: return "EmptyCandidateList";
    case ErrorCode::kTooLargeForOracle: return "TooLargeForOracle";
    case ErrorCode::kTooLargeForEnumeration: return "TooLargeForEnumeration";
    case ErrorCode::kSingletonGraph: return "SingletonGraph";
    case ErrorCode::kNegativeResultingWeight: return "NegativeResultingWeight";
    case ErrorCode::kNonBalancedCutFromSubroutine: return "NonBalancedCutFromSubroutine";
    case ErrorCode::kUnknownMethod: return "UnknownMethod";
    case ErrorCode::kUnknownAlgorithm: return "UnknownAlgorithm";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kNonPositiveSigma: return "NonPositiveSigma";
    case ErrorCode::kNotDivisibleBy5: return "NotDivisibleBy5";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the failure kind;
/// `what()` carries "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure carrying the 1-based line (edge-list files) or 0-based
/// character offset (tree text) where it was detected.
class ParseError : public Error {
 public:
  ParseError(std::size_t location, const std::string& detail, ErrorCode cause = ErrorCode::kParseError)
      : Error(ErrorCode::kParseError, "at " + std::to_string(location) + ": " + detail),
        location_(location),
        cause_(cause) {}

  [[nodiscard]] std::size_t location() const noexcept { return location_; }
  /// Underlying validation failure, e.g. kSelfLoop for "0 0 1.0".
  [[nodiscard]] ErrorCode cause() const noexcept { return cause_; }

 private:
  std::size_t location_;
  ErrorCode cause_;
};

inline void require(bool condition, ErrorCode code, const std::string& detail) {
  if (!condition) throw Error(code, detail);
}

}  // namespace dphc

#endif  // DPHC_ERROR_HPP_
