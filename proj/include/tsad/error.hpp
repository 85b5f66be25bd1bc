/*
 * Copyright 2026 The tsad Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TSAD_ERROR_HPP
#define TSAD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsad {

// Numeric values are part of the C ABI (see tsad.h) and must not be reordered.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kSeriesTooShort = 2,
  kParseError = 3,
  kMissingColumn = 4,
  kLabelFileMissingEntry = 5,
  kInvalidSpec = 6,
  kConstantSeries = 7,
  kInvalidPeriod = 8,
  kSingularDesign = 9,
  kOrderTooLarge = 10,
  kInvalidOrder = 11,
  kNonConvergence = 12,
  kPeriodTooLong = 13,
  kTooFewWindows = 14,
  kNoCorePoints = 15,
  kDimensionMismatch = 16,
  kNumericalDivergence = 17,
  kDegenerateLabels = 18,
  kNaiveZero = 19,
  kUnknownDetector = 20,
  kIoError = 21,
  kInternal = 22,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tsad

#endif  // TSAD_ERROR_HPP
