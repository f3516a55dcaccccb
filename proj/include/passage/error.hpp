// Copyright 2026 The passage-lab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace passage {

enum class ErrorCode {
    InvalidArgument,
    DegeneratePostSelection,
    NoRetainedTrials,
    EmptyBatch,
    ResolutionTooSmall,
    AngleOutOfRange,
    ProbabilityOutOfRange,
    NonInvertiblePole,
    DegenerateLongitude,
    InvalidLaw,
    InvalidState,
    EmptyEnsemble,
    NotInMeasurementImage,
    InsufficientSamples,
    UnderdeterminedFit,
    InconsistentFrequencies,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error raised by every module of the library. The code is stable and
/// is what callers (and the CLI exit-code mapping) switch on.
class LabError : public std::runtime_error {
  public:
    LabError(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace passage
