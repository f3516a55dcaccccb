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
#include "passage/error.hpp"

namespace passage {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegeneratePostSelection: return "DegeneratePostSelection";
    case ErrorCode::NoRetainedTrials: return "NoRetainedTrials";
    case ErrorCode::EmptyBatch: return "EmptyBatch";
    case ErrorCode::ResolutionTooSmall: return "ResolutionTooSmall";
    case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::NonInvertiblePole: return "NonInvertiblePole";
    case ErrorCode::DegenerateLongitude: return "DegenerateLongitude";
    case ErrorCode::InvalidLaw: return "InvalidLaw";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorCode::NotInMeasurementImage: return "NotInMeasurementImage";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::UnderdeterminedFit: return "UnderdeterminedFit";
    case ErrorCode::InconsistentFrequencies: return "InconsistentFrequencies";
    }
    return "Unknown";
}

} // namespace passage
