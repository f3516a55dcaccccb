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

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace passage {

enum class LawTag { QM, COS4, CUSTOM };

std::string_view to_string(LawTag tag) noexcept;

/// Candidate map from angular distance between preparation and measurement
/// to outcome probability.
///
/// Every law is validated on construction: f(0) = 1, f(pi) = 0 and
/// f(theta) in [0, 1] on a 181-point grid over [0, pi]. Violations throw
/// InvalidLaw, so an invalid law can never reach the analysis code.
class ProbabilityLaw {
  public:
    using Evaluator = std::function<double(double)>;

    /// cos^2(theta/2)
    static ProbabilityLaw qm();
    /// cos^4(theta/2)
    static ProbabilityLaw cos4();
    static ProbabilityLaw custom(Evaluator evaluator, std::string name = "custom");
    /// Piecewise-linear law through (angle in degrees, probability) samples.
    /// Angles must be strictly increasing and cover [0, 180].
    static ProbabilityLaw from_table(std::vector<std::pair<double, double>> samples, std::string name = "custom");

    [[nodiscard]] double operator()(double theta) const { return evaluator_(theta); }
    [[nodiscard]] LawTag tag() const noexcept { return tag_; }
    [[nodiscard]] const std::string &name() const noexcept { return name_; }

  private:
    ProbabilityLaw(LawTag tag, Evaluator evaluator, std::string name);

    LawTag tag_;
    Evaluator evaluator_;
    std::string name_;
};

} // namespace passage
