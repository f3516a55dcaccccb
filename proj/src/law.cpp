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
#include "passage/law.hpp"

#include "passage/error.hpp"
#include "passage/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace passage {

std::string_view to_string(LawTag tag) noexcept {
    switch (tag) {
    case LawTag::QM: return "qm";
    case LawTag::COS4: return "cos4";
    case LawTag::CUSTOM: return "custom";
    }
    return "unknown";
}

namespace {

constexpr int kCheckPoints = 181;
constexpr double kBoundaryTolerance = 1e-12;

} // namespace

ProbabilityLaw::ProbabilityLaw(LawTag tag, Evaluator evaluator, std::string name)
    : tag_(tag), evaluator_(std::move(evaluator)), name_(std::move(name)) {
    if (!evaluator_) {
        throw LabError(ErrorCode::InvalidLaw, "law has no evaluator");
    }
    if (std::abs(evaluator_(0.0) - 1.0) > kBoundaryTolerance) {
        throw LabError(ErrorCode::InvalidLaw, name_ + ": f(0) must be 1");
    }
    if (std::abs(evaluator_(kPi)) > kBoundaryTolerance) {
        throw LabError(ErrorCode::InvalidLaw, name_ + ": f(pi) must be 0");
    }
    for (int i = 0; i < kCheckPoints; ++i) {
        const double theta = kPi * i / (kCheckPoints - 1);
        const double f = evaluator_(theta);
        if (!(f >= 0.0 && f <= 1.0)) {
            throw LabError(ErrorCode::InvalidLaw,
                           name_ + ": value " + std::to_string(f) + " at theta " + std::to_string(theta));
        }
    }
}

ProbabilityLaw ProbabilityLaw::qm() {
    return {LawTag::QM,
            [](double theta) {
                const double c = std::cos(theta / 2.0);
                return c * c;
            },
            "qm"};
}

ProbabilityLaw ProbabilityLaw::cos4() {
    return {LawTag::COS4,
            [](double theta) {
                const double c = std::cos(theta / 2.0);
                const double c2 = c * c;
                return c2 * c2;
            },
            "cos4"};
}

ProbabilityLaw ProbabilityLaw::custom(Evaluator evaluator, std::string name) {
    return {LawTag::CUSTOM, std::move(evaluator), std::move(name)};
}

ProbabilityLaw ProbabilityLaw::from_table(std::vector<std::pair<double, double>> samples, std::string name) {
    if (samples.size() < 2) {
        throw LabError(ErrorCode::InvalidLaw, "law table needs at least two rows");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].first > samples[i - 1].first)) {
            throw LabError(ErrorCode::InvalidLaw, "law table angles must be strictly increasing");
        }
    }
    if (samples.front().first != 0.0 || samples.back().first != 180.0) {
        throw LabError(ErrorCode::InvalidLaw, "law table must span 0 to 180 degrees");
    }
    auto table = std::make_shared<const std::vector<std::pair<double, double>>>(std::move(samples));
    auto evaluator = [table](double theta) {
        const double deg = std::clamp(to_degrees(theta), 0.0, 180.0);
        const auto &rows = *table;
        auto hi = std::lower_bound(rows.begin(), rows.end(), deg,
                                   [](const auto &row, double value) { return row.first < value; });
        if (hi == rows.begin()) {
            return hi->second;
        }
        if (hi == rows.end()) {
            return rows.back().second;
        }
        const auto lo = std::prev(hi);
        const double t = (deg - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    };
    return {LawTag::CUSTOM, std::move(evaluator), std::move(name)};
}

} // namespace passage
