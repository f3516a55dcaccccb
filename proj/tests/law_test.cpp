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
#include "passage/sphere.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace passage;

TEST(ProbabilityLaw, BuiltinsSatisfyBoundaries) {
    for (const auto &law : {ProbabilityLaw::qm(), ProbabilityLaw::cos4()}) {
        EXPECT_NEAR(law(0.0), 1.0, 1e-15);
        EXPECT_NEAR(law(kPi), 0.0, 1e-15);
        for (int i = 0; i <= 180; ++i) {
            const double f = law(kPi * i / 180.0);
            EXPECT_GE(f, 0.0);
            EXPECT_LE(f, 1.0);
        }
    }
    EXPECT_EQ(ProbabilityLaw::qm().tag(), LawTag::QM);
    EXPECT_EQ(ProbabilityLaw::cos4().tag(), LawTag::COS4);
}

TEST(ProbabilityLaw, ComplementSymmetry) {
    const auto qm = ProbabilityLaw::qm();
    const auto cos4 = ProbabilityLaw::cos4();
    for (int i = 0; i <= 180; ++i) {
        const double theta = kPi * i / 180.0;
        EXPECT_NEAR(qm(theta) + qm(kPi - theta), 1.0, 1e-12);
    }
    EXPECT_NEAR(cos4(kPi / 2) + cos4(kPi / 2), 0.5, 1e-15);
}

TEST(ProbabilityLaw, RejectsInvalidCustomLaws) {
    EXPECT_LAB_ERROR(ProbabilityLaw::custom([](double) { return 0.5; }), ErrorCode::InvalidLaw);
    EXPECT_LAB_ERROR(ProbabilityLaw::custom([](double t) { return std::cos(t); }), ErrorCode::InvalidLaw);
    EXPECT_LAB_ERROR(ProbabilityLaw::custom([](double t) { return 1.0 - t / kPi + 0.5 * std::sin(t); }),
                     ErrorCode::InvalidLaw);
    EXPECT_LAB_ERROR(ProbabilityLaw::custom(nullptr), ErrorCode::InvalidLaw);
}

TEST(ProbabilityLaw, Table) {
    const auto law = ProbabilityLaw::from_table({{0.0, 1.0}, {90.0, 0.25}, {180.0, 0.0}});
    EXPECT_EQ(law.tag(), LawTag::CUSTOM);
    EXPECT_EQ(law(0.0), 1.0);
    EXPECT_NEAR(law(kPi / 2), 0.25, 1e-15);
    EXPECT_NEAR(law(kPi / 4), 0.625, 1e-12);
    EXPECT_NEAR(law(kPi), 0.0, 1e-15);
}

TEST(ProbabilityLaw, TableValidation) {
    EXPECT_LAB_ERROR(ProbabilityLaw::from_table({{0.0, 1.0}}), ErrorCode::InvalidLaw);
    EXPECT_LAB_ERROR(ProbabilityLaw::from_table({{0.0, 1.0}, {90.0, 0.5}}), ErrorCode::InvalidLaw);
    EXPECT_LAB_ERROR(ProbabilityLaw::from_table({{0.0, 1.0}, {90.0, 0.5}, {90.0, 0.4}, {180.0, 0.0}}),
                     ErrorCode::InvalidLaw);
    EXPECT_LAB_ERROR(ProbabilityLaw::from_table({{0.0, 0.9}, {180.0, 0.0}}), ErrorCode::InvalidLaw);
    EXPECT_LAB_ERROR(ProbabilityLaw::from_table({{0.0, 1.0}, {90.0, 1.5}, {180.0, 0.0}}), ErrorCode::InvalidLaw);
}
