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
#include "passage/io.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <clocale>
#include <sstream>

using namespace passage;

TEST(FormatNumber, ShortestRoundTrip) {
    EXPECT_EQ(io::format_number(0.5), "0.5");
    EXPECT_EQ(io::format_number(1.0), "1");
    EXPECT_EQ(io::format_number(std::optional<double>{}), "nan");
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double x = (rng.uniform() - 0.5) * 1e3;
        EXPECT_EQ(std::stod(io::format_number(x)), x);
    }
}

TEST(FormatNumber, IgnoresLocale) {
    const char *previous = std::setlocale(LC_NUMERIC, nullptr);
    const std::string saved = previous ? previous : "C";
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
        EXPECT_EQ(io::format_number(0.25), "0.25");
    }
    std::setlocale(LC_NUMERIC, saved.c_str());
    EXPECT_EQ(io::format_number(0.25), "0.25");
}

TEST(ContourCsv, Layout) {
    std::ostringstream os;
    io::write_contour_csv(os, cs_contour_grid(3));
    EXPECT_EQ(os.str(), "p_o\\p_s,0,0.5,1\n"
                        "0,0,0,nan\n"
                        "0.5,0,0.5,1\n"
                        "1,nan,1,1\n");
}

TEST(SphereMapCsv, Layout) {
    std::ostringstream os;
    io::write_sphere_map_csv(os, sphere_map(2));
    EXPECT_EQ(os.str(), "p_s,p_o,theta_deg,phi_deg,cs\n"
                        "0,0,180,0,0\n"
                        "1,0,nan,nan,nan\n"
                        "0,1,nan,nan,nan\n"
                        "1,1,0,0,1\n");
}

TEST(ResponseMatrixCsv, Header) {
    Eigen::MatrixXd m(2, 3);
    m << 0.5, 0.25, 1, 0, 0.75, 0.125;
    std::ostringstream os;
    io::write_response_matrix_csv(os, m);
    EXPECT_EQ(os.str(), "ensemble,d0,d1,d2\n0,0.5,0.25,1\n1,0,0.75,0.125\n");
}

TEST(LawTable, Parse) {
    std::istringstream in("angle_deg,probability\n0,1\n 90 , 0.5\r\n\n180,0\n");
    const auto rows = io::read_law_table(in);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1], (std::pair<double, double>{90.0, 0.5}));
}

TEST(LawTable, Malformed) {
    std::istringstream three("0,1,2\n");
    EXPECT_LAB_ERROR(io::read_law_table(three), ErrorCode::InvalidLaw);
    std::istringstream text("0,1\nx,0.5\n");
    EXPECT_LAB_ERROR(io::read_law_table(text), ErrorCode::InvalidLaw);
}

TEST(Json, CdpFieldNames) {
    const auto j = io::to_json(cdp_report(SpherePoint(1.0, 0.5), SpherePoint::north()));
    EXPECT_TRUE(j.contains("recovery_fidelity"));
    EXPECT_TRUE(j.contains("record_erased"));
    EXPECT_TRUE(j.contains("longitude_lost_before_reversal"));
    EXPECT_TRUE(j["record_erased"].get<bool>());
}

TEST(Json, VerdictWitness) {
    const auto j = io::to_json(mhs_check(ProbabilityLaw::cos4(), 0));
    EXPECT_EQ(j["law"], "cos4");
    EXPECT_EQ(j["affine_dimension"], 8);
    EXPECT_FALSE(j["holds_at_quantum_dimension"].get<bool>());
    EXPECT_NEAR(j["witness"]["gap"].get<double>(), 0.25, 1e-12);
    EXPECT_EQ(j["witness"]["direction"]["theta_deg"], 0.0);

    const auto q = io::to_json(mhs_check(ProbabilityLaw::qm(), 0));
    EXPECT_TRUE(q["witness"].is_null());
}

TEST(Json, MissingGridCellsAreNull) {
    const auto j = io::to_json(cs_contour_grid(2));
    EXPECT_TRUE(j["cs"][0][1].is_null());
    EXPECT_EQ(j["cs"][1][1], 1.0);
}
