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

/**
 * @file
 * CSV and JSON encodings of lab results. Numbers are written with
 * std::to_chars (shortest round-trip form), so output is locale independent
 * and byte-stable. Missing CSV cells are written as `nan`; missing JSON
 * values are null.
 */

#include "passage/mhs.hpp"
#include "passage/qubit.hpp"
#include "passage/selection.hpp"
#include "passage/sphere.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace passage::io {

std::string format_number(double value);
std::string format_number(const std::optional<double> &value);

/// Header row `p_o\p_s,<p_s values>`, then one row per p_o value.
void write_contour_csv(std::ostream &out, const ContourGrid &grid);

/// Columns p_s,p_o,theta_deg,phi_deg,cs.
void write_sphere_map_csv(std::ostream &out, const std::vector<SphereMapRow> &rows);

/// Header `ensemble,d0,d1,...`; one row per ensemble.
void write_response_matrix_csv(std::ostream &out, const Eigen::MatrixXd &responses);

/// Two columns: angle in degrees, probability. A non-numeric first line is
/// treated as a header. Throws InvalidLaw on malformed rows.
std::vector<std::pair<double, double>> read_law_table(std::istream &in);

nlohmann::ordered_json sphere_point_json(const SpherePoint &p);
nlohmann::ordered_json to_json(const ContourGrid &grid);
nlohmann::ordered_json to_json(const std::vector<SphereMapRow> &rows);
nlohmann::ordered_json to_json(const CSEstimate &estimate);
nlohmann::ordered_json to_json(const CDPReport &report);
nlohmann::ordered_json to_json(const EqualMeanWitness &witness);
nlohmann::ordered_json to_json(const MHSVerdict &verdict);

} // namespace passage::io
