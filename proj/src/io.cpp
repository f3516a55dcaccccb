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

#include "passage/error.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace passage::io {

using nlohmann::ordered_json;

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string format_number(const std::optional<double> &value) {
    return value ? format_number(*value) : std::string("nan");
}

namespace {

ordered_json optional_json(const std::optional<double> &v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

// Parses a whole field as a double, locale independent.
std::optional<double> parse_number(std::string_view field) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
        field.remove_prefix(1);
    }
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
        field.remove_suffix(1);
    }
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size() || field.empty()) {
        return std::nullopt;
    }
    return v;
}

} // namespace

void write_contour_csv(std::ostream &out, const ContourGrid &grid) {
    out << "p_o\\p_s";
    for (double c : grid.coordinates) {
        out << ',' << format_number(c);
    }
    out << '\n';
    for (std::size_t r = 0; r < grid.resolution; ++r) {
        out << format_number(grid.coordinates[r]);
        for (std::size_t c = 0; c < grid.resolution; ++c) {
            out << ',' << format_number(grid.at(r, c));
        }
        out << '\n';
    }
}

void write_sphere_map_csv(std::ostream &out, const std::vector<SphereMapRow> &rows) {
    out << "p_s,p_o,theta_deg,phi_deg,cs\n";
    for (const auto &row : rows) {
        out << format_number(row.ps) << ',' << format_number(row.po) << ',' << format_number(row.theta_deg) << ','
            << format_number(row.phi_deg) << ',' << format_number(row.cs) << '\n';
    }
}

void write_response_matrix_csv(std::ostream &out, const Eigen::MatrixXd &responses) {
    out << "ensemble";
    for (Eigen::Index k = 0; k < responses.cols(); ++k) {
        out << ",d" << k;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < responses.rows(); ++i) {
        out << i;
        for (Eigen::Index k = 0; k < responses.cols(); ++k) {
            out << ',' << format_number(responses(i, k));
        }
        out << '\n';
    }
}

std::vector<std::pair<double, double>> read_law_table(std::istream &in) {
    std::vector<std::pair<double, double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw LabError(ErrorCode::InvalidLaw, "line " + std::to_string(line_no) + ": expected two columns");
        }
        const auto angle = parse_number(std::string_view(line).substr(0, comma));
        const auto prob = parse_number(std::string_view(line).substr(comma + 1));
        if (!angle || !prob) {
            if (rows.empty() && line_no == 1) {
                continue; // header
            }
            throw LabError(ErrorCode::InvalidLaw, "line " + std::to_string(line_no) + ": not numeric");
        }
        rows.emplace_back(*angle, *prob);
    }
    return rows;
}

ordered_json sphere_point_json(const SpherePoint &p) {
    return ordered_json{{"theta_deg", to_degrees(p.theta())},
                        {"phi_deg", to_degrees(p.phi())},
                        {"theta_rad", p.theta()},
                        {"phi_rad", p.phi()}};
}

ordered_json to_json(const ContourGrid &grid) {
    ordered_json values = ordered_json::array();
    for (std::size_t r = 0; r < grid.resolution; ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < grid.resolution; ++c) {
            row.push_back(optional_json(grid.at(r, c)));
        }
        values.push_back(std::move(row));
    }
    return ordered_json{{"resolution", grid.resolution}, {"coordinates", grid.coordinates}, {"cs", std::move(values)}};
}

ordered_json to_json(const std::vector<SphereMapRow> &rows) {
    ordered_json out = ordered_json::array();
    for (const auto &row : rows) {
        const auto rad = [](const std::optional<double> &deg) {
            return deg ? ordered_json(to_radians(*deg)) : ordered_json(nullptr);
        };
        out.push_back(ordered_json{{"p_s", row.ps},
                                   {"p_o", row.po},
                                   {"theta_deg", optional_json(row.theta_deg)},
                                   {"phi_deg", optional_json(row.phi_deg)},
                                   {"theta_rad", rad(row.theta_deg)},
                                   {"phi_rad", rad(row.phi_deg)},
                                   {"cs", optional_json(row.cs)}});
    }
    return out;
}

ordered_json to_json(const CSEstimate &e) {
    return ordered_json{{"trials_total", e.trials_total},
                        {"trials_retained", e.trials_retained},
                        {"count_00", e.count_00},
                        {"count_11", e.count_11},
                        {"frequency_heads", e.frequency_heads},
                        {"standard_error", e.standard_error},
                        {"seed", e.seed},
                        {"shards", e.shards}};
}

ordered_json to_json(const CDPReport &r) {
    return ordered_json{{"recovery_fidelity", r.recovery_fidelity},
                        {"record_erased", r.record_erased},
                        {"longitude_lost_before_reversal", r.longitude_lost_before_reversal},
                        {"axis_coherence", r.axis_coherence},
                        {"entanglement", r.entanglement}};
}

namespace {

ordered_json ensemble_json(const Ensemble &e) {
    ordered_json out = ordered_json::array();
    for (const auto &m : e.members()) {
        ordered_json member = sphere_point_json(m.state);
        member["weight"] = m.weight;
        out.push_back(std::move(member));
    }
    return out;
}

} // namespace

ordered_json to_json(const EqualMeanWitness &w) {
    return ordered_json{{"direction", sphere_point_json(w.direction)},
                        {"gap", w.gap},
                        {"response_first", w.response_first},
                        {"response_second", w.response_second},
                        {"first", ensemble_json(w.first)},
                        {"second", ensemble_json(w.second)}};
}

ordered_json to_json(const MHSVerdict &v) {
    return ordered_json{{"law", v.law_name},
                        {"law_tag", std::string(to_string(v.law))},
                        {"affine_dimension", v.affine_dimension},
                        {"holds_at_quantum_dimension", v.holds_at_quantum_dimension},
                        {"witness", v.witness ? to_json(*v.witness) : ordered_json(nullptr)}};
}

} // namespace passage::io
