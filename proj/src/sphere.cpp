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
#include "passage/sphere.hpp"

#include "passage/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace passage {

namespace {

void check_angle(double theta) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw LabError(ErrorCode::AngleOutOfRange, "colatitude " + std::to_string(theta) + " outside [0, pi]");
    }
}

} // namespace

double normalize_longitude(double phi) noexcept {
    double r = std::remainder(phi, 2.0 * kPi);
    if (r <= -kPi) {
        r += 2.0 * kPi;
    }
    return r;
}

SpherePoint::SpherePoint(double theta, double phi) : theta_(theta), phi_(0.0) {
    check_angle(theta);
    if (!std::isfinite(phi)) {
        throw LabError(ErrorCode::AngleOutOfRange, "longitude is not finite");
    }
    if (!is_pole()) {
        phi_ = normalize_longitude(phi);
    }
}

SpherePoint SpherePoint::from_vector(const Eigen::Vector3d &v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw LabError(ErrorCode::InvalidArgument, "direction vector must be nonzero and finite");
    }
    const double z = std::clamp(v.z() / n, -1.0, 1.0);
    return {std::acos(z), std::atan2(v.y(), v.x())};
}

Eigen::Vector3d unit_vector(double theta, double phi) noexcept {
    const double s = std::sin(theta);
    return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

Eigen::Vector3d SpherePoint::unit_vector() const noexcept { return passage::unit_vector(theta_, phi_); }

double qm_probability(double theta) {
    check_angle(theta);
    const double c = std::cos(theta / 2.0);
    return c * c;
}

double qm_inverse(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw LabError(ErrorCode::ProbabilityOutOfRange, "probability " + std::to_string(p) + " outside [0, 1]");
    }
    return 2.0 * std::acos(std::sqrt(p));
}

SpherePoint square_to_sphere(const UnitSquarePoint &point) {
    const double theta = qm_inverse(cs_probability(point));
    const double phi = (point.ps() - 0.5) * 2.0 * kPi;
    return {theta, phi};
}

UnitSquarePoint sphere_to_square(const SpherePoint &point) {
    if (point.is_pole()) {
        throw LabError(ErrorCode::NonInvertiblePole, "every longitude of a pole maps to the same latitude");
    }
    const double ps = point.phi() / (2.0 * kPi) + 0.5;
    if (ps <= 0.0 || ps >= 1.0) {
        throw LabError(ErrorCode::DegenerateLongitude, "longitude maps to p_s = " + std::to_string(ps));
    }
    const double c = qm_probability(point.theta());
    const double po = c * (1.0 - ps) / (ps * (1.0 - c) + c * (1.0 - ps));
    return {ps, std::clamp(po, 0.0, 1.0)};
}

double great_circle_distance(const SpherePoint &a, const SpherePoint &b) noexcept {
    const double cosine = std::clamp(a.unit_vector().dot(b.unit_vector()), -1.0, 1.0);
    return std::acos(cosine);
}

double semicircle_height(double theta) {
    check_angle(theta);
    return 0.5 + 0.5 * std::cos(theta);
}

std::vector<SphereMapRow> sphere_map(std::size_t resolution) {
    const ContourGrid grid = cs_contour_grid(resolution);
    std::vector<SphereMapRow> rows;
    rows.reserve(resolution * resolution);
    for (std::size_t r = 0; r < resolution; ++r) {
        for (std::size_t c = 0; c < resolution; ++c) {
            SphereMapRow row{grid.coordinates[c], grid.coordinates[r], std::nullopt, std::nullopt, std::nullopt};
            if (grid.at(r, c).has_value()) {
                const SpherePoint p = square_to_sphere(UnitSquarePoint(row.ps, row.po));
                row.theta_deg = to_degrees(p.theta());
                row.phi_deg = to_degrees(p.phi());
                row.cs = cs_probability(UnitSquarePoint(row.ps, row.po));
            }
            rows.push_back(row);
        }
    }
    return rows;
}

SpherePoint random_sphere_point(Rng &rng) {
    const double z = 2.0 * rng.uniform() - 1.0;
    const double phi = (2.0 * rng.uniform() - 1.0) * kPi;
    return {std::acos(z), phi};
}

} // namespace passage
