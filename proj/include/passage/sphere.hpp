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
 * Geometrization of the unit square onto the sphere: the square/sphere
 * transform, great-circle distance, and the cos^2(theta/2) probability law.
 */

#include "passage/rng.hpp"
#include "passage/selection.hpp"

#include <Eigen/Core>

#include <numbers>
#include <optional>
#include <vector>

namespace passage {

inline constexpr double kPi = std::numbers::pi;

constexpr double to_degrees(double radians) noexcept { return radians * (180.0 / kPi); }
constexpr double to_radians(double degrees) noexcept { return degrees * (kPi / 180.0); }

/// Point on the unit sphere by colatitude (0 at the north pole) and longitude.
class SpherePoint {
  public:
    /// Throws AngleOutOfRange unless theta is in [0, pi] and phi is finite.
    /// Longitude is normalized into (-pi, pi]; at the poles it is set to 0.
    SpherePoint(double theta, double phi);

    static SpherePoint north() { return {0.0, 0.0}; }
    static SpherePoint south() { return {kPi, 0.0}; }
    static SpherePoint from_degrees(double theta_deg, double phi_deg) {
        return {to_radians(theta_deg), to_radians(phi_deg)};
    }
    /// Direction of a nonzero vector.
    static SpherePoint from_vector(const Eigen::Vector3d &v);

    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] double phi() const noexcept { return phi_; }
    [[nodiscard]] bool is_pole() const noexcept { return theta_ == 0.0 || theta_ == kPi; }

    [[nodiscard]] Eigen::Vector3d unit_vector() const noexcept;
    [[nodiscard]] SpherePoint antipode() const { return {kPi - theta_, phi_ + kPi}; }

    friend bool operator==(const SpherePoint &, const SpherePoint &) = default;

  private:
    double theta_;
    double phi_;
};

/// Unit vector for arbitrary real (theta, phi); no range checks. Smooth
/// through the poles, which numerical differentiation relies on.
Eigen::Vector3d unit_vector(double theta, double phi) noexcept;

/// Maps any real angle into (-pi, pi].
double normalize_longitude(double phi) noexcept;

/// cos^2(theta/2). Throws AngleOutOfRange outside [0, pi].
double qm_probability(double theta);

/// 2 arccos(sqrt(p)). Throws ProbabilityOutOfRange outside [0, 1].
double qm_inverse(double p);

/// theta = qm_inverse(CS(ps, po)), phi = (ps - 1/2) * 2 pi.
SpherePoint square_to_sphere(const UnitSquarePoint &point);

/// Analytic inverse of square_to_sphere on the open colatitude range.
/// Throws NonInvertiblePole at the poles and DegenerateLongitude when the
/// longitude maps to ps in {0, 1}.
UnitSquarePoint sphere_to_square(const SpherePoint &point);

/// Central angle in [0, pi].
double great_circle_distance(const SpherePoint &a, const SpherePoint &b) noexcept;

/// Height of a point at arc angle theta from the top of the unit-diameter
/// circle centered at (0.5, 0.5).
double semicircle_height(double theta);

/// One grid cell of the square-to-sphere map; angles absent at degenerate corners.
struct SphereMapRow {
    double ps;
    double po;
    std::optional<double> theta_deg;
    std::optional<double> phi_deg;
    std::optional<double> cs;
};

/// square_to_sphere on the grid i/(resolution-1), rows ordered by p_o then p_s.
/// Throws ResolutionTooSmall for resolution < 2.
std::vector<SphereMapRow> sphere_map(std::size_t resolution);

/// Area-uniform point on the sphere.
SpherePoint random_sphere_point(Rng &rng);

} // namespace passage
