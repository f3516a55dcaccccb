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
 * "Mixtures have state" harness.
 *
 * A probability law passes when every ensemble's response to every
 * measurement direction factors through a three-parameter statistic (the
 * Bloch vector). The harness probes this two ways: the affine dimension of
 * many random ensembles' response vectors, and an explicit search for two
 * ensembles with equal mean Bloch vectors that some direction tells apart.
 */

#include "passage/law.hpp"
#include "passage/qubit.hpp"
#include "passage/rng.hpp"
#include "passage/sphere.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace passage {

struct ResponseVector {
    LawTag law;
    Ensemble ensemble;
    std::vector<std::pair<SpherePoint, double>> samples;
};

struct EqualMeanWitness {
    Ensemble first;
    Ensemble second;
    SpherePoint direction;
    double response_first;
    double response_second;
    double gap;
};

struct MHSVerdict {
    LawTag law;
    std::string law_name;
    int affine_dimension;
    bool holds_at_quantum_dimension;
    std::optional<EqualMeanWitness> witness;
};

struct AffineSpan {
    int dimension;
    Eigen::VectorXd singular_values;
    Eigen::MatrixXd responses; // rows = ensembles in sampling order
    std::vector<SpherePoint> directions;
};

struct TomographySample {
    SpherePoint direction;
    double frequency;
    std::uint64_t trials;
};

struct TomographyFit {
    BlochVector bloch;
    Eigen::Vector3d standard_error; // per component, from binomial noise
    double residual_sum_squares;
    double expected_sum_squares;
    bool clipped;

    [[nodiscard]] double combined_standard_error() const { return standard_error.norm(); }
};

inline constexpr int kMinEnsembles = 10;
inline constexpr int kMinDirections = 20;
inline constexpr int kDefaultEnsembles = 50;
inline constexpr int kDefaultDirections = 100;
inline constexpr double kDefaultRankTolerance = 1e-6;
inline constexpr double kWitnessThreshold = 1e-9;

/// sum_i w_i law(distance(state_i, direction)). Throws EmptyEnsemble.
double response_probability(const ProbabilityLaw &law, const Ensemble &ensemble, const SpherePoint &direction);

ResponseVector response_vector(const ProbabilityLaw &law, const Ensemble &ensemble,
                               std::span<const SpherePoint> directions);

/// Latitude/longitude grid, north pole first, then rings of n_phi points,
/// then the south pole. Size is 2 + (n_theta - 2) * n_phi.
std::vector<SpherePoint> direction_grid(int n_theta, int n_phi);
std::vector<SpherePoint> default_direction_grid();

/// The pair {1/2 north, 1/2 south} and {1/2 east, 1/2 west}; both have zero mean.
std::pair<Ensemble, Ensemble> equal_mean_pair();

/// Largest response gap between the equal-mean pair over `directions`, or
/// nothing when it is below 1e-9. Ties keep the earliest direction.
std::optional<EqualMeanWitness> equal_mean_witness(const ProbabilityLaw &law,
                                                   std::span<const SpherePoint> directions);
std::optional<EqualMeanWitness> equal_mean_witness(const ProbabilityLaw &law);

/// Member count uniform on {1..6}, area-uniform states, flat-Dirichlet weights.
Ensemble random_ensemble(Rng &rng);
std::vector<SpherePoint> random_directions(int count, Rng &rng);

/// Number of singular values of the row-mean-centered matrix above
/// tolerance * (largest singular value). Zero for a matrix of identical rows.
int affine_dimension(const Eigen::MatrixXd &rows, double tolerance, Eigen::VectorXd *singular_values = nullptr);

/// Throws InsufficientSamples unless n_ensembles >= 10 and n_directions >= 20.
AffineSpan affine_span(const ProbabilityLaw &law, int n_ensembles, int n_directions, Seed seed, double tolerance);
int affine_span_dimension(const ProbabilityLaw &law, int n_ensembles, int n_directions, Seed seed,
                          double tolerance);

/// Numerical rank of the central-difference Jacobian of
/// (theta, phi) -> [law(distance(state, d_k))]_k at one state.
int response_jacobian_rank(const ProbabilityLaw &law, double theta, double phi,
                           std::span<const SpherePoint> directions, double step = 1e-5,
                           double tolerance = 1e-6);

/// Maximum Jacobian rank over 20 random non-polar pure states and 100 random directions.
int pure_manifold_dimension(const ProbabilityLaw &law, Seed seed);

MHSVerdict mhs_check(const ProbabilityLaw &law, Seed seed);

/// Least-squares Bloch vector from frequency ~ (1 + v . direction) / 2.
///
/// Throws UnderdeterminedFit when fewer than three directions are given or
/// their Gram matrix has condition number >= 1e6, and InconsistentFrequencies
/// when the residual sum of squares exceeds five times its binomial
/// expectation. A fit outside the unit ball is projected back onto it.
TomographyFit tomography_fit(std::span<const TomographySample> samples);

/// Binomial sampling of QM outcome frequencies for a mixed state.
std::vector<TomographySample> simulate_frequencies(const BlochVector &state, std::span<const SpherePoint> directions,
                                                   std::uint64_t trials, Seed seed);

} // namespace passage
