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
#include "passage/mhs.hpp"

#include "passage/error.hpp"
#include "passage/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace passage {

namespace {

constexpr int kManifoldStates = 20;
constexpr double kManifoldStep = 1e-5;
constexpr double kPoleMargin = 1e-3;
constexpr double kMaxGramCondition = 1e6;
constexpr double kResidualFactor = 5.0;

double angle_to(const Eigen::Vector3d &u, const Eigen::Vector3d &d) {
    return std::acos(std::clamp(u.dot(d), -1.0, 1.0));
}

} // namespace

double response_probability(const ProbabilityLaw &law, const Ensemble &ensemble, const SpherePoint &direction) {
    if (ensemble.size() == 0) {
        throw LabError(ErrorCode::EmptyEnsemble, "ensemble has no members");
    }
    double total = 0.0;
    for (const auto &m : ensemble.members()) {
        total += m.weight * law(great_circle_distance(m.state, direction));
    }
    return total;
}

ResponseVector response_vector(const ProbabilityLaw &law, const Ensemble &ensemble,
                               std::span<const SpherePoint> directions) {
    ResponseVector out{law.tag(), ensemble, {}};
    out.samples.reserve(directions.size());
    for (const auto &d : directions) {
        out.samples.emplace_back(d, response_probability(law, ensemble, d));
    }
    return out;
}

std::vector<SpherePoint> direction_grid(int n_theta, int n_phi) {
    if (n_theta < 2 || n_phi < 1) {
        throw LabError(ErrorCode::InvalidArgument, "direction grid needs n_theta >= 2 and n_phi >= 1");
    }
    std::vector<SpherePoint> grid;
    grid.reserve(2 + static_cast<std::size_t>(n_theta - 2) * static_cast<std::size_t>(n_phi));
    grid.push_back(SpherePoint::north());
    for (int i = 1; i < n_theta - 1; ++i) {
        const double theta = kPi * i / (n_theta - 1);
        for (int j = 0; j < n_phi; ++j) {
            grid.emplace_back(theta, 2.0 * kPi * j / n_phi);
        }
    }
    grid.push_back(SpherePoint::south());
    return grid;
}

std::vector<SpherePoint> default_direction_grid() { return direction_grid(37, 72); }

std::pair<Ensemble, Ensemble> equal_mean_pair() {
    Ensemble poles({{0.5, SpherePoint::north()}, {0.5, SpherePoint::south()}});
    Ensemble east_west({{0.5, SpherePoint(kPi / 2, kPi / 2)}, {0.5, SpherePoint(kPi / 2, -kPi / 2)}});
    return {std::move(poles), std::move(east_west)};
}

std::optional<EqualMeanWitness> equal_mean_witness(const ProbabilityLaw &law,
                                                   std::span<const SpherePoint> directions) {
    auto [first, second] = equal_mean_pair();
    std::optional<EqualMeanWitness> best;
    for (const auto &d : directions) {
        const double ra = response_probability(law, first, d);
        const double rb = response_probability(law, second, d);
        const double gap = std::abs(ra - rb);
        // Gaps equal up to rounding keep the earlier direction.
        if (!best || gap > best->gap + 1e-12) {
            best = EqualMeanWitness{first, second, d, ra, rb, gap};
        }
    }
    if (!best || best->gap < kWitnessThreshold) {
        return std::nullopt;
    }
    return best;
}

std::optional<EqualMeanWitness> equal_mean_witness(const ProbabilityLaw &law) {
    const auto grid = default_direction_grid();
    return equal_mean_witness(law, grid);
}

Ensemble random_ensemble(Rng &rng) {
    const int count = rng.uniform_int(1, 6);
    std::vector<Ensemble::Member> members;
    members.reserve(static_cast<std::size_t>(count));
    double total = 0.0;
    for (int i = 0; i < count; ++i) {
        // Normalized unit exponentials are flat-Dirichlet distributed.
        const double w = -std::log(rng.uniform_open_low());
        total += w;
        members.push_back({w, random_sphere_point(rng)});
    }
    for (auto &m : members) {
        m.weight /= total;
    }
    return Ensemble(std::move(members));
}

std::vector<SpherePoint> random_directions(int count, Rng &rng) {
    std::vector<SpherePoint> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        out.push_back(random_sphere_point(rng));
    }
    return out;
}

int affine_dimension(const Eigen::MatrixXd &rows, double tolerance, Eigen::VectorXd *singular_values) {
    if (rows.rows() == 0 || rows.cols() == 0) {
        if (singular_values) {
            singular_values->resize(0);
        }
        return 0;
    }
    const Eigen::RowVectorXd mean = rows.colwise().mean();
    const Eigen::MatrixXd centered = rows.rowwise() - mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
    const Eigen::VectorXd &s = svd.singularValues();
    if (singular_values) {
        *singular_values = s;
    }
    // Rounding in the mean leaves residue of order eps * |data| even for
    // identical rows; nothing at that scale counts as a direction.
    const double noise_floor = 64.0 * std::numeric_limits<double>::epsilon() *
                               static_cast<double>(std::max(rows.rows(), rows.cols())) *
                               std::max(1.0, rows.cwiseAbs().maxCoeff());
    const double largest = s.size() > 0 ? s(0) : 0.0;
    const double threshold = std::max(tolerance * largest, noise_floor);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > threshold) {
            ++rank;
        }
    }
    return rank;
}

AffineSpan affine_span(const ProbabilityLaw &law, int n_ensembles, int n_directions, Seed seed, double tolerance) {
    if (n_ensembles < kMinEnsembles || n_directions < kMinDirections) {
        throw LabError(ErrorCode::InsufficientSamples,
                       "need at least " + std::to_string(kMinEnsembles) + " ensembles and " +
                           std::to_string(kMinDirections) + " directions");
    }
    Rng ensemble_rng(derive_seed(seed, 0));
    Rng direction_rng(derive_seed(seed, 1));
    std::vector<Ensemble> ensembles;
    ensembles.reserve(static_cast<std::size_t>(n_ensembles));
    for (int i = 0; i < n_ensembles; ++i) {
        ensembles.push_back(random_ensemble(ensemble_rng));
    }
    AffineSpan span;
    span.directions = random_directions(n_directions, direction_rng);
    span.responses = kernels::response_matrix_parallel(law, ensembles, span.directions);
    span.dimension = affine_dimension(span.responses, tolerance, &span.singular_values);
    return span;
}

int affine_span_dimension(const ProbabilityLaw &law, int n_ensembles, int n_directions, Seed seed,
                          double tolerance) {
    return affine_span(law, n_ensembles, n_directions, seed, tolerance).dimension;
}

int response_jacobian_rank(const ProbabilityLaw &law, double theta, double phi,
                           std::span<const SpherePoint> directions, double step, double tolerance) {
    const auto k = static_cast<Eigen::Index>(directions.size());
    Eigen::MatrixXd jacobian(k, 2);
    const Eigen::Vector3d up_theta = unit_vector(theta + step, phi);
    const Eigen::Vector3d down_theta = unit_vector(theta - step, phi);
    const Eigen::Vector3d up_phi = unit_vector(theta, phi + step);
    const Eigen::Vector3d down_phi = unit_vector(theta, phi - step);
    for (Eigen::Index i = 0; i < k; ++i) {
        const Eigen::Vector3d d = directions[static_cast<std::size_t>(i)].unit_vector();
        jacobian(i, 0) = (law(angle_to(up_theta, d)) - law(angle_to(down_theta, d))) / (2.0 * step);
        jacobian(i, 1) = (law(angle_to(up_phi, d)) - law(angle_to(down_phi, d))) / (2.0 * step);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian);
    const Eigen::VectorXd &s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) {
        return 0;
    }
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > tolerance * s(0)) {
            ++rank;
        }
    }
    return rank;
}

int pure_manifold_dimension(const ProbabilityLaw &law, Seed seed) {
    Rng state_rng(derive_seed(seed, 0));
    Rng direction_rng(derive_seed(seed, 1));
    const auto directions = random_directions(kDefaultDirections, direction_rng);
    int best = 0;
    int evaluated = 0;
    while (evaluated < kManifoldStates) {
        const SpherePoint p = random_sphere_point(state_rng);
        // phi is a singular coordinate at the poles.
        if (p.theta() < kPoleMargin || p.theta() > kPi - kPoleMargin) {
            continue;
        }
        best = std::max(best, response_jacobian_rank(law, p.theta(), p.phi(), directions, kManifoldStep,
                                                     kDefaultRankTolerance));
        ++evaluated;
    }
    return best;
}

MHSVerdict mhs_check(const ProbabilityLaw &law, Seed seed) {
    MHSVerdict verdict;
    verdict.law = law.tag();
    verdict.law_name = law.name();
    verdict.affine_dimension =
        affine_span_dimension(law, kDefaultEnsembles, kDefaultDirections, seed, kDefaultRankTolerance);
    verdict.witness = equal_mean_witness(law);
    verdict.holds_at_quantum_dimension = verdict.affine_dimension <= 3 && !verdict.witness.has_value();
    return verdict;
}

TomographyFit tomography_fit(std::span<const TomographySample> samples) {
    if (samples.size() < 3) {
        throw LabError(ErrorCode::UnderdeterminedFit,
                       "need at least three directions, got " + std::to_string(samples.size()));
    }
    const auto k = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd design(k, 3);
    Eigen::VectorXd target(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto &s = samples[static_cast<std::size_t>(i)];
        if (!(s.frequency >= 0.0 && s.frequency <= 1.0)) {
            throw LabError(ErrorCode::ProbabilityOutOfRange, "frequency " + std::to_string(s.frequency));
        }
        if (s.trials == 0) {
            throw LabError(ErrorCode::EmptyBatch, "tomography sample with zero trials");
        }
        design.row(i) = s.direction.unit_vector().transpose();
        target(i) = 2.0 * s.frequency - 1.0;
    }

    const Eigen::Matrix3d gram = design.transpose() * design;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(gram);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo >= kMaxGramCondition) {
        throw LabError(ErrorCode::UnderdeterminedFit, "measurement directions do not span three dimensions");
    }
    const Eigen::Matrix3d gram_inv = gram.inverse();
    Eigen::Vector3d v = gram_inv * (design.transpose() * target);

    // Binomial variance of each frequency at the fitted probability; the 1/n
    // term keeps it positive when the fit sits on an outcome boundary.
    Eigen::VectorXd variance(k);
    double rss = 0.0;
    double expected = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        const double n = static_cast<double>(samples[static_cast<std::size_t>(i)].trials);
        const double p = std::clamp(0.5 * (1.0 + design.row(i).dot(v)), 0.0, 1.0);
        variance(i) = (p * (1.0 - p) + 1.0 / n) / n;
        const double r = samples[static_cast<std::size_t>(i)].frequency - 0.5 * (1.0 + design.row(i).dot(v));
        rss += r * r;
        const double leverage = design.row(i) * gram_inv * design.row(i).transpose();
        expected += std::max(0.0, 1.0 - leverage) * variance(i);
    }
    if (rss > kResidualFactor * expected + 1e-20) {
        throw LabError(ErrorCode::InconsistentFrequencies,
                       "residual " + std::to_string(rss) + " exceeds 5x expectation " + std::to_string(expected));
    }

    // Cov(2f - 1) = 4 diag(variance).
    const Eigen::MatrixXd weighted = design.transpose() * (4.0 * variance).asDiagonal() * design;
    const Eigen::Matrix3d cov = gram_inv * weighted * gram_inv;

    bool clipped = false;
    if (v.norm() > 1.0) {
        v /= v.norm();
        clipped = true;
    }
    return TomographyFit{BlochVector(v), cov.diagonal().cwiseSqrt(), rss, expected, clipped};
}

std::vector<TomographySample> simulate_frequencies(const BlochVector &state, std::span<const SpherePoint> directions,
                                                   std::uint64_t trials, Seed seed) {
    if (trials == 0) {
        throw LabError(ErrorCode::EmptyBatch, "trials must be at least 1");
    }
    std::vector<double> probabilities;
    probabilities.reserve(directions.size());
    for (const auto &d : directions) {
        probabilities.push_back(std::clamp(0.5 * (1.0 + state.vector().dot(d.unit_vector())), 0.0, 1.0));
    }
    const auto counts = kernels::bernoulli_counts_parallel(probabilities, trials, seed);
    std::vector<TomographySample> out;
    out.reserve(directions.size());
    for (std::size_t i = 0; i < directions.size(); ++i) {
        out.push_back({directions[i], static_cast<double>(counts[i]) / static_cast<double>(trials), trials});
    }
    return out;
}

} // namespace passage
