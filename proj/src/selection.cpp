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
#include "passage/selection.hpp"

#include "passage/error.hpp"
#include "passage/kernels.hpp"

#include <cmath>
#include <string>

namespace passage {

namespace {

void check_probability(double p, const char *name) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw LabError(ErrorCode::ProbabilityOutOfRange, std::string(name) + " = " + std::to_string(p));
    }
}

} // namespace

UnitSquarePoint::UnitSquarePoint(double ps, double po) : ps_(ps), po_(po) {
    check_probability(ps, "p_s");
    check_probability(po, "p_o");
}

bool UnitSquarePoint::is_degenerate_corner() const noexcept {
    return (ps_ == 1.0 && po_ == 0.0) || (ps_ == 0.0 && po_ == 1.0);
}

JointDistribution::JointDistribution(const std::array<double, 4> &probabilities) : p_(probabilities) {
    double total = 0.0;
    for (double p : p_) {
        check_probability(p, "joint entry");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw LabError(ErrorCode::ProbabilityOutOfRange, "joint distribution sums to " + std::to_string(total));
    }
}

double cs_probability(const UnitSquarePoint &point) {
    const double heads = point.ps() * point.po();
    const double tails = (1.0 - point.ps()) * (1.0 - point.po());
    const double concordant = heads + tails;
    if (concordant == 0.0) {
        throw LabError(ErrorCode::DegeneratePostSelection, "no concordant mass at a corner of the square");
    }
    return heads / concordant;
}

MeasuredBits classical_measure(bool system, bool memory) noexcept { return {system, memory != system}; }

JointDistribution joint_distribution(const UnitSquarePoint &point) {
    const double ps = point.ps();
    const double po = point.po();
    return JointDistribution({(1.0 - ps) * (1.0 - po), ps * (1.0 - po), (1.0 - ps) * po, ps * po});
}

JointDistribution postselect(const JointDistribution &joint) {
    const double tails = joint[Outcome::S0O0];
    const double heads = joint[Outcome::S1O1];
    const double concordant = tails + heads;
    if (concordant == 0.0) {
        throw LabError(ErrorCode::DegeneratePostSelection, "joint distribution has no concordant mass");
    }
    // Complement rather than divide twice so the pair sums to exactly 1.
    const double heads_post = heads / concordant;
    return JointDistribution({1.0 - heads_post, 0.0, 0.0, heads_post});
}

CSEstimate make_estimate(const SelectionTally &tally, Seed seed, std::size_t shards) {
    CSEstimate est;
    est.trials_total = tally.trials;
    est.count_00 = tally.count_00;
    est.count_11 = tally.count_11;
    est.trials_retained = tally.count_00 + tally.count_11;
    est.seed = seed;
    est.shards = shards;
    if (est.trials_retained == 0) {
        throw LabError(ErrorCode::NoRetainedTrials,
                       "all " + std::to_string(tally.trials) + " trials were discordant");
    }
    const auto retained = static_cast<double>(est.trials_retained);
    est.frequency_heads = static_cast<double>(est.count_11) / retained;
    est.standard_error = std::sqrt(est.frequency_heads * (1.0 - est.frequency_heads) / retained);
    return est;
}

CSEstimate simulate_correlated_selection(const UnitSquarePoint &point, std::uint64_t trials, Seed seed,
                                         std::size_t shards) {
    if (trials == 0) {
        throw LabError(ErrorCode::EmptyBatch, "trials must be at least 1");
    }
    if (shards == 0) {
        throw LabError(ErrorCode::InvalidArgument, "shard count must be at least 1");
    }
    const auto tally = kernels::selection_tally_parallel(point.ps(), point.po(), trials, seed, shards);
    return make_estimate(tally, seed, shards);
}

ContourGrid cs_contour_grid(std::size_t resolution) {
    if (resolution < 2) {
        throw LabError(ErrorCode::ResolutionTooSmall, "resolution must be at least 2, got " + std::to_string(resolution));
    }
    ContourGrid grid;
    grid.resolution = resolution;
    grid.coordinates.resize(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        grid.coordinates[i] = static_cast<double>(i) / static_cast<double>(resolution - 1);
    }
    grid.values = kernels::cs_grid_parallel(resolution);
    return grid;
}

} // namespace passage
