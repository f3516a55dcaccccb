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
 * Classical measurement dynamics and correlated selection over a pair of
 * independent biased coins (system and observer memory).
 */

#include "passage/rng.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace passage {

/// Joint pre-measurement description: heads-probabilities of the system coin
/// and of the observer coin.
class UnitSquarePoint {
  public:
    /// Throws ProbabilityOutOfRange unless both coordinates are finite and in [0, 1].
    UnitSquarePoint(double ps, double po);

    [[nodiscard]] double ps() const noexcept { return ps_; }
    [[nodiscard]] double po() const noexcept { return po_; }

    /// True at (1,0) and (0,1), where no trial survives post-selection.
    [[nodiscard]] bool is_degenerate_corner() const noexcept;

    friend bool operator==(const UnitSquarePoint &, const UnitSquarePoint &) = default;

  private:
    double ps_;
    double po_;
};

/// Outcome pairs in their fixed serialization order.
enum class Outcome : std::size_t { S0O0 = 0, S1O0 = 1, S0O1 = 2, S1O1 = 3 };

class JointDistribution {
  public:
    /// Throws ProbabilityOutOfRange unless entries lie in [0,1] and sum to 1 within 1e-12.
    explicit JointDistribution(const std::array<double, 4> &probabilities);

    [[nodiscard]] double operator[](Outcome o) const noexcept { return p_[static_cast<std::size_t>(o)]; }
    [[nodiscard]] const std::array<double, 4> &values() const noexcept { return p_; }

  private:
    std::array<double, 4> p_;
};

struct MeasuredBits {
    bool system;
    bool memory;
    friend bool operator==(const MeasuredBits &, const MeasuredBits &) = default;
};

/// Raw tallies of one batch of paired coin flips; count_<system><observer>.
struct SelectionTally {
    std::uint64_t trials = 0;
    std::uint64_t count_00 = 0;
    std::uint64_t count_10 = 0;
    std::uint64_t count_01 = 0;
    std::uint64_t count_11 = 0;

    SelectionTally &operator+=(const SelectionTally &o) noexcept {
        trials += o.trials;
        count_00 += o.count_00;
        count_10 += o.count_10;
        count_01 += o.count_01;
        count_11 += o.count_11;
        return *this;
    }
    friend bool operator==(const SelectionTally &, const SelectionTally &) = default;
};

struct CSEstimate {
    std::uint64_t trials_total = 0;
    std::uint64_t trials_retained = 0;
    std::uint64_t count_00 = 0;
    std::uint64_t count_11 = 0;
    double frequency_heads = 0.0;
    double standard_error = 0.0;
    Seed seed = 0;
    std::size_t shards = 0;

    friend bool operator==(const CSEstimate &, const CSEstimate &) = default;
};

/// CS grid over the closed unit square; corners (1,0) and (0,1) are missing.
struct ContourGrid {
    std::size_t resolution = 0;
    std::vector<double> coordinates;             // shared by both axes
    std::vector<std::optional<double>> values;   // row-major, row = p_o index, column = p_s index

    [[nodiscard]] const std::optional<double> &at(std::size_t po_index, std::size_t ps_index) const {
        return values[po_index * resolution + ps_index];
    }
};

inline constexpr std::size_t kDefaultShards = 64;

/// Probability that both coins show heads given that they agree.
/// Throws DegeneratePostSelection at the corners (1,0) and (0,1).
double cs_probability(const UnitSquarePoint &point);

/// Classical copy dynamics: the memory bit flips iff the system bit is 1.
MeasuredBits classical_measure(bool system, bool memory) noexcept;

JointDistribution joint_distribution(const UnitSquarePoint &point);

/// Zeroes the discordant outcomes and renormalizes the concordant ones.
JointDistribution postselect(const JointDistribution &joint);

/// Flips both coins `trials` times and keeps concordant trials. Trials are
/// split across `shards` independent streams derived from `seed`; the result
/// depends only on (point, trials, seed, shards), not on the thread count.
CSEstimate simulate_correlated_selection(const UnitSquarePoint &point, std::uint64_t trials, Seed seed,
                                         std::size_t shards = kDefaultShards);

/// Builds the estimate from merged tallies; throws NoRetainedTrials if nothing survived.
CSEstimate make_estimate(const SelectionTally &tally, Seed seed, std::size_t shards);

/// Evaluates CS on coordinates i/(resolution-1) along both axes.
ContourGrid cs_contour_grid(std::size_t resolution);

} // namespace passage
