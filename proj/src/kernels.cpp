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
#include "passage/kernels.hpp"

#include "passage/mhs.hpp"

#include <cstddef>

namespace passage::kernels {

std::uint64_t shard_trials(std::uint64_t trials, std::size_t shards, std::size_t shard) noexcept {
    const std::uint64_t base = trials / shards;
    const std::uint64_t extra = trials % shards;
    return base + (shard < extra ? 1 : 0);
}

SelectionTally selection_shard(double ps, double po, std::uint64_t trials, Seed seed, std::size_t shard) noexcept {
    Rng rng(derive_seed(seed, shard));
    std::uint64_t counts[4] = {0, 0, 0, 0}; // index = 2 * observer + system
    for (std::uint64_t t = 0; t < trials; ++t) {
        const bool system = rng.bernoulli(ps);
        const bool observer = rng.bernoulli(po);
        ++counts[2 * static_cast<int>(observer) + static_cast<int>(system)];
    }
    SelectionTally tally;
    tally.trials = trials;
    tally.count_00 = counts[0];
    tally.count_10 = counts[1];
    tally.count_01 = counts[2];
    tally.count_11 = counts[3];
    return tally;
}

SelectionTally selection_tally_serial(double ps, double po, std::uint64_t trials, Seed seed, std::size_t shards) {
    SelectionTally total;
    for (std::size_t s = 0; s < shards; ++s) {
        total += selection_shard(ps, po, shard_trials(trials, shards, s), seed, s);
    }
    return total;
}

SelectionTally selection_tally_parallel(double ps, double po, std::uint64_t trials, Seed seed, std::size_t shards) {
    std::vector<SelectionTally> partial(shards);
    const auto n = static_cast<std::ptrdiff_t>(shards);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
        const auto shard = static_cast<std::size_t>(s);
        partial[shard] = selection_shard(ps, po, shard_trials(trials, shards, shard), seed, shard);
    }
    SelectionTally total;
    for (const auto &p : partial) {
        total += p;
    }
    return total;
}

namespace {

std::optional<double> cs_cell(std::size_t resolution, std::size_t po_index, std::size_t ps_index) {
    const double denom = static_cast<double>(resolution - 1);
    const double ps = static_cast<double>(ps_index) / denom;
    const double po = static_cast<double>(po_index) / denom;
    const double heads = ps * po;
    const double concordant = heads + (1.0 - ps) * (1.0 - po);
    if (concordant == 0.0) {
        return std::nullopt;
    }
    return heads / concordant;
}

} // namespace

std::vector<std::optional<double>> cs_grid_serial(std::size_t resolution) {
    std::vector<std::optional<double>> values(resolution * resolution);
    for (std::size_t r = 0; r < resolution; ++r) {
        for (std::size_t c = 0; c < resolution; ++c) {
            values[r * resolution + c] = cs_cell(resolution, r, c);
        }
    }
    return values;
}

std::vector<std::optional<double>> cs_grid_parallel(std::size_t resolution) {
    std::vector<std::optional<double>> values(resolution * resolution);
    const auto n = static_cast<std::ptrdiff_t>(resolution);
#pragma omp parallel for
    for (std::ptrdiff_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < resolution; ++c) {
            const auto row = static_cast<std::size_t>(r);
            values[row * resolution + c] = cs_cell(resolution, row, c);
        }
    }
    return values;
}

Eigen::MatrixXd response_matrix_serial(const ProbabilityLaw &law, std::span<const Ensemble> ensembles,
                                       std::span<const SpherePoint> directions) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(ensembles.size()), static_cast<Eigen::Index>(directions.size()));
    for (std::size_t i = 0; i < ensembles.size(); ++i) {
        for (std::size_t k = 0; k < directions.size(); ++k) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                response_probability(law, ensembles[i], directions[k]);
        }
    }
    return out;
}

Eigen::MatrixXd response_matrix_parallel(const ProbabilityLaw &law, std::span<const Ensemble> ensembles,
                                         std::span<const SpherePoint> directions) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(ensembles.size()), static_cast<Eigen::Index>(directions.size()));
    const auto n = static_cast<std::ptrdiff_t>(ensembles.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < directions.size(); ++k) {
            out(i, static_cast<Eigen::Index>(k)) =
                response_probability(law, ensembles[static_cast<std::size_t>(i)], directions[k]);
        }
    }
    return out;
}

namespace {

std::uint64_t bernoulli_count(double p, std::uint64_t trials, Seed seed, std::size_t index) noexcept {
    Rng rng(derive_seed(seed, index));
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        hits += rng.bernoulli(p) ? 1 : 0;
    }
    return hits;
}

} // namespace

std::vector<std::uint64_t> bernoulli_counts_serial(std::span<const double> probabilities, std::uint64_t trials,
                                                   Seed seed) {
    std::vector<std::uint64_t> counts(probabilities.size());
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        counts[k] = bernoulli_count(probabilities[k], trials, seed, k);
    }
    return counts;
}

std::vector<std::uint64_t> bernoulli_counts_parallel(std::span<const double> probabilities, std::uint64_t trials,
                                                     Seed seed) {
    std::vector<std::uint64_t> counts(probabilities.size());
    const auto n = static_cast<std::ptrdiff_t>(probabilities.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        counts[idx] = bernoulli_count(probabilities[idx], trials, seed, idx);
    }
    return counts;
}

} // namespace passage::kernels
