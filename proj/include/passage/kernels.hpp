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
 * Data-parallel inner loops. Each kernel has an OpenMP version and a serial
 * reference; both consume the same per-shard / per-row random streams, so for
 * identical arguments they return identical results bit for bit.
 */

#include "passage/law.hpp"
#include "passage/qubit.hpp"
#include "passage/rng.hpp"
#include "passage/selection.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace passage::kernels {

/// Trials assigned to `shard`: an even split with the remainder going to the
/// lowest shard indices.
std::uint64_t shard_trials(std::uint64_t trials, std::size_t shards, std::size_t shard) noexcept;

/// One shard of paired coin flips on stream derive_seed(seed, shard).
SelectionTally selection_shard(double ps, double po, std::uint64_t trials, Seed seed, std::size_t shard) noexcept;

SelectionTally selection_tally_serial(double ps, double po, std::uint64_t trials, Seed seed, std::size_t shards);
SelectionTally selection_tally_parallel(double ps, double po, std::uint64_t trials, Seed seed, std::size_t shards);

/// CS over the grid i/(resolution-1), row-major with rows indexed by p_o.
std::vector<std::optional<double>> cs_grid_serial(std::size_t resolution);
std::vector<std::optional<double>> cs_grid_parallel(std::size_t resolution);

/// rows = ensembles, columns = directions.
Eigen::MatrixXd response_matrix_serial(const ProbabilityLaw &law, std::span<const Ensemble> ensembles,
                                       std::span<const SpherePoint> directions);
Eigen::MatrixXd response_matrix_parallel(const ProbabilityLaw &law, std::span<const Ensemble> ensembles,
                                         std::span<const SpherePoint> directions);

/// Success counts of `trials` Bernoulli(p_k) draws for each k, on stream
/// derive_seed(seed, k).
std::vector<std::uint64_t> bernoulli_counts_serial(std::span<const double> probabilities, std::uint64_t trials,
                                                   Seed seed);
std::vector<std::uint64_t> bernoulli_counts_parallel(std::span<const double> probabilities, std::uint64_t trials,
                                                     Seed seed);

} // namespace passage::kernels
