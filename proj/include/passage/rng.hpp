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

#include <cstdint>
#include <random>

namespace passage {

using Seed = std::uint64_t;

/// SplitMix64 finalizer; used to decorrelate derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of stream `index` split off from `seed`. Pure function of both
/// arguments, so shard streams do not depend on scheduling.
constexpr Seed derive_seed(Seed seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Seeded 64-bit generator with a portable uniform-double draw.
///
/// std::uniform_real_distribution is implementation defined, so draws are
/// taken directly from the top 53 bits of the engine output.
class Rng {
  public:
    explicit Rng(Seed seed) : seed_(seed), engine_(seed) {}

    /// Independent child stream keyed on the construction seed.
    [[nodiscard]] Rng split(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

    [[nodiscard]] Seed seed() const noexcept { return seed_; }

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_low() noexcept { return 1.0 - uniform(); }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Uniform integer on [lo, hi].
    int uniform_int(int lo, int hi) noexcept {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    std::uint64_t next() noexcept { return engine_(); }

  private:
    Seed seed_;
    std::mt19937_64 engine_;
};

} // namespace passage
