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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace passage::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitUsage = 2,
    kExitIo = 3,
};

enum class Format { Csv, Json };

struct RunConfig {
    std::string subcommand;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1'000'000;
    std::size_t resolution = 101;
    std::string law = "qm";
    std::string output; // empty = standard output
    std::optional<Format> format;
};

/// Values normally read from the process environment.
struct Environment {
    std::optional<std::string> seed; // PASSAGE_LAB_SEED

    static Environment from_process();
};

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
        const Environment &env = Environment::from_process());

} // namespace passage::cli
