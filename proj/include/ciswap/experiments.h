// Copyright 2026 The ciswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CISWAP_EXPERIMENTS_H
#define CISWAP_EXPERIMENTS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ciswap {

struct ExperimentContext {
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::optional<int> samples;  // overrides the experiment's sample count
    bool quiet = false;
};

struct ExperimentInfo {
    std::string name;
    std::string description;
};

// Stable-ordered registry; every catalogued result has one entry.
const std::vector<ExperimentInfo>& list_experiments();

// Runs one experiment, writing <out_dir>/<name>.csv and
// <out_dir>/<name>_summary.json. Unknown names throw std::invalid_argument;
// numerical failures propagate as NumericalError.
void run_experiment(const std::string& name, const ExperimentContext& ctx);

}  // namespace ciswap

#endif
