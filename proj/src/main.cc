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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ciswap/core.h"
#include "ciswap/experiments.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

int list_and_exit() {
    for (const ciswap::ExperimentInfo& info : ciswap::list_experiments()) {
        std::cout << info.name << "  -  " << info.description << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ciswap: controlled-iSWAP gate family simulations"};
    std::string experiment;
    std::string config_path;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int samples = -1;
    bool quiet = false;
    bool list = false;

    app.add_option("experiment", experiment, "registered experiment name");
    app.add_option("--config", config_path, "JSON file with parameter overrides");
    app.add_option("--seed", seed, "RNG seed (default 1)");
    app.add_option("--out", out_dir, "output directory (default .)");
    app.add_option("--samples", samples, "override the experiment's sample count");
    app.add_flag("--quiet", quiet, "suppress status output");
    app.add_flag("--list", list, "list registered experiments and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    if (list) {
        return list_and_exit();
    }
    if (experiment.empty()) {
        std::cerr << "error: missing experiment name (try --list)\n";
        return kExitUsage;
    }

    ciswap::ExperimentContext ctx;
    ctx.seed = seed;
    ctx.out_dir = out_dir;
    ctx.quiet = quiet;
    if (samples >= 0) {
        ctx.samples = samples;
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config file: " << config_path << "\n";
            return kExitUsage;
        }
        try {
            ctx.config = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            std::cerr << "error: bad config JSON: " << e.what() << "\n";
            return kExitUsage;
        }
    }

    try {
        ciswap::run_experiment(experiment, ctx);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ciswap::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kExitNumerical;
    }

    if (!quiet) {
        std::cout << "wrote " << out_dir << "/" << experiment << ".csv and "
                  << out_dir << "/" << experiment << "_summary.json\n";
    }
    return 0;
}
