// Copyright 2026 The qlga Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlga/commands.hpp"
#include "qlga/error.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNumerical = 4;

void apply_worker_count() {
    if (const char *env = std::getenv("QLGA_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            omp_set_num_threads(n);
        }
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Parallel quantum lattice gas optimization"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> max_qubits;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"simulate", "per-marker distribution of the accumulated quantity"},
        {"estimate", "amplitude estimation outcomes per marker"},
        {"minfind", "minimum finding over the configurations"},
        {"resources", "qubit and gate counts, complexity terms"},
        {"oracle", "classical references and gap analysis"},
    };
    for (const auto &[name, help] : commands) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "experiment file")->required();
        sub->add_option("--seed", seed, "override the experiment seed");
        sub->add_option("--out", out_path, "write output here instead of stdout");
        sub->add_option("--max-qubits", max_qubits, "statevector qubit cap");
    }
    CLI11_PARSE(app, argc, argv);
    apply_worker_count();

    try {
        auto config = qlga::load_config(config_path);
        if (seed) {
            config.seed = *seed;
        }
        if (max_qubits) {
            config.pipeline.max_qubits = *max_qubits;
        }
        const std::string name = app.get_subcommands().front()->get_name();
        std::string output;
        if (name == "simulate") {
            output = qlga::cmd_simulate(config);
        } else if (name == "estimate") {
            output = qlga::cmd_estimate(config);
        } else if (name == "minfind") {
            output = qlga::cmd_minfind(config);
        } else if (name == "resources") {
            output = qlga::cmd_resources(config);
        } else {
            output = qlga::cmd_oracle(config);
        }
        if (out_path.empty()) {
            std::cout << output;
        } else {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "error: cannot write " << out_path << '\n';
                return kExitValidation;
            }
            out << output;
        }
    } catch (const qlga::ValidationError &e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const qlga::CapacityError &e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const qlga::NumericalError &e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
