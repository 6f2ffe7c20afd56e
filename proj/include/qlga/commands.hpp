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

#pragma once

/**
 * @file
 * The five CLI subcommands as library functions returning their CSV text.
 * Floating-point values are printed with 12 significant digits.
 */

#include "qlga/config.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qlga {

/// marker,f_value,probability
std::string cmd_simulate(const RunConfig &config);
/// marker,y,phi_hat,probability,true_phi,within_bound
std::string cmd_estimate(const RunConfig &config);
/// run,round,tau,marker,y,iterations followed by "# key=value" summary lines.
std::string cmd_minfind(const RunConfig &config);
/// Human-readable report followed by metric,value rows.
std::string cmd_resources(const RunConfig &config);
/// exact phi table, classical enumeration per lattice and the gap report.
std::string cmd_oracle(const RunConfig &config);

/// Structural counts (no simulation) and the complexity-formula terms.
struct ResourceReport {
    std::vector<std::pair<std::string, double>> metrics;

    double value(std::string_view name) const;
    std::string text() const;
    std::string csv() const;
};

ResourceReport build_resource_report(const RunConfig &config);

/// Sum of (number of controls)^2 over ops: a stand-in for the quadratic cost
/// of decomposing multi-controlled gates.
double control_weight(const CircuitBlock &block);

std::string format_real(double v);

} // namespace qlga
