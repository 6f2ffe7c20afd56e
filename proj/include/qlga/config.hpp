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
 * Line-oriented experiment files:
 *
 *     # comment
 *     [experiment]      name, seed
 *     [lattice]         dims, shape, q, velocities, rest_weight, periodic
 *     [configuration]   occupancy, reflect, links   (repeat once per lattice)
 *     [markers]         encoding = compact | onehot
 *     [collision]       kind = identity | hpp | rotation | custom, theta, rows
 *     [qoi]             region, channels, weights, acc_steps
 *     [pipeline]        steps, mapping, alpha, e, lambda, budget_c,
 *                       repetitions, semantics
 *
 * Lists are whitespace separated. Sites are "g/c" or, in 2D, "x,y/c";
 * reflections are "g/c/p" (added in both directions) and raw links are the
 * same syntax added one way only. Velocities and custom matrix rows are
 * separated by ';'.
 */

#include "qlga/search.hpp"

#include <string>

namespace qlga {

struct RunConfig {
    std::string name = "experiment";
    std::uint64_t seed = 1;
    PipelineSpec pipeline;
    std::size_t repetitions = 1;
};

/// Throws ValidationError with a "line N:" prefix on the first problem.
RunConfig parse_config(const std::string &text);
RunConfig load_config(const std::string &path);

} // namespace qlga
