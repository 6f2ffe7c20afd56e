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
 * Classical references for the quantum pipeline: exact per-marker phi from
 * the statevector, brute-force lattice gas enumeration, gap analysis and
 * repetition with majority voting.
 */

#include "qlga/search.hpp"

#include <map>

namespace qlga {

/// phi_j = P(C = 1 | M = j) after marker preparation and A.
std::vector<double> exact_expectation(const PipelineSpec &pipeline);

/// Branch-weighted distribution of f for one lattice. Collision outcomes
/// branch with Born weights, streaming and reflection are applied
/// classically. Throws ValidationError above 20 occupancy bits.
std::map<std::uint64_t, double> classical_lga_enumerate(const LatticeSpec &spec,
                                                        const CollisionModel &collision,
                                                        std::size_t steps,
                                                        const QoISpec &qoi);

struct GapReport {
    std::vector<double> phi;
    std::size_t optimum = 0;
    double delta = 0.0;
    bool degenerate = false;
    /// Nearest QAE grid outcome (folded) per marker.
    std::vector<std::uint64_t> grid_outcomes;
    /// The optimum's grid outcome lies strictly below every other marker's.
    bool resolvable = false;
    double error_bound = 0.0;
    /// qae_error_bound(phi_opt, 2^e) > delta / 2.
    bool bound_exceeds_half_gap = false;
};

GapReport compute_gap(std::span<const double> phi, std::size_t e);

/// (N + 1) / (t + 1): expected draws without replacement until a marked item.
double classical_query_baseline(std::size_t n, std::size_t t);

struct RepeatedMinFind {
    std::size_t winner = 0;
    std::vector<std::size_t> votes;
    /// Median best estimate over the runs each marker won; NaN if it never won.
    std::vector<double> medians;
    bool degenerate = false;
    std::vector<MinFindResult> runs;
};

/// k independent runs (seeds drawn from `rng` up front), plurality vote,
/// ties broken by lower median then lower index. Throws ValidationError for
/// even or zero k.
RepeatedMinFind repeated_median_minfind(const SearchProblem &problem,
                                        const MinFindParams &params, std::size_t k,
                                        Rng &rng);
RepeatedMinFind repeated_median_minfind(const PipelineSpec &pipeline, std::size_t k,
                                        Rng &rng);

} // namespace qlga
