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
 * Grover iterator, canonical amplitude estimation on the coin qubit and
 * Durr-Hoyer minimum finding over the joint (M, E) register.
 */

#include "qlga/accumulate.hpp"
#include "qlga/mapping.hpp"

#include <optional>
#include <vector>

namespace qlga {

struct MinFindParams {
    double lambda = 1.2;
    /// Budget is ceil(budget_c * sqrt(N)) preparation rounds.
    double budget_c = 3.0;
};

struct PipelineSpec {
    ConfigurationSet configs;
    CollisionModel collision;
    std::size_t steps = 1;
    QoISpec qoi;
    MappingSpec mapping;
    std::size_t estimation_bits = 3;
    MinFindParams minfind;
    SemanticsMode semantics = SemanticsMode::Shared;
    std::size_t max_qubits = kDefaultMaxQubits;

    void validate() const;
    RegisterLayout layout() const;
    std::uint64_t f_max() const { return qoi.f_max(configs.discretization()); }
};

/// Predicted Grover amplitudes for t marked items out of N.
struct GroverDiagnostics {
    std::size_t t = 0;
    std::size_t n = 0;
    double theta = 0.0;

    static GroverDiagnostics from_counts(std::size_t t, std::size_t n);
    /// Amplitude of each marked item after j iterations.
    double good_amplitude(std::size_t j) const;
    double bad_amplitude(std::size_t j) const;
    double good_probability(std::size_t j) const;
};

/// Initial conditions, the accumulated evolution and the mapping. Marker
/// preparation and anything on E, G are left out.
CircuitBlock build_state_prep_A(const PipelineSpec &pipeline, const RegisterLayout &layout);

/// 2|0><0| - I on `qubits`, including the global -1 so it stays correct
/// under extra controls.
CircuitBlock build_reflection_about_zero(std::span<const std::size_t> qubits);

/// Work registers reflected by S0: whichever of B, D, AM, C the layout has.
std::vector<std::size_t> work_qubits(const RegisterLayout &layout);

/// Q = A S0 A^dagger S_T with S_T = Z on the coin.
CircuitBlock build_grover_iterator(const CircuitBlock &a, const RegisterLayout &layout);

/// Hadamards on E, controlled Q^(2^k) on E qubit k, inverse QFT on E.
CircuitBlock build_qae_from_iterator(const CircuitBlock &q, const RegisterLayout &layout);
CircuitBlock build_qae(const PipelineSpec &pipeline, const RegisterLayout &layout);

/// Marker preparation, A and QAE.
CircuitBlock build_full_preparation(const PipelineSpec &pipeline,
                                    const RegisterLayout &layout);

double qae_estimate_from_outcome(std::uint64_t y, std::size_t e);
double qae_error_bound(double phi, double l);
/// min(y, 2^e - y): both QAE peaks of one phi share this value.
std::uint64_t fold_outcome(std::uint64_t y, std::size_t e);

/// Phase -1 on basis states with E < tau, G restored. tau may equal 2^e.
CircuitBlock build_threshold_oracle(const RegisterLayout &layout, std::uint64_t tau);
/// Phase -1 on basis states with fold(E) < tau.
CircuitBlock build_folded_threshold_oracle(const RegisterLayout &layout, std::uint64_t tau);

/// Uniform draw from {0, ..., ceil(m) - 1}.
std::size_t grover_schedule(double m, double lambda, Rng &rng);

enum class DiffusionMode { CachedReflection, Circuit };

/// A prepared search state over (M, E). `preparation` is required for
/// DiffusionMode::Circuit.
struct SearchProblem {
    StateVector prepared;
    std::size_t num_items = 1;
    MarkerEncoding encoding = MarkerEncoding::Compact;
    std::optional<CircuitBlock> preparation;
};

SearchProblem prepare_search_problem(const PipelineSpec &pipeline);

/// N markers (Compact) with E holding outcomes[j] exactly.
SearchProblem synthetic_problem_from_outcomes(std::span<const std::uint64_t> outcomes,
                                              std::size_t e);
/// N markers with E holding the nearest grid outcome of each estimate.
SearchProblem synthetic_problem_from_estimates(std::span<const double> phi_hats,
                                               std::size_t e);
/// round(2^e asin(sqrt(phi)) / pi): the QAE outcome closest to phi.
std::uint64_t nearest_grid_outcome(double phi, std::size_t e);
/// N markers with coin probability phis[j] and real QAE on top.
SearchProblem synthetic_problem_from_amplitudes(std::span<const double> phis,
                                                std::size_t e);

struct MinFindRound {
    std::size_t round = 0;
    std::uint64_t tau = 0;
    std::size_t marker = 0;
    std::uint64_t y = 0;
    std::size_t iterations = 0;
};

struct ThresholdUpdate {
    std::uint64_t tau = 0;
    std::size_t marker = 0;
    std::uint64_t y = 0;
};

struct MinFindResult {
    std::size_t best_marker = 0;
    /// Measured outcome y of the best marker and its estimate.
    std::uint64_t best_outcome = 0;
    double best_estimate = 0.0;
    std::vector<MinFindRound> rounds;
    std::vector<ThresholdUpdate> threshold_trace;
    /// Sum of Grover iterations over all rounds.
    std::size_t grover_iterations_total = 0;
    /// Preparations plus oracle calls: sum over rounds of (k + 1).
    std::size_t oracle_queries_total = 0;
    std::size_t budget = 0;
};

MinFindResult durr_hoyer(const SearchProblem &problem, const MinFindParams &params,
                         Rng &rng, DiffusionMode mode = DiffusionMode::CachedReflection);
MinFindResult run_durr_hoyer(const PipelineSpec &pipeline, Rng &rng);

/// P(C = 1 | M = j) per configuration, zero for markers with no weight.
std::vector<double> coin_probability_by_marker(const StateVector &state,
                                               const ConfigurationSet &configs);

struct EstimateResult {
    std::size_t e = 0;
    /// distributions[j][y] = P(E = y | M = j).
    std::vector<std::vector<double>> distributions;
    std::vector<double> true_phi;

    double phi_hat(std::uint64_t y) const { return qae_estimate_from_outcome(y, e); }
    double epsilon_bound(std::size_t marker) const;
};

EstimateResult run_qae(const PipelineSpec &pipeline);

} // namespace qlga
