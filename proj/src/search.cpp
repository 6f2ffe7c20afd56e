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

#include "qlga/search.hpp"

#include "qlga/error.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace qlga {

namespace {

std::size_t decode_marker(BasisValue code, MarkerEncoding encoding, std::size_t n) {
    const std::size_t j = encoding == MarkerEncoding::OneHot
                              ? static_cast<std::size_t>(std::countr_zero(code))
                              : static_cast<std::size_t>(code);
    if (j >= n) {
        throw NumericalError("measured marker code " + std::to_string(code) +
                             " is not assigned to a configuration");
    }
    return j;
}

std::vector<Control> compact_controls(const Register &marker, BasisValue code) {
    std::vector<Control> controls;
    for (std::size_t b = 0; b < marker.width; ++b) {
        controls.push_back({marker.qubit(b), ((code >> b) & 1U) != 0});
    }
    return controls;
}

/// Uniform superposition over the first n codes of a Compact marker.
CircuitBlock uniform_marker_prep(const Register &marker, std::size_t n) {
    if (std::has_single_bit(n)) {
        CircuitBlock block("marker_prep");
        for (std::size_t q : marker.qubits()) {
            block.push(CircuitOp::h(q));
        }
        return block;
    }
    std::vector<double> weights(std::size_t{1} << marker.width, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        weights[j] = 1.0;
    }
    const auto qubits = marker.qubits();
    return build_amplitude_tree(qubits, weights);
}

RegisterLayout synthetic_layout(std::size_t n, std::size_t e, bool with_coin) {
    if (n == 0) {
        throw ValidationError("search needs at least one item");
    }
    if (e < 1) {
        throw ValidationError("estimation register needs e >= 1");
    }
    RegisterLayout layout;
    layout.add(std::string(reg::kMarker), n <= 1 ? 0 : std::bit_width(n - 1));
    if (with_coin) {
        layout.add(std::string(reg::kCoin), 1);
    }
    layout.add(std::string(reg::kEstimation), e).add(std::string(reg::kGrover), 1);
    return layout;
}

std::vector<std::size_t> estimate_then_marker(const RegisterLayout &layout) {
    std::vector<std::size_t> qubits = layout.at(reg::kEstimation).qubits();
    for (std::size_t q : layout.at(reg::kMarker).qubits()) {
        qubits.push_back(q);
    }
    return qubits;
}

} // namespace

void PipelineSpec::validate() const {
    configs.validate();
    const auto &spec = configs.discretization();
    qoi.validate(spec);
    if (estimation_bits < 1) {
        throw ValidationError("estimation register needs e >= 1");
    }
    for (std::size_t t : qoi.acc_steps) {
        if (t > steps) {
            throw ValidationError("accumulation step " + std::to_string(t) +
                                  " exceeds the number of time steps");
        }
    }
    mapping.validate(f_max());
    if (!(minfind.lambda > 1.0 && minfind.lambda < 4.0 / 3.0)) {
        throw ValidationError("lambda must lie in (1, 4/3)");
    }
    if (!(minfind.budget_c > 0.0)) {
        throw ValidationError("budget constant must be positive");
    }
    const auto check = verify_conservation(collision, spec);
    if (!check.passed) {
        throw ValidationError("collision model does not conserve mass and momentum");
    }
}

RegisterLayout PipelineSpec::layout() const {
    return build_layout(configs, qoi, estimation_bits, mapping.kind);
}

GroverDiagnostics GroverDiagnostics::from_counts(std::size_t t, std::size_t n) {
    if (n == 0 || t > n) {
        throw ValidationError("Grover diagnostics need 0 <= t <= N, N >= 1");
    }
    return {t, n, std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(n)))};
}

double GroverDiagnostics::good_amplitude(std::size_t j) const {
    if (t == 0) {
        return 0.0;
    }
    return std::sin((2.0 * static_cast<double>(j) + 1.0) * theta) /
           std::sqrt(static_cast<double>(t));
}

double GroverDiagnostics::bad_amplitude(std::size_t j) const {
    if (t == n) {
        return 0.0;
    }
    return std::cos((2.0 * static_cast<double>(j) + 1.0) * theta) /
           std::sqrt(static_cast<double>(n - t));
}

double GroverDiagnostics::good_probability(std::size_t j) const {
    const double s = std::sin((2.0 * static_cast<double>(j) + 1.0) * theta);
    return s * s;
}

CircuitBlock build_state_prep_A(const PipelineSpec &pipeline, const RegisterLayout &layout) {
    CircuitBlock a("state_prep_A");
    a.append(build_parallel_initial_conditions(pipeline.configs, layout, pipeline.semantics));
    const auto schedule = build_accumulation_schedule(pipeline.qoi, pipeline.steps);
    a.append(assemble_evolution(schedule, pipeline.configs, pipeline.collision, pipeline.qoi,
                                layout, pipeline.semantics));
    a.append(build_mapping(layout, pipeline.mapping, pipeline.f_max()));
    return a;
}

CircuitBlock build_reflection_about_zero(std::span<const std::size_t> qubits) {
    CircuitBlock block("reflect_zero");
    if (qubits.empty()) {
        return block;
    }
    const std::size_t pivot = qubits[0];
    // I - 2|0><0|: phase-flip the all-zero state.
    CircuitOp flip = CircuitOp::z(pivot);
    for (std::size_t i = 1; i < qubits.size(); ++i) {
        flip.controls.push_back({qubits[i], false});
    }
    block.push(CircuitOp::x(pivot));
    block.push(std::move(flip));
    block.push(CircuitOp::x(pivot));
    // Z X Z X = -I
    block.push(CircuitOp::z(pivot));
    block.push(CircuitOp::x(pivot));
    block.push(CircuitOp::z(pivot));
    block.push(CircuitOp::x(pivot));
    return block;
}

std::vector<std::size_t> work_qubits(const RegisterLayout &layout) {
    std::vector<std::size_t> qubits;
    for (auto name : {reg::kBase, reg::kData, reg::kMappingAncilla, reg::kCoin}) {
        if (layout.contains(name)) {
            for (std::size_t q : layout.at(name).qubits()) {
                qubits.push_back(q);
            }
        }
    }
    return qubits;
}

CircuitBlock build_grover_iterator(const CircuitBlock &a, const RegisterLayout &layout) {
    CircuitBlock q("grover_iterator");
    q.push(CircuitOp::z(layout.at(reg::kCoin).qubit(0)));
    q.append(a.adjoint());
    const auto work = work_qubits(layout);
    q.append(build_reflection_about_zero(work));
    q.append(a);
    return q;
}

CircuitBlock build_qae_from_iterator(const CircuitBlock &q, const RegisterLayout &layout) {
    const auto &est = layout.at(reg::kEstimation);
    CircuitBlock block("qae");
    for (std::size_t k = 0; k < est.width; ++k) {
        block.push(CircuitOp::h(est.qubit(k)));
    }
    for (std::size_t k = 0; k < est.width; ++k) {
        const Control c{est.qubit(k), true};
        const auto controlled = q.with_controls(std::span<const Control>(&c, 1));
        for (std::size_t r = 0; r < (std::size_t{1} << k); ++r) {
            block.append(controlled);
        }
    }
    const auto qubits = est.qubits();
    block.append(build_qft(qubits, true));
    return block;
}

CircuitBlock build_qae(const PipelineSpec &pipeline, const RegisterLayout &layout) {
    const auto a = build_state_prep_A(pipeline, layout);
    return build_qae_from_iterator(build_grover_iterator(a, layout), layout);
}

CircuitBlock build_full_preparation(const PipelineSpec &pipeline,
                                    const RegisterLayout &layout) {
    const auto a = build_state_prep_A(pipeline, layout);
    CircuitBlock block("full_preparation");
    block.append(build_marker_prep(pipeline.configs, layout));
    block.append(a);
    block.append(build_qae_from_iterator(build_grover_iterator(a, layout), layout));
    return block;
}

double qae_estimate_from_outcome(std::uint64_t y, std::size_t e) {
    if (e >= 63 || y >= (std::uint64_t{1} << e)) {
        throw std::out_of_range("QAE outcome " + std::to_string(y) + " outside 0..2^" +
                                std::to_string(e) + "-1");
    }
    const double s = std::sin(std::numbers::pi * static_cast<double>(y) /
                              static_cast<double>(std::uint64_t{1} << e));
    return s * s;
}

double qae_error_bound(double phi, double l) {
    const double r = std::numbers::pi / l;
    return 2.0 * std::numbers::pi * std::sqrt(phi * (1.0 - phi)) / l + r * r;
}

std::uint64_t fold_outcome(std::uint64_t y, std::size_t e) {
    const std::uint64_t size = std::uint64_t{1} << e;
    return y == 0 ? 0 : std::min(y, size - y);
}

CircuitBlock build_threshold_oracle(const RegisterLayout &layout, std::uint64_t tau) {
    const auto est = layout.at(reg::kEstimation).qubits();
    const std::size_t flag = layout.at(reg::kGrover).qubit(0);
    const auto compare = build_constant_comparator(est, tau, flag);
    CircuitBlock block("threshold_oracle");
    if (compare.empty()) {
        return block;
    }
    block.append(compare);
    block.push(CircuitOp::z(flag));
    block.append(compare.adjoint());
    return block;
}

CircuitBlock build_folded_threshold_oracle(const RegisterLayout &layout, std::uint64_t tau) {
    const auto &est = layout.at(reg::kEstimation);
    const std::uint64_t size = std::uint64_t{1} << est.width;
    if (tau > size) {
        throw ValidationError("threshold exceeds 2^e");
    }
    if (tau == 0) {
        return CircuitBlock("folded_threshold_oracle");
    }
    if (tau > size / 2) {
        return build_threshold_oracle(layout, size);
    }
    const auto qubits = est.qubits();
    const std::size_t flag = layout.at(reg::kGrover).qubit(0);
    // y < tau and y > 2^e - tau are disjoint here, so both can write G.
    CircuitBlock mark("fold_mark");
    mark.append(build_constant_comparator(qubits, tau, flag));
    mark.append(build_constant_comparator(qubits, size - tau + 1, flag));
    mark.push(CircuitOp::x(flag));
    CircuitBlock block("folded_threshold_oracle");
    block.append(mark);
    block.push(CircuitOp::z(flag));
    block.append(mark.adjoint());
    return block;
}

std::size_t grover_schedule(double m, double lambda, Rng &rng) {
    if (!(m >= 1.0)) {
        throw ValidationError("schedule parameter m must be >= 1");
    }
    if (!(lambda > 1.0)) {
        throw ValidationError("lambda must exceed 1");
    }
    const auto upper = static_cast<std::size_t>(std::ceil(m)) - 1;
    std::uniform_int_distribution<std::size_t> draw(0, upper);
    return draw(rng);
}

SearchProblem prepare_search_problem(const PipelineSpec &pipeline) {
    pipeline.validate();
    const auto layout = pipeline.layout();
    auto prep = build_full_preparation(pipeline, layout);
    StateVector state(layout, pipeline.max_qubits);
    apply(state, prep);
    return {std::move(state), pipeline.configs.size(), pipeline.configs.encoding,
            std::move(prep)};
}

SearchProblem synthetic_problem_from_outcomes(std::span<const std::uint64_t> outcomes,
                                              std::size_t e) {
    const auto layout = synthetic_layout(outcomes.size(), e, false);
    const auto &marker = layout.at(reg::kMarker);
    const auto &est = layout.at(reg::kEstimation);
    CircuitBlock prep = uniform_marker_prep(marker, outcomes.size());
    for (std::size_t j = 0; j < outcomes.size(); ++j) {
        if (outcomes[j] >= (std::uint64_t{1} << e)) {
            throw ValidationError("synthetic outcome exceeds 2^e - 1");
        }
        const auto controls = compact_controls(marker, j);
        for (std::size_t b = 0; b < e; ++b) {
            if ((outcomes[j] >> b) & 1U) {
                prep.push(CircuitOp::x(est.qubit(b)).with_controls(controls));
            }
        }
    }
    StateVector state(layout);
    apply(state, prep);
    return {std::move(state), outcomes.size(), MarkerEncoding::Compact, std::move(prep)};
}

std::uint64_t nearest_grid_outcome(double phi, std::size_t e) {
    if (!(phi >= 0.0 && phi <= 1.0)) {
        throw ValidationError("phi outside [0, 1]");
    }
    const double scaled = std::ldexp(std::asin(std::sqrt(phi)) / std::numbers::pi,
                                     static_cast<int>(e));
    return static_cast<std::uint64_t>(std::llround(scaled));
}

SearchProblem synthetic_problem_from_estimates(std::span<const double> phi_hats,
                                               std::size_t e) {
    std::vector<std::uint64_t> outcomes;
    for (double phi : phi_hats) {
        outcomes.push_back(nearest_grid_outcome(phi, e));
    }
    return synthetic_problem_from_outcomes(outcomes, e);
}

SearchProblem synthetic_problem_from_amplitudes(std::span<const double> phis,
                                                std::size_t e) {
    const auto layout = synthetic_layout(phis.size(), e, true);
    const auto &marker = layout.at(reg::kMarker);
    const std::size_t coin = layout.at(reg::kCoin).qubit(0);
    CircuitBlock a("synthetic_A");
    for (std::size_t j = 0; j < phis.size(); ++j) {
        if (!(phis[j] >= 0.0 && phis[j] <= 1.0)) {
            throw ValidationError("synthetic phi outside [0, 1]");
        }
        const double angle = 2.0 * std::asin(std::sqrt(phis[j]));
        a.push(CircuitOp::ry(coin, angle).with_controls(compact_controls(marker, j)));
    }
    CircuitBlock prep = uniform_marker_prep(marker, phis.size());
    prep.append(a);
    prep.append(build_qae_from_iterator(build_grover_iterator(a, layout), layout));
    StateVector state(layout);
    apply(state, prep);
    return {std::move(state), phis.size(), MarkerEncoding::Compact, std::move(prep)};
}

MinFindResult durr_hoyer(const SearchProblem &problem, const MinFindParams &params,
                         Rng &rng, DiffusionMode mode) {
    if (!(params.budget_c > 0.0)) {
        throw ValidationError("budget constant must be positive");
    }
    if (mode == DiffusionMode::Circuit && !problem.preparation) {
        throw ValidationError("circuit diffusion needs the preparation circuit");
    }
    const auto &layout = problem.prepared.layout();
    const std::size_t e = layout.at(reg::kEstimation).width;
    const auto measured = estimate_then_marker(layout);
    const std::uint64_t ymask = (std::uint64_t{1} << e) - 1;
    const std::size_t n = problem.num_items;

    auto measure = [&](const StateVector &s) {
        const BasisValue v = sample_value(s, measured, rng);
        return std::pair{decode_marker(v >> e, problem.encoding, n), v & ymask};
    };

    MinFindResult result;
    const auto [m0, y0] = measure(problem.prepared);
    std::uint64_t tau = fold_outcome(y0, e);
    result.best_marker = m0;
    result.best_outcome = y0;
    result.threshold_trace.push_back({tau, m0, y0});
    result.oracle_queries_total = 1;
    if (n <= 1) {
        result.best_estimate = qae_estimate_from_outcome(y0, e);
        return result;
    }
    result.budget = static_cast<std::size_t>(
        std::ceil(params.budget_c * std::sqrt(static_cast<double>(n))));

    CircuitBlock unprepare;
    CircuitBlock reflect_zero;
    if (mode == DiffusionMode::Circuit) {
        unprepare = problem.preparation->adjoint();
        std::vector<std::size_t> all(layout.total_qubits());
        for (std::size_t q = 0; q < all.size(); ++q) {
            all[q] = q;
        }
        reflect_zero = build_reflection_about_zero(all);
    }
    auto diffuse = [&](StateVector &s) {
        if (mode == DiffusionMode::CachedReflection) {
            reflect_about(s, problem.prepared);
        } else {
            apply(s, unprepare);
            apply(s, reflect_zero);
            apply(s, *problem.preparation);
        }
    };

    const double cap = std::sqrt(static_cast<double>(n));
    double m = 1.0;
    while (result.oracle_queries_total < result.budget && tau > 0) {
        std::size_t k = grover_schedule(m, params.lambda, rng);
        k = std::min(k, result.budget - result.oracle_queries_total - 1);
        StateVector state = problem.prepared;
        if (k > 0) {
            const auto oracle = build_folded_threshold_oracle(layout, tau);
            for (std::size_t i = 0; i < k; ++i) {
                apply(state, oracle);
                diffuse(state);
            }
        }
        const auto [mj, y] = measure(state);
        result.rounds.push_back({result.rounds.size() + 1, tau, mj, y, k});
        result.grover_iterations_total += k;
        result.oracle_queries_total += k + 1;
        const std::uint64_t folded = fold_outcome(y, e);
        if (folded < tau) {
            tau = folded;
            result.best_marker = mj;
            result.best_outcome = y;
            result.threshold_trace.push_back({tau, mj, y});
            m = 1.0;
        } else {
            m = std::min(params.lambda * m, cap);
        }
    }
    result.best_estimate = qae_estimate_from_outcome(result.best_outcome, e);
    return result;
}

MinFindResult run_durr_hoyer(const PipelineSpec &pipeline, Rng &rng) {
    const auto problem = prepare_search_problem(pipeline);
    return durr_hoyer(problem, pipeline.minfind, rng);
}

std::vector<double> coin_probability_by_marker(const StateVector &state,
                                               const ConfigurationSet &configs) {
    const auto &layout = state.layout();
    std::vector<std::size_t> qubits{layout.at(reg::kCoin).qubit(0)};
    for (std::size_t q : layout.at(reg::kMarker).qubits()) {
        qubits.push_back(q);
    }
    const auto joint = marginal(state, qubits);
    std::vector<double> phi(configs.size(), 0.0);
    for (std::size_t j = 0; j < configs.size(); ++j) {
        const BasisValue code = configs.marker_code(j);
        const double zero = joint[2 * code];
        const double one = joint[2 * code + 1];
        if (zero + one > 0.0) {
            phi[j] = one / (zero + one);
        }
    }
    return phi;
}

double EstimateResult::epsilon_bound(std::size_t marker) const {
    return qae_error_bound(true_phi.at(marker), static_cast<double>(std::uint64_t{1} << e));
}

EstimateResult run_qae(const PipelineSpec &pipeline) {
    pipeline.validate();
    const auto layout = pipeline.layout();
    const auto a = build_state_prep_A(pipeline, layout);
    StateVector state(layout, pipeline.max_qubits);
    apply(state, build_marker_prep(pipeline.configs, layout));
    apply(state, a);

    EstimateResult result;
    result.e = pipeline.estimation_bits;
    result.true_phi = coin_probability_by_marker(state, pipeline.configs);
    apply(state, build_qae_from_iterator(build_grover_iterator(a, layout), layout));

    const auto joint = marginal(state, estimate_then_marker(layout));
    const std::size_t ysize = std::size_t{1} << result.e;
    for (std::size_t j = 0; j < pipeline.configs.size(); ++j) {
        const BasisValue code = pipeline.configs.marker_code(j);
        std::vector<double> dist(ysize, 0.0);
        double total = 0.0;
        for (std::size_t y = 0; y < ysize; ++y) {
            dist[y] = joint[code * ysize + y];
            total += dist[y];
        }
        if (total > 0.0) {
            for (double &p : dist) {
                p /= total;
            }
        }
        result.distributions.push_back(std::move(dist));
    }
    return result;
}

} // namespace qlga
