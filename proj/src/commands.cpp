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
#include "qlga/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qlga {

namespace {

constexpr double kReportFloor = 1e-12;

std::size_t argmin(const std::vector<double> &v) {
    return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

std::size_t count_kind(const CircuitBlock &block, GateKind kind) {
    return static_cast<std::size_t>(std::count_if(
        block.ops.begin(), block.ops.end(), [kind](const CircuitOp &op) { return op.kind == kind; }));
}

double log2_or_zero(double x) { return x > 0.0 ? std::log2(x) : 0.0; }

} // namespace

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double control_weight(const CircuitBlock &block) {
    double total = 0.0;
    for (const auto &op : block.ops) {
        const auto k = static_cast<double>(op.controls.size());
        total += k * k;
    }
    return total;
}

std::string cmd_simulate(const RunConfig &config) {
    const auto &p = config.pipeline;
    const auto &spec = p.configs.discretization();
    RegisterLayout layout;
    layout.add(std::string(reg::kBase), spec.num_qubits())
        .add(std::string(reg::kMarker), p.configs.marker_width())
        .add(std::string(reg::kData), p.qoi.accumulation_qubits(spec));
    StateVector state(layout, p.max_qubits);
    apply(state, build_marker_prep(p.configs, layout));
    apply(state, build_parallel_initial_conditions(p.configs, layout, p.semantics));
    const auto schedule = build_accumulation_schedule(p.qoi, p.steps);
    apply(state, assemble_evolution(schedule, p.configs, p.collision, p.qoi, layout, p.semantics));

    std::ostringstream out;
    out << "marker,f_value,probability\n";
    for (const auto &row : accumulated_state_check(state, p.configs)) {
        for (std::size_t f = 0; f < row.data.size(); ++f) {
            if (row.data[f] > kReportFloor) {
                out << row.marker << ',' << f << ',' << format_real(row.data[f]) << '\n';
            }
        }
    }
    return out.str();
}

std::string cmd_estimate(const RunConfig &config) {
    const auto result = run_qae(config.pipeline);
    std::ostringstream out;
    out << "marker,y,phi_hat,probability,true_phi,within_bound\n";
    for (std::size_t j = 0; j < result.distributions.size(); ++j) {
        const double eps = result.epsilon_bound(j);
        for (std::size_t y = 0; y < result.distributions[j].size(); ++y) {
            const double prob = result.distributions[j][y];
            if (prob <= kReportFloor) {
                continue;
            }
            const double est = result.phi_hat(y);
            const bool within = std::abs(est - result.true_phi[j]) <= eps;
            out << j << ',' << y << ',' << format_real(est) << ',' << format_real(prob) << ','
                << format_real(result.true_phi[j]) << ',' << (within ? 1 : 0) << '\n';
        }
    }
    return out.str();
}

std::string cmd_minfind(const RunConfig &config) {
    const auto &p = config.pipeline;
    Rng rng(config.seed);
    const auto problem = prepare_search_problem(p);
    std::vector<MinFindResult> runs;
    std::size_t best = 0;
    bool degenerate = false;
    if (config.repetitions == 1) {
        runs.push_back(durr_hoyer(problem, p.minfind, rng));
        best = runs.front().best_marker;
    } else {
        auto repeated = repeated_median_minfind(problem, p.minfind, config.repetitions, rng);
        best = repeated.winner;
        degenerate = repeated.degenerate;
        runs = std::move(repeated.runs);
    }

    std::ostringstream out;
    out << "run,round,tau,marker,y,iterations\n";
    std::size_t iterations = 0;
    std::size_t queries = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        out << r << ",0," << runs[r].threshold_trace.front().tau << ','
            << runs[r].threshold_trace.front().marker << ','
            << runs[r].threshold_trace.front().y << ",0\n";
        for (const auto &round : runs[r].rounds) {
            out << r << ',' << round.round << ',' << round.tau << ',' << round.marker << ','
                << round.y << ',' << round.iterations << '\n';
        }
        iterations += runs[r].grover_iterations_total;
        queries += runs[r].oracle_queries_total;
    }
    const auto phi = exact_expectation(p);
    const std::size_t exact = argmin(phi);
    out << "# best_marker=" << best << '\n';
    if (config.repetitions == 1) {
        out << "# best_estimate=" << format_real(runs.front().best_estimate) << '\n';
    }
    out << "# grover_iterations=" << iterations << '\n';
    out << "# oracle_queries=" << queries << '\n';
    out << "# budget_per_run=" << runs.front().budget << '\n';
    out << "# classical_baseline=" << format_real(classical_query_baseline(p.configs.size(), 1))
        << '\n';
    out << "# exact_argmin=" << exact << '\n';
    out << "# agrees=" << (exact == best ? 1 : 0) << '\n';
    if (p.configs.size() >= 2) {
        const auto gap = compute_gap(phi, p.estimation_bits);
        out << "# resolvable=" << (gap.resolvable ? 1 : 0) << '\n';
        degenerate = degenerate || gap.degenerate;
    }
    out << "# degenerate=" << (degenerate ? 1 : 0) << '\n';
    return out.str();
}

double ResourceReport::value(std::string_view name) const {
    for (const auto &[k, v] : metrics) {
        if (k == name) {
            return v;
        }
    }
    throw std::out_of_range("no resource metric named " + std::string(name));
}

std::string ResourceReport::text() const {
    std::ostringstream out;
    out << "Resource report\n";
    for (const auto &[k, v] : metrics) {
        char line[128];
        std::snprintf(line, sizeof line, "  %-34s %s\n", k.c_str(), format_real(v).c_str());
        out << line;
    }
    return out.str();
}

std::string ResourceReport::csv() const {
    std::ostringstream out;
    out << "metric,value\n";
    for (const auto &[k, v] : metrics) {
        out << k << ',' << format_real(v) << '\n';
    }
    return out.str();
}

ResourceReport build_resource_report(const RunConfig &config) {
    const auto &p = config.pipeline;
    const auto &configs = p.configs;
    const auto &spec = configs.discretization();
    const auto layout = p.layout();
    ResourceReport r;
    auto put = [&](std::string name, double v) { r.metrics.emplace_back(std::move(name), v); };
    auto width = [&](std::string_view name) {
        return static_cast<double>(layout.at(name).width);
    };

    const auto ng = static_cast<double>(spec.num_gridpoints());
    const auto lattices = static_cast<double>(configs.size());
    put("lattices", lattices);
    put("gridpoints", ng);
    put("channels_q", static_cast<double>(spec.q));
    put("time_steps", static_cast<double>(p.steps));
    put("accumulation_steps", static_cast<double>(p.qoi.acc_steps.size()));
    put("region_size", static_cast<double>(p.qoi.region.size()));
    put("qoi_channels", static_cast<double>(p.qoi.channels.size()));
    put("f_max", static_cast<double>(p.f_max()));

    put("qubits_base", width(reg::kBase));
    put("qubits_marker", width(reg::kMarker));
    put("qubits_data", width(reg::kData));
    put("qubits_mapping_ancilla", width(reg::kMappingAncilla));
    put("qubits_estimation", width(reg::kEstimation));
    put("qubits_coin", width(reg::kCoin));
    put("qubits_flag", width(reg::kGrover));
    put("qubits_total", static_cast<double>(layout.total_qubits()));

    const std::size_t base = layout.at(reg::kBase).offset;
    const auto streaming = build_streaming(spec, base);
    const auto collision = build_collision(spec, p.collision, base);
    const auto boundary_shared = plan_shared_semantics(configs, layout, FeatureKind::Boundary,
                                                       SemanticsMode::Shared);
    const auto step_shared = build_parallel_step(configs, p.collision, layout, SemanticsMode::Shared);
    const auto step_naive = build_parallel_step(configs, p.collision, layout, SemanticsMode::Naive);
    const auto init_shared =
        build_parallel_initial_conditions(configs, layout, SemanticsMode::Shared);
    const auto init_naive =
        build_parallel_initial_conditions(configs, layout, SemanticsMode::Naive);
    const auto fixed_ops = static_cast<double>(streaming.size() + collision.size());
    put("streaming_swaps_per_step", static_cast<double>(count_kind(streaming, GateKind::Swap)));
    put("streaming_depth", static_cast<double>(circuit_depth(streaming)));
    put("collision_ops_per_step", static_cast<double>(collision.size()));
    put("boundary_swaps_per_step_shared", static_cast<double>(step_shared.size()) - fixed_ops);
    put("boundary_swaps_per_step_naive", static_cast<double>(step_naive.size()) - fixed_ops);
    put("boundary_groups", static_cast<double>(boundary_shared.size()));
    put("marker_controlled_ops_per_step_shared",
        static_cast<double>(count_controlled_ops(step_shared)));
    put("marker_controlled_ops_per_step_naive",
        static_cast<double>(count_controlled_ops(step_naive)));
    put("initial_ops_shared", static_cast<double>(init_shared.size()));
    put("initial_ops_naive", static_cast<double>(init_naive.size()));
    put("marker_prep_ops", static_cast<double>(build_marker_prep(configs, layout).size()));

    const auto mhwa = build_mhwa(layout, p.qoi, spec);
    put("mhwa_phases_per_accumulation", static_cast<double>(mhwa.size()));
    put("mhwa_phases_total", static_cast<double>(mhwa.size() * p.qoi.acc_steps.size()));
    put("mhwa_depth", static_cast<double>(circuit_depth(mhwa)));
    const auto data_qubits = layout.at(reg::kData).qubits();
    put("qft_ops", static_cast<double>(build_qft(data_qubits, false).size()));

    const auto mapping = build_mapping(layout, p.mapping, p.f_max());
    put("mapping_ops", static_cast<double>(mapping.size()));
    std::size_t comparator_ops = 0;
    if (p.mapping.kind == MappingKind::LinearComparison) {
        comparator_ops = build_comparator_less_than(layout.at(reg::kMappingAncilla).qubits(),
                                                    data_qubits, layout.at(reg::kCoin).qubit(0))
                             .size();
    }
    put("comparator_ops", static_cast<double>(comparator_ops));

    const auto a = build_state_prep_A(p, layout);
    const auto q = build_grover_iterator(a, layout);
    const auto e = p.estimation_bits;
    const auto est_qubits = layout.at(reg::kEstimation).qubits();
    const double powers = std::ldexp(1.0, static_cast<int>(e)) - 1.0;
    put("a_ops", static_cast<double>(a.size()));
    put("a_control_weight", control_weight(a));
    put("grover_iterator_ops", static_cast<double>(q.size()));
    put("qae_ops", static_cast<double>(e) + powers * static_cast<double>(q.size()) +
                       static_cast<double>(build_qft(est_qubits, true).size()));

    std::size_t nbc_max = 0;
    for (const auto &lat : configs.lattices) {
        nbc_max = std::max(nbc_max, lat.boundary_gridpoint_count());
    }
    const double log_l = log2_or_zero(lattices);
    const double acc_arg = static_cast<double>(p.qoi.acc_steps.size()) *
                           static_cast<double>(p.qoi.region.size()) *
                           static_cast<double>(spec.q + 1);
    const double term_qlga = std::ldexp(1.0, static_cast<int>(spec.q)) + std::log2(ng);
    const double term_acc = std::pow(log2_or_zero(acc_arg), 2.0);
    const double term_par = static_cast<double>(nbc_max) * lattices * log_l * log_l;
    const double inv_eps = std::ldexp(1.0, static_cast<int>(e));
    put("formula_marker_qubits", std::ceil(log_l));
    put("formula_accumulation_qubits", std::ceil(log2_or_zero(acc_arg)));
    put("formula_qubits_total", static_cast<double>(spec.num_qubits()) + std::ceil(log_l) +
                                    std::ceil(log2_or_zero(acc_arg)) + static_cast<double>(e) +
                                    2.0);
    // One open chain of N_g - 1 swaps per channel. Exact on 1D rings; a 2D
    // torus shift splits into several cycles and needs fewer.
    put("formula_streaming_swaps", static_cast<double>(spec.q) * (ng - 1.0));
    put("formula_mhwa_phases", static_cast<double>(p.qoi.region.size()) *
                                   static_cast<double>(p.qoi.channels.size()) *
                                   width(reg::kData));
    put("boundary_gridpoints_max", static_cast<double>(nbc_max));
    put("term_qlga", term_qlga);
    put("term_accumulation", term_acc);
    put("term_parallel_semantics", term_par);
    put("query_sqrt_lattices", std::sqrt(lattices));
    put("query_inv_epsilon", inv_eps);
    put("cost_estimate", std::sqrt(lattices) * inv_eps * static_cast<double>(p.steps) *
                             (term_qlga + term_acc + term_par));
    return r;
}

std::string cmd_resources(const RunConfig &config) {
    const auto report = build_resource_report(config);
    return report.text() + "\n" + report.csv();
}

std::string cmd_oracle(const RunConfig &config) {
    const auto &p = config.pipeline;
    std::ostringstream out;
    const auto phi = exact_expectation(p);
    out << "# exact_expectation\nmarker,phi\n";
    for (std::size_t j = 0; j < phi.size(); ++j) {
        out << j << ',' << format_real(phi[j]) << '\n';
    }
    out << "# classical_enumeration\nmarker,f_value,probability\n";
    for (std::size_t j = 0; j < p.configs.size(); ++j) {
        const auto &lat = p.configs.lattices[j];
        if (lat.num_qubits() > 20) {
            out << "# marker " << j << " skipped: more than 20 occupancy bits\n";
            continue;
        }
        for (const auto &[f, prob] : classical_lga_enumerate(lat, p.collision, p.steps, p.qoi)) {
            out << j << ',' << f << ',' << format_real(prob) << '\n';
        }
    }
    if (phi.size() >= 2) {
        const auto gap = compute_gap(phi, p.estimation_bits);
        out << "# gap\nmetric,value\n";
        out << "optimum," << gap.optimum << '\n';
        out << "delta," << format_real(gap.delta) << '\n';
        out << "degenerate," << (gap.degenerate ? 1 : 0) << '\n';
        out << "resolvable," << (gap.resolvable ? 1 : 0) << '\n';
        out << "error_bound," << format_real(gap.error_bound) << '\n';
        out << "bound_exceeds_half_gap," << (gap.bound_exceeds_half_gap ? 1 : 0) << '\n';
    }
    return out.str();
}

} // namespace qlga
