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

#include "qlga/oracle.hpp"

#include "qlga/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qlga {

namespace {

using Occupation = std::uint64_t;

bool occupied(Occupation occ, std::size_t bit) { return ((occ >> bit) & 1U) != 0; }

Occupation stream_classically(const LatticeSpec &spec, Occupation occ) {
    Occupation out = 0;
    for (std::size_t g = 0; g < spec.num_gridpoints(); ++g) {
        for (std::size_t c = 0; c < spec.q; ++c) {
            if (occupied(occ, qubit_index(spec, g, c))) {
                const std::size_t to = spec.neighbor(g, spec.velocities[c]);
                out |= Occupation{1} << qubit_index(spec, to, c);
            }
        }
    }
    return out;
}

Occupation reflect_classically(const LatticeSpec &spec, Occupation occ) {
    for (const auto &link : spec.reflection_pairs()) {
        const std::size_t a = qubit_index(spec, link.gridpoint, link.channel);
        const std::size_t b = qubit_index(spec, link.gridpoint, link.partner);
        if (occupied(occ, a) != occupied(occ, b)) {
            occ ^= (Occupation{1} << a) | (Occupation{1} << b);
        }
    }
    return occ;
}

std::uint64_t region_value(const LatticeSpec &spec, const QoISpec &qoi, Occupation occ) {
    std::uint64_t f = 0;
    for (std::size_t g : qoi.region) {
        for (std::size_t s = 0; s < qoi.channels.size(); ++s) {
            if (occupied(occ, qubit_index(spec, g, qoi.channels[s]))) {
                f += static_cast<std::uint64_t>(qoi.weight_of(s, spec));
            }
        }
    }
    return f;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace

std::vector<double> exact_expectation(const PipelineSpec &pipeline) {
    pipeline.validate();
    const auto layout = build_work_layout(pipeline.configs, pipeline.qoi, pipeline.mapping.kind);
    StateVector state(layout, pipeline.max_qubits);
    apply(state, build_marker_prep(pipeline.configs, layout));
    apply(state, build_state_prep_A(pipeline, layout));
    return coin_probability_by_marker(state, pipeline.configs);
}

std::map<std::uint64_t, double> classical_lga_enumerate(const LatticeSpec &spec,
                                                        const CollisionModel &collision,
                                                        std::size_t steps,
                                                        const QoISpec &qoi) {
    spec.validate();
    qoi.validate(spec);
    if (spec.num_qubits() > 20) {
        throw ValidationError("classical enumeration is limited to 20 occupancy bits");
    }
    const std::size_t dim = std::size_t{1} << spec.q;
    const auto u = collision.local_unitary(spec);
    std::vector<bool> accumulate(steps + 1, false);
    for (std::size_t t : qoi.acc_steps) {
        if (t > steps) {
            throw ValidationError("accumulation step " + std::to_string(t) +
                                  " exceeds the number of time steps");
        }
        accumulate[t] = true;
    }

    Occupation start = 0;
    for (const auto &o : spec.initial_occupancy) {
        start |= Occupation{1} << qubit_index(spec, o.gridpoint, o.channel);
    }
    std::map<std::pair<Occupation, std::uint64_t>, double> branches{{{start, 0}, 1.0}};

    for (std::size_t t = 1; t <= steps; ++t) {
        for (std::size_t g = 0; g < spec.num_gridpoints(); ++g) {
            const std::size_t shift = qubit_index(spec, g, 0);
            std::map<std::pair<Occupation, std::uint64_t>, double> next;
            for (const auto &[key, p] : branches) {
                const auto [occ, f] = key;
                const std::size_t local = (occ >> shift) & (dim - 1);
                const Occupation rest = occ & ~(Occupation{dim - 1} << shift);
                for (std::size_t out = 0; out < dim; ++out) {
                    const double w = std::norm(u[out * dim + local]);
                    if (w > 0.0) {
                        next[{rest | (Occupation{out} << shift), f}] += p * w;
                    }
                }
            }
            branches = std::move(next);
        }
        std::map<std::pair<Occupation, std::uint64_t>, double> moved;
        for (const auto &[key, p] : branches) {
            const Occupation occ = reflect_classically(spec, stream_classically(spec, key.first));
            const std::uint64_t f =
                key.second + (accumulate[t] ? region_value(spec, qoi, occ) : 0);
            moved[{occ, f}] += p;
        }
        branches = std::move(moved);
    }

    std::map<std::uint64_t, double> dist;
    for (const auto &[key, p] : branches) {
        dist[key.second] += p;
    }
    return dist;
}

GapReport compute_gap(std::span<const double> phi, std::size_t e) {
    if (phi.size() < 2) {
        throw ValidationError("gap analysis needs at least two markers");
    }
    GapReport report;
    report.phi.assign(phi.begin(), phi.end());
    report.optimum = static_cast<std::size_t>(
        std::min_element(phi.begin(), phi.end()) - phi.begin());
    report.delta = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < phi.size(); ++j) {
        if (j != report.optimum) {
            report.delta = std::min(report.delta, phi[j] - phi[report.optimum]);
        }
    }
    report.degenerate = report.delta <= 1e-12;
    for (double p : phi) {
        report.grid_outcomes.push_back(fold_outcome(nearest_grid_outcome(p, e), e));
    }
    report.resolvable = !report.degenerate;
    for (std::size_t j = 0; j < phi.size(); ++j) {
        if (j != report.optimum &&
            report.grid_outcomes[j] <= report.grid_outcomes[report.optimum]) {
            report.resolvable = false;
        }
    }
    report.error_bound =
        qae_error_bound(phi[report.optimum], static_cast<double>(std::uint64_t{1} << e));
    report.bound_exceeds_half_gap = report.error_bound > report.delta / 2.0;
    return report;
}

double classical_query_baseline(std::size_t n, std::size_t t) {
    if (t < 1 || t > n) {
        throw ValidationError("baseline needs 1 <= t <= N");
    }
    return static_cast<double>(n + 1) / static_cast<double>(t + 1);
}

RepeatedMinFind repeated_median_minfind(const SearchProblem &problem,
                                        const MinFindParams &params, std::size_t k,
                                        Rng &rng) {
    if (k == 0 || k % 2 == 0) {
        throw ValidationError("repetition count must be odd, got " + std::to_string(k));
    }
    std::vector<Rng::result_type> seeds(k);
    for (auto &s : seeds) {
        s = rng();
    }
    RepeatedMinFind out;
    out.runs.resize(k);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < k; ++i) {
        Rng local(seeds[i]);
        out.runs[i] = durr_hoyer(problem, params, local);
    }

    const std::size_t n = problem.num_items;
    out.votes.assign(n, 0);
    std::vector<std::vector<double>> estimates(n);
    for (const auto &run : out.runs) {
        ++out.votes[run.best_marker];
        estimates[run.best_marker].push_back(run.best_estimate);
    }
    out.medians.assign(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t j = 0; j < n; ++j) {
        if (!estimates[j].empty()) {
            out.medians[j] = median(estimates[j]);
        }
    }
    for (std::size_t j = 1; j < n; ++j) {
        const std::size_t w = out.winner;
        if (out.votes[j] > out.votes[w] ||
            (out.votes[j] == out.votes[w] && out.votes[j] > 0 &&
             out.medians[j] < out.medians[w])) {
            out.winner = j;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (j == out.winner || out.votes[j] == 0) {
            continue;
        }
        if (out.votes[j] == out.votes[out.winner] ||
            out.medians[j] == out.medians[out.winner]) {
            out.degenerate = true;
        }
    }
    return out;
}

RepeatedMinFind repeated_median_minfind(const PipelineSpec &pipeline, std::size_t k,
                                        Rng &rng) {
    if (k == 0 || k % 2 == 0) {
        throw ValidationError("repetition count must be odd, got " + std::to_string(k));
    }
    const auto problem = prepare_search_problem(pipeline);
    auto out = repeated_median_minfind(problem, pipeline.minfind, k, rng);
    if (pipeline.configs.size() >= 2) {
        const auto gap = compute_gap(exact_expectation(pipeline), pipeline.estimation_bits);
        out.degenerate = out.degenerate || gap.degenerate;
    }
    return out;
}

} // namespace qlga
