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

#include "support.hpp"

#include "qlga/config.hpp"
#include "qlga/error.hpp"
#include "qlga/search.hpp"

#include <doctest.h>

#include <numbers>
#include <set>

using namespace qlga;
using namespace qlga::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// P(E = y | M = j) read from the joint (E, M) marginal.
std::vector<double> outcome_distribution(const StateVector &s, std::size_t marker) {
    const auto &layout = s.layout();
    const auto &est = layout.at(reg::kEstimation);
    std::vector<std::size_t> qubits = est.qubits();
    for (auto q : layout.at(reg::kMarker).qubits()) {
        qubits.push_back(q);
    }
    const auto joint = marginal(s, qubits);
    const std::size_t ny = std::size_t{1} << est.width;
    std::vector<double> out(ny);
    double total = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
        out[y] = joint[y + marker * ny];
        total += out[y];
    }
    for (auto &p : out) {
        p /= total;
    }
    return out;
}

PipelineSpec tiny_pipeline() {
    PipelineSpec p;
    auto a = LatticeSpec::d1q2(2);
    a.initial_occupancy = {{0, 0}};
    auto b = LatticeSpec::d1q2(2);
    b.initial_occupancy = {{0, 0}, {1, 1}};
    auto c = LatticeSpec::d1q2(2);
    c.initial_occupancy = {{1, 0}, {1, 1}};
    p.configs.lattices = {a, b, c};
    p.collision = CollisionModel::identity();
    p.steps = 2;
    p.qoi = QoISpec{{0}, {0, 1}, {}, {1, 2}};
    p.mapping = MappingSpec{MappingKind::WeightedRotation, std::nullopt};
    p.estimation_bits = 3;
    return p;
}

} // namespace

TEST_CASE("Grover amplitudes follow the sinusoidal law on synthetic oracles") {
    const std::size_t n = 6;
    const auto layout = flat_layout(n);
    const auto qubits = layout.at("Q").qubits();
    std::mt19937_64 rng(3);
    for (std::size_t t : {1U, 2U, 5U, 13U}) {
        std::set<std::uint64_t> marked;
        while (marked.size() < t) {
            marked.insert(rng() % 64);
        }
        CircuitBlock oracle;
        for (auto x : marked) {
            CircuitOp z = CircuitOp::z(0);
            if (!bit(x, 0)) {
                oracle.push(CircuitOp::x(0));
            }
            for (std::size_t k = 1; k < n; ++k) {
                z.controls.push_back({k, bit(x, k)});
            }
            oracle.push(z);
            if (!bit(x, 0)) {
                oracle.push(CircuitOp::x(0));
            }
        }
        CircuitBlock hadamards;
        for (auto q : qubits) {
            hadamards.push(CircuitOp::h(q));
        }
        CircuitBlock iterate = oracle;
        iterate.append(hadamards);
        iterate.append(build_reflection_about_zero(qubits));
        iterate.append(hadamards);

        const auto diag = GroverDiagnostics::from_counts(t, 64);
        const double theta = std::asin(std::sqrt(static_cast<double>(t) / 64.0));
        StateVector s(layout);
        apply(s, hadamards);
        for (std::size_t j = 0; j <= 10; ++j) {
            double good = 0.0;
            for (auto x : marked) {
                good += std::norm(s.amplitude(x));
                CHECK(std::abs(s.amplitude(x).real() - diag.good_amplitude(j)) < 1e-9);
            }
            const double expect = std::pow(std::sin((2.0 * j + 1.0) * theta), 2);
            CHECK(std::abs(good - expect) < 1e-9);
            CHECK(std::abs(diag.good_probability(j) - expect) < 1e-12);
            apply(s, iterate);
        }
    }
    CHECK_THROWS_AS(GroverDiagnostics::from_counts(3, 2), ValidationError);
}

TEST_CASE("Grover iterator has eigenphases plus and minus two theta") {
    for (double phi : {0.1, 0.3, 0.5, 0.85}) {
        RegisterLayout layout;
        layout.add(std::string(reg::kCoin), 1);
        CircuitBlock a;
        a.push(CircuitOp::ry(0, 2.0 * std::asin(std::sqrt(phi))));
        const auto q = build_grover_iterator(a, layout);
        Amplitude m[2][2];
        for (std::uint64_t c = 0; c < 2; ++c) {
            auto s = basis_state(layout, c);
            apply(s, q);
            m[0][c] = s.amplitude(0);
            m[1][c] = s.amplitude(1);
        }
        const double theta = std::asin(std::sqrt(phi));
        const Amplitude trace = m[0][0] + m[1][1];
        const Amplitude det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        CHECK(std::abs(trace - 2.0 * std::cos(2.0 * theta)) < 1e-12);
        CHECK(std::abs(det - 1.0) < 1e-12);
    }
}

TEST_CASE("reflection about zero is 2|0><0| - I") {
    const auto layout = flat_layout(4);
    const auto qs = layout.at("Q").qubits();
    const auto block = build_reflection_about_zero(qs);
    const auto in = random_state(layout, 5);
    auto out = in;
    apply(out, block);
    for (std::uint64_t i = 0; i < 16; ++i) {
        const Amplitude expect = i == 0 ? in.amplitude(0) : -in.amplitude(i);
        CHECK(std::abs(out.amplitude(i) - expect) < 1e-14);
    }
}

TEST_CASE("QAE concentrates exactly representable amplitudes") {
    const std::vector<double> phis = {0.0, 0.5, 1.0, std::pow(std::sin(kPi / 8.0), 2)};
    const auto problem = synthetic_problem_from_amplitudes(phis, 3);
    const std::vector<std::set<std::uint64_t>> peaks = {{0}, {2, 6}, {4}, {1, 7}};
    for (std::size_t j = 0; j < phis.size(); ++j) {
        const auto dist = outcome_distribution(problem.prepared, j);
        double mass = 0.0;
        for (auto y : peaks[j]) {
            mass += dist[y];
        }
        CHECK(mass >= 1.0 - 1e-9);
    }
}

TEST_CASE("QAE places most mass within the error bound") {
    const std::vector<double> phis = {0.05, 0.3, 0.62, 0.9};
    for (std::size_t e : {3U, 4U, 5U}) {
        const auto problem = synthetic_problem_from_amplitudes(phis, e);
        const double l = std::pow(2.0, static_cast<double>(e));
        for (std::size_t j = 0; j < phis.size(); ++j) {
            const auto dist = outcome_distribution(problem.prepared, j);
            double mass = 0.0;
            for (std::uint64_t y = 0; y < dist.size(); ++y) {
                const double est = std::pow(std::sin(kPi * static_cast<double>(y) / l), 2);
                if (std::abs(est - phis[j]) <= qae_error_bound(phis[j], l)) {
                    mass += dist[y];
                }
            }
            CHECK(mass >= 8.0 / (kPi * kPi));
        }
    }
}

TEST_CASE("outcome helpers") {
    CHECK(qae_estimate_from_outcome(0, 3) == 0.0);
    CHECK(qae_estimate_from_outcome(2, 3) == doctest::Approx(0.5));
    CHECK(qae_estimate_from_outcome(4, 3) == doctest::Approx(1.0));
    CHECK_THROWS_AS(qae_estimate_from_outcome(8, 3), std::out_of_range);
    CHECK(fold_outcome(6, 3) == 2);
    CHECK(fold_outcome(4, 3) == 4);
    CHECK(fold_outcome(0, 3) == 0);
    CHECK(nearest_grid_outcome(0.5, 3) == 2);
    CHECK(nearest_grid_outcome(0.0, 5) == 0);
    CHECK(nearest_grid_outcome(1.0, 4) == 8);
    CHECK_THROWS_AS(nearest_grid_outcome(1.5, 4), ValidationError);
    CHECK(qae_error_bound(0.0, 8.0) == doctest::Approx(kPi * kPi / 64.0));
}

TEST_CASE("threshold oracles flip exactly the states below the threshold") {
    const std::size_t e = 3;
    const std::vector<std::uint64_t> outcomes = {0, 0};
    const auto layout = synthetic_problem_from_outcomes(outcomes, e).prepared.layout();
    const auto est = layout.at(reg::kEstimation).qubits();
    const std::size_t flag = layout.at(reg::kGrover).qubit(0);
    const std::size_t n = layout.total_qubits();
    const auto in = labelled_state(layout);
    for (std::uint64_t tau = 0; tau <= 8; ++tau) {
        auto plain = in;
        apply(plain, build_threshold_oracle(layout, tau));
        auto folded = in;
        apply(folded, build_folded_threshold_oracle(layout, tau));
        bool ok_plain = true;
        bool ok_folded = true;
        // the flag ancilla starts clean
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
            if (bit(i, flag)) {
                continue;
            }
            const auto y = gather(i, est);
            const Amplitude a = in.amplitude(i);
            ok_plain = ok_plain && std::abs(plain.amplitude(i) - (y < tau ? -a : a)) < 1e-15;
            ok_folded = ok_folded &&
                        std::abs(folded.amplitude(i) - (fold_outcome(y, e) < tau ? -a : a)) < 1e-15;
        }
        CHECK(ok_plain);
        CHECK(ok_folded);
    }
    CHECK_THROWS_AS(build_folded_threshold_oracle(layout, 9), ValidationError);
}

TEST_CASE("Grover schedule draws uniformly below ceil(m)") {
    Rng rng(17);
    const double m = 5.3;
    const std::size_t draws = 60000;
    std::vector<std::size_t> counts(6, 0);
    for (std::size_t i = 0; i < draws; ++i) {
        const auto k = grover_schedule(m, 1.2, rng);
        REQUIRE(k < 6);
        ++counts[k];
    }
    double chi2 = 0.0;
    const double expect = static_cast<double>(draws) / 6.0;
    for (auto c : counts) {
        chi2 += std::pow(static_cast<double>(c) - expect, 2) / expect;
    }
    // 5 degrees of freedom, p = 0.001
    CHECK(chi2 < 20.52);
    CHECK(grover_schedule(1.0, 1.2, rng) == 0);
    CHECK_THROWS_AS(grover_schedule(0.5, 1.2, rng), ValidationError);
    CHECK_THROWS_AS(grover_schedule(2.0, 1.0, rng), ValidationError);
}

TEST_CASE("minimum finding on hardwired outcomes") {
    const std::vector<double> estimates = {0.8, 0.3, 0.55, 0.9};
    const auto problem = synthetic_problem_from_estimates(estimates, 5);
    std::size_t hits = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const auto r = durr_hoyer(problem, MinFindParams{}, rng);
        hits += r.best_marker == 1 ? 1 : 0;

        CHECK(r.budget == 6);
        CHECK(r.oracle_queries_total <= r.budget + 1);
        std::size_t iterations = 0;
        std::size_t queries = 1;
        for (const auto &round : r.rounds) {
            iterations += round.iterations;
            queries += round.iterations + 1;
        }
        CHECK(iterations == r.grover_iterations_total);
        CHECK(queries == r.oracle_queries_total);
        for (std::size_t i = 1; i < r.threshold_trace.size(); ++i) {
            CHECK(r.threshold_trace[i].tau < r.threshold_trace[i - 1].tau);
        }
        CHECK(r.best_estimate == doctest::Approx(qae_estimate_from_outcome(r.best_outcome, 5)));
    }
    CHECK(hits >= 150);
}

TEST_CASE("single item search returns immediately") {
    const std::vector<std::uint64_t> outcomes = {3};
    const auto problem = synthetic_problem_from_outcomes(outcomes, 3);
    Rng rng(1);
    const auto r = durr_hoyer(problem, MinFindParams{}, rng);
    CHECK(r.best_marker == 0);
    CHECK(r.best_outcome == 3);
    CHECK(r.rounds.empty());
    CHECK(r.oracle_queries_total == 1);
}

TEST_CASE("circuit diffusion matches the cached reflection") {
    const std::vector<double> phis = {0.7, 0.2, 0.45};
    const auto problem = synthetic_problem_from_amplitudes(phis, 3);
    const auto &layout = problem.prepared.layout();
    std::vector<std::size_t> all(layout.total_qubits());
    for (std::size_t q = 0; q < all.size(); ++q) {
        all[q] = q;
    }
    const auto oracle = build_folded_threshold_oracle(layout, 2);
    auto cached = problem.prepared;
    auto circuit = problem.prepared;
    for (int i = 0; i < 3; ++i) {
        apply(cached, oracle);
        reflect_about(cached, problem.prepared);
        apply(circuit, oracle);
        apply(circuit, problem.preparation->adjoint());
        apply(circuit, build_reflection_about_zero(all));
        apply(circuit, *problem.preparation);
    }
    CHECK(max_abs_diff(cached.amplitudes(), circuit.amplitudes()) < 1e-10);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng a(seed);
        Rng b(seed);
        const auto ra = durr_hoyer(problem, MinFindParams{}, a, DiffusionMode::CachedReflection);
        const auto rb = durr_hoyer(problem, MinFindParams{}, b, DiffusionMode::Circuit);
        CHECK(ra.best_marker == rb.best_marker);
        CHECK(ra.rounds.size() == rb.rounds.size());
    }
    SearchProblem bare{problem.prepared, 3, MarkerEncoding::Compact, std::nullopt};
    Rng rng(0);
    CHECK_THROWS_AS(durr_hoyer(bare, MinFindParams{}, rng, DiffusionMode::Circuit), ValidationError);
}

TEST_CASE("Grover iterator never mixes markers") {
    const auto p = tiny_pipeline();
    p.validate();
    const auto layout = build_work_layout(p.configs, p.qoi, p.mapping.kind);
    REQUIRE(layout.total_qubits() <= 14);
    const auto q = build_grover_iterator(build_state_prep_A(p, layout), layout);
    const auto &m = layout.at(reg::kMarker);
    const std::size_t n = layout.total_qubits();
    bool diagonal = true;
    for (std::uint64_t col = 0; col < (std::uint64_t{1} << n); ++col) {
        auto s = basis_state(layout, col);
        apply(s, q);
        const auto code = m.value_in(col);
        for (std::uint64_t row = 0; row < (std::uint64_t{1} << n); ++row) {
            if (m.value_in(row) != code && std::abs(s.amplitude(row)) > 1e-12) {
                diagonal = false;
            }
        }
    }
    CHECK(diagonal);
}

TEST_CASE("state preparation A undone by its adjoint") {
    const auto p = tiny_pipeline();
    const auto layout = build_work_layout(p.configs, p.qoi, p.mapping.kind);
    const auto a = build_state_prep_A(p, layout);
    const auto start = random_state(layout, 21);
    auto s = start;
    apply(s, a);
    apply(s, a.adjoint());
    CHECK(max_abs_diff(s.amplitudes(), start.amplitudes()) < 1e-12);
}

TEST_CASE("pipeline QAE on the smoke instance") {
    const auto cfg = load_config(std::string(QLGA_CONFIG_DIR) + "/d1q2_smoke.qlga");
    const auto r = run_qae(cfg.pipeline);
    REQUIRE(r.distributions.size() == 2);
    CHECK(r.true_phi[0] == doctest::Approx(0.0));
    CHECK(r.true_phi[1] == doctest::Approx(0.25));
    CHECK(r.distributions[0][0] == doctest::Approx(1.0));
    const double l = std::pow(2.0, static_cast<double>(r.e));
    double within = 0.0;
    for (std::uint64_t y = 0; y < r.distributions[1].size(); ++y) {
        if (std::abs(r.phi_hat(y) - 0.25) <= qae_error_bound(0.25, l)) {
            within += r.distributions[1][y];
        }
    }
    CHECK(within >= 8.0 / (kPi * kPi));
}

TEST_CASE("pipeline validation") {
    auto p = tiny_pipeline();
    CHECK_NOTHROW(p.validate());
    p.minfind.lambda = 1.5;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = tiny_pipeline();
    p.minfind.budget_c = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = tiny_pipeline();
    p.qoi.acc_steps = {3};
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = tiny_pipeline();
    p.max_qubits = 8;
    CHECK_THROWS_AS(prepare_search_problem(p), CapacityError);
}
