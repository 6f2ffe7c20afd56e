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

#include "qlga/error.hpp"
#include "qlga/simulator.hpp"

#include <doctest.h>

#include <numbers>

using namespace qlga;
using namespace qlga::testing;

namespace {

constexpr double kPi = std::numbers::pi;
const Amplitude kI(0.0, 1.0);

// Reference: build the full 2^n matrix action column by column.
std::vector<Amplitude> reference_apply(const std::vector<Amplitude> &in, std::size_t n,
                                       const std::vector<std::size_t> &targets,
                                       const std::vector<Amplitude> &m,
                                       const std::vector<Control> &controls) {
    std::vector<Amplitude> out(in.size(), 0.0);
    const std::size_t dim = std::size_t{1} << targets.size();
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
        bool active = true;
        for (const auto &c : controls) {
            active = active && (bit(i, c.qubit) == c.polarity);
        }
        if (!active) {
            out[i] += in[i];
            continue;
        }
        const auto col = gather(i, targets);
        for (std::size_t row = 0; row < dim; ++row) {
            out[scatter(i, targets, row)] += m[row * dim + col] * in[i];
        }
    }
    return out;
}

std::vector<Amplitude> to_vec(const StateVector &s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

} // namespace

TEST_CASE("single-qubit gates follow their matrices") {
    const auto layout = flat_layout(1);
    auto s = basis_state(layout, 0);
    apply(s, CircuitOp::ry(0, 0.7));
    CHECK(s.amplitude(0).real() == doctest::Approx(std::cos(0.35)));
    CHECK(s.amplitude(1).real() == doctest::Approx(std::sin(0.35)));

    s = basis_state(layout, 1);
    apply(s, CircuitOp::phase(0, 0.3));
    CHECK(std::abs(s.amplitude(1) - std::exp(kI * 0.3)) < 1e-14);

    s = basis_state(layout, 0);
    apply(s, CircuitOp::h(0));
    apply(s, CircuitOp::z(0));
    apply(s, CircuitOp::h(0));
    CHECK(std::abs(s.amplitude(1) - 1.0) < 1e-14);
}

TEST_CASE("controlled gates match a dense reference on random states") {
    const std::size_t n = 5;
    const auto layout = flat_layout(n);
    const double r = 1.0 / std::sqrt(2.0);
    struct Case {
        CircuitOp op;
        std::vector<Amplitude> matrix;
    };
    std::vector<Case> cases = {
        {CircuitOp::x(2).with_control({0, true}), {0, 1, 1, 0}},
        {CircuitOp::h(4).with_control({1, false}).with_control({3, true}), {r, r, r, -r}},
        {CircuitOp::ry(1, 1.1).with_control({4, false}),
         {std::cos(0.55), -std::sin(0.55), std::sin(0.55), std::cos(0.55)}},
        {CircuitOp::phase(0, 0.4).with_control({2, true}), {1, 0, 0, std::exp(kI * 0.4)}},
        {CircuitOp::z(3), {1, 0, 0, -1}},
    };
    for (std::size_t k = 0; k < cases.size(); ++k) {
        auto s = random_state(layout, 100 + k);
        const auto expect = reference_apply(to_vec(s), n, cases[k].op.targets, cases[k].matrix,
                                            cases[k].op.controls);
        apply(s, cases[k].op);
        CHECK(max_abs_diff(s.amplitudes(), expect) < 1e-13);
    }

    // swap and a generic 2-qubit unitary with a negative control
    auto s = random_state(layout, 7);
    auto expect = reference_apply(to_vec(s), n, {1, 3},
                                  {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1},
                                  {{0, false}});
    apply(s, CircuitOp::swap(1, 3).with_control({0, false}));
    CHECK(max_abs_diff(s.amplitudes(), expect) < 1e-13);

    const double c = std::cos(0.3);
    const double sn = std::sin(0.3);
    std::vector<Amplitude> u = {c, 0, 0, kI * sn, 0, 1, 0, 0, 0, 0, 1, 0, kI * sn, 0, 0, c};
    s = random_state(layout, 8);
    expect = reference_apply(to_vec(s), n, {4, 2}, u, {{1, false}});
    apply(s, CircuitOp::unitary({4, 2}, u).with_control({1, false}));
    CHECK(max_abs_diff(s.amplitudes(), expect) < 1e-13);
}

TEST_CASE("serial and parallel backends agree") {
    const std::size_t n = 9;
    const auto layout = flat_layout(n);
    CircuitBlock block;
    block.push(CircuitOp::h(0));
    block.push(CircuitOp::ry(5, 0.9).with_control({0, true}).with_control({7, false}));
    block.push(CircuitOp::swap(2, 8).with_control({3, true}));
    block.push(CircuitOp::phase(6, 1.3).with_control({1, true}));
    block.push(CircuitOp::unitary({1, 4}, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}));
    block.append(build_qft(std::vector<std::size_t>{3, 4, 5, 6}, false));
    auto a = random_state(layout, 3);
    auto b = a;
    b.set_backend(Backend::Serial);
    apply(a, block);
    apply(b, block);
    CHECK(max_abs_diff(a.amplitudes(), b.amplitudes()) < 1e-12);

    const auto axis = random_state(layout, 4);
    reflect_about(a, axis);
    reflect_about(b, axis);
    CHECK(max_abs_diff(a.amplitudes(), b.amplitudes()) < 1e-12);
}

TEST_CASE("QFT matches the discrete Fourier transform") {
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto layout = flat_layout(n);
        const double dim = std::pow(2.0, static_cast<double>(n));
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            auto s = basis_state(layout, x);
            apply_qft(s, layout.at("Q"), false);
            double worst = 0.0;
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
                const Amplitude expect =
                    std::exp(kI * 2.0 * kPi * static_cast<double>(x * y) / dim) / std::sqrt(dim);
                worst = std::max(worst, std::abs(s.amplitude(y) - expect));
            }
            CHECK(worst < 1e-12);
            apply_qft(s, layout.at("Q"), true);
            CHECK(std::abs(s.amplitude(x) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("block adjoint inverts the block") {
    const auto layout = flat_layout(6);
    CircuitBlock block;
    block.push(CircuitOp::ry(0, 0.4));
    block.push(CircuitOp::phase(2, 0.8).with_control({0, true}));
    block.push(CircuitOp::swap(1, 5));
    block.push(CircuitOp::unitary({3}, {0.6, 0.8 * kI, 0.8 * kI, 0.6}));
    block.append(build_qft(std::vector<std::size_t>{1, 2, 3}, false));
    const auto start = random_state(layout, 11);
    auto s = start;
    apply(s, block);
    apply(s, block.adjoint());
    CHECK(max_abs_diff(s.amplitudes(), start.amplitudes()) < 1e-12);
}

TEST_CASE("registers, marginals and conditioning") {
    RegisterLayout layout;
    layout.add("A", 2).add("B", 0).add("C", 3);
    CHECK(layout.total_qubits() == 5);
    CHECK(layout.at("C").offset == 2);
    CHECK(layout.at("C").value_in(0b10111) == 0b101);
    CHECK_THROWS(layout.at("Z"));

    StateVector s(layout);
    apply(s, CircuitOp::h(0));
    apply(s, CircuitOp::x(3).with_control({0, true}));
    const auto pa = marginal(s, layout.at("A"));
    CHECK(pa[0] == doctest::Approx(0.5));
    CHECK(pa[1] == doctest::Approx(0.5));
    const auto pc = marginal(s, layout.at("C"));
    CHECK(pc[2] == doctest::Approx(0.5));

    const auto cond = conditional_state(s, layout.at("A"), 1);
    CHECK(std::abs(cond.amplitude(0b01001)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(conditional_state(s, layout.at("A"), 2), NumericalError);
    CHECK(fidelity(s, s) == doctest::Approx(1.0));
}

TEST_CASE("sampling is seeded and follows the Born rule") {
    const auto layout = flat_layout(2);
    StateVector s(layout);
    apply(s, CircuitOp::ry(0, 2.0 * std::asin(std::sqrt(0.3))));
    const auto qubits = layout.at("Q").qubits();
    Rng a(5);
    Rng b(5);
    std::size_t ones = 0;
    const std::size_t draws = 20000;
    for (std::size_t i = 0; i < draws; ++i) {
        const auto va = sample_value(s, qubits, a);
        CHECK(va == sample_value(s, qubits, b));
        ones += va == 1 ? 1 : 0;
    }
    CHECK(static_cast<double>(ones) / draws == doctest::Approx(0.3).epsilon(0.05));

    Rng c(9);
    const auto smp = sample(s, layout.at("Q"), c);
    CHECK(std::abs(smp.collapsed.amplitude(smp.value)) == doctest::Approx(1.0));
}

TEST_CASE("capacity and validation errors") {
    CHECK_THROWS_AS(StateVector(flat_layout(12), 10), CapacityError);
    CHECK_THROWS_AS(CircuitOp::x(1).with_control({1, true}).validate(3), ValidationError);
    CHECK_THROWS_AS(CircuitOp::unitary({0}, {1, 1, 0, 1}).validate(2), NumericalError);
    CHECK_THROWS_AS(CircuitOp::x(4).validate(3), std::out_of_range);
    auto s = StateVector(flat_layout(2));
    CHECK_THROWS(apply(s, CircuitOp::x(3)));
}

TEST_CASE("ASAP depth") {
    CircuitBlock block;
    block.push(CircuitOp::h(0));
    block.push(CircuitOp::h(1));
    CHECK(circuit_depth(block) == 1);
    block.push(CircuitOp::x(1).with_control({0, true}));
    CHECK(circuit_depth(block) == 2);
    block.push(CircuitOp::h(2));
    CHECK(circuit_depth(block) == 2);
    CHECK(circuit_depth(CircuitBlock{}) == 0);
}
