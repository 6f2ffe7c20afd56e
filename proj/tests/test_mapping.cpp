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
#include "qlga/mapping.hpp"

#include <doctest.h>

#include <numbers>

using namespace qlga;
using namespace qlga::testing;

namespace {

constexpr double kPi = std::numbers::pi;

RegisterLayout mapping_layout(std::size_t n, bool ancilla) {
    RegisterLayout layout;
    layout.add(std::string(reg::kData), n);
    layout.add(std::string(reg::kMappingAncilla), ancilla ? n : 0);
    layout.add(std::string(reg::kCoin), 1);
    return layout;
}

double coin_one(const StateVector &s) { return marginal(s, s.layout().at(reg::kCoin))[1]; }

} // namespace

TEST_CASE("comparator a < b on every input") {
    for (std::size_t w = 1; w <= 3; ++w) {
        std::vector<std::size_t> a(w), b(w);
        for (std::size_t i = 0; i < w; ++i) {
            a[i] = i;
            b[i] = w + i;
        }
        const std::size_t target = 2 * w;
        const std::size_t n = 2 * w + 1;
        const auto block = build_comparator_less_than(a, b, target);
        const auto layout = flat_layout(n);
        const auto in = labelled_state(layout);
        auto out = in;
        apply(out, block);
        bool ok = true;
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
            const auto va = gather(i, a);
            const auto vb = gather(i, b);
            const auto j = va < vb ? i ^ (std::uint64_t{1} << target) : i;
            ok = ok && out.amplitude(j) == in.amplitude(i);
        }
        CHECK(ok);
    }
    const std::vector<std::size_t> a = {0, 1};
    const std::vector<std::size_t> b = {2};
    CHECK_THROWS_AS(build_comparator_less_than(a, b, 3), ValidationError);
}

TEST_CASE("constant comparator on every input and constant") {
    const std::vector<std::size_t> r = {0, 1, 2};
    for (std::uint64_t c = 0; c <= 8; ++c) {
        const auto block = build_constant_comparator(r, c, 3);
        const auto layout = flat_layout(4);
        const auto in = labelled_state(layout);
        auto out = in;
        apply(out, block);
        bool ok = true;
        for (std::uint64_t i = 0; i < 16; ++i) {
            const auto j = (i & 7) < c ? i ^ 8 : i;
            ok = ok && out.amplitude(j) == in.amplitude(i);
        }
        CHECK(ok);
    }
    CHECK_THROWS_AS(build_constant_comparator(r, 9, 3), ValidationError);
}

TEST_CASE("weighted rotation loads sin^2 of the scaled value") {
    for (std::uint64_t fmax : {3U, 4U, 6U, 7U}) {
        std::size_t n = 0;
        while ((std::uint64_t{1} << n) <= fmax) {
            ++n;
        }
        const auto layout = mapping_layout(n, false);
        const MappingSpec spec{MappingKind::WeightedRotation, std::nullopt};
        const auto block = build_mapping(layout, spec, fmax);
        double prev = -1.0;
        for (std::uint64_t f = 0; f <= fmax; ++f) {
            auto s = basis_state(layout, f);
            apply(s, block);
            const double expect = std::pow(std::sin(kPi * static_cast<double>(f) / (2.0 * fmax)), 2);
            CHECK(std::abs(coin_one(s) - expect) < 1e-10);
            CHECK(std::abs(spec.phi(f, fmax, n) - expect) < 1e-12);
            CHECK(marginal(s, layout.at(reg::kData))[f] == doctest::Approx(1.0));
            CHECK(coin_one(s) >= prev);
            prev = coin_one(s);
        }
    }
}

TEST_CASE("linear comparison loads f / 2^n") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto layout = mapping_layout(n, true);
        const std::uint64_t fmax = (std::uint64_t{1} << n) - 1;
        const MappingSpec spec{MappingKind::LinearComparison, std::nullopt};
        const auto block = build_mapping(layout, spec, fmax);
        double prev = -1.0;
        for (std::uint64_t f = 0; f < (std::uint64_t{1} << n); ++f) {
            auto s = basis_state(layout, f);
            apply(s, block);
            const double expect = static_cast<double>(f) / std::pow(2.0, static_cast<double>(n));
            CHECK(std::abs(coin_one(s) - expect) < 1e-10);
            CHECK(std::abs(spec.phi(f, fmax, n) - expect) < 1e-12);
            CHECK(marginal(s, layout.at(reg::kData))[f] == doctest::Approx(1.0));
            CHECK(coin_one(s) >= prev);
            prev = coin_one(s);
        }
    }
}

TEST_CASE("mapping acts linearly on data superpositions") {
    const auto layout = mapping_layout(3, true);
    StateVector s(layout);
    apply(s, CircuitOp::h(0));
    apply(s, CircuitOp::h(2));
    apply(s, build_linear_comparison(layout));
    // f in {0, 1, 4, 5}, each with weight 1/4
    CHECK(coin_one(s) == doctest::Approx((0.0 + 1.0 + 4.0 + 5.0) / 32.0));
}

TEST_CASE("rotation angle validation") {
    MappingSpec spec{MappingKind::WeightedRotation, kPi / 4.0};
    CHECK_NOTHROW(spec.validate(4));
    CHECK(spec.resolved_alpha(4) == doctest::Approx(kPi / 4.0));
    spec.alpha = kPi / 2.0;
    CHECK_THROWS_AS(spec.validate(4), ValidationError);
    spec.alpha = 0.0;
    CHECK_THROWS_AS(spec.validate(4), ValidationError);
    spec.alpha.reset();
    CHECK(spec.resolved_alpha(8) == doctest::Approx(kPi / 8.0));
}
