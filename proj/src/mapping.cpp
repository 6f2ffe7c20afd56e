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

#include "qlga/mapping.hpp"

#include "qlga/error.hpp"

#include <cmath>
#include <numbers>

namespace qlga {

double MappingSpec::resolved_alpha(std::uint64_t f_max) const {
    if (alpha) {
        return *alpha;
    }
    return std::numbers::pi / static_cast<double>(std::max<std::uint64_t>(f_max, 1));
}

void MappingSpec::validate(std::uint64_t f_max) const {
    if (kind != MappingKind::WeightedRotation) {
        return;
    }
    const double a = resolved_alpha(f_max);
    const double limit = std::numbers::pi / static_cast<double>(std::max<std::uint64_t>(f_max, 1));
    if (!(a > 0.0) || a > limit * (1.0 + 1e-12)) {
        throw ValidationError("mapping alpha must lie in (0, pi/F_max]");
    }
}

double MappingSpec::phi(std::uint64_t f, std::uint64_t f_max, std::size_t data_width) const {
    if (kind == MappingKind::WeightedRotation) {
        const double s = std::sin(resolved_alpha(f_max) * static_cast<double>(f) / 2.0);
        return s * s;
    }
    return static_cast<double>(f) / static_cast<double>(std::uint64_t{1} << data_width);
}

CircuitBlock build_weighted_rotation(const RegisterLayout &layout, double alpha) {
    const auto &data = layout.at(reg::kData);
    const std::size_t coin = layout.at(reg::kCoin).qubit(0);
    CircuitBlock block("weighted_rotation");
    for (std::size_t j = 0; j < data.width; ++j) {
        const double angle = std::ldexp(alpha, static_cast<int>(j));
        block.push(CircuitOp::ry(coin, angle).with_control({data.qubit(j)}));
    }
    return block;
}

CircuitBlock build_comparator_less_than(std::span<const std::size_t> a,
                                        std::span<const std::size_t> b,
                                        std::size_t target) {
    if (a.size() != b.size()) {
        throw ValidationError("comparator registers differ in width");
    }
    const std::size_t n = a.size();
    CircuitBlock mix("xor_into_b");
    for (std::size_t i = 0; i < n; ++i) {
        mix.push(CircuitOp::x(b[i]).with_control({a[i]}));
    }
    CircuitBlock block("less_than");
    block.append(mix);
    // b now holds a ^ b; the top differing bit decides.
    for (std::size_t i = n; i-- > 0;) {
        CircuitOp flip = CircuitOp::x(target);
        flip.controls.push_back({b[i], true});
        flip.controls.push_back({a[i], false});
        for (std::size_t j = i + 1; j < n; ++j) {
            flip.controls.push_back({b[j], false});
        }
        block.push(std::move(flip));
    }
    block.append(mix);
    return block;
}

CircuitBlock build_constant_comparator(std::span<const std::size_t> reg,
                                       std::uint64_t constant, std::size_t target) {
    const std::size_t n = reg.size();
    const std::uint64_t range = std::uint64_t{1} << n;
    if (constant > range) {
        throw ValidationError("comparator constant " + std::to_string(constant) +
                              " exceeds 2^" + std::to_string(n));
    }
    CircuitBlock block("less_than_constant");
    if (constant == range) {
        block.push(CircuitOp::x(target));
        return block;
    }
    for (std::size_t i = n; i-- > 0;) {
        if (((constant >> i) & 1U) == 0) {
            continue;
        }
        CircuitOp flip = CircuitOp::x(target);
        flip.controls.push_back({reg[i], false});
        for (std::size_t j = i + 1; j < n; ++j) {
            flip.controls.push_back({reg[j], ((constant >> j) & 1U) != 0});
        }
        block.push(std::move(flip));
    }
    return block;
}

CircuitBlock build_linear_comparison(const RegisterLayout &layout) {
    const auto &ancilla = layout.at(reg::kMappingAncilla);
    const auto &data = layout.at(reg::kData);
    if (ancilla.width != data.width) {
        throw ValidationError("linear comparison needs an AM register as wide as D");
    }
    CircuitBlock hadamards("am_hadamards");
    for (std::size_t q : ancilla.qubits()) {
        hadamards.push(CircuitOp::h(q));
    }
    CircuitBlock block("linear_comparison");
    block.append(hadamards);
    block.append(build_comparator_less_than(ancilla.qubits(), data.qubits(),
                                            layout.at(reg::kCoin).qubit(0)));
    block.append(hadamards);
    return block;
}

CircuitBlock build_mapping(const RegisterLayout &layout, const MappingSpec &mapping,
                           std::uint64_t f_max) {
    mapping.validate(f_max);
    if (mapping.kind == MappingKind::WeightedRotation) {
        return build_weighted_rotation(layout, mapping.resolved_alpha(f_max));
    }
    return build_linear_comparison(layout);
}

} // namespace qlga
