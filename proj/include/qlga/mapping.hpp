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
 * Amplitude mappings that load phi(f) onto the coin qubit C, and the
 * reversible comparators they are built from.
 */

#include "qlga/parallel.hpp"

#include <optional>

namespace qlga {

struct MappingSpec {
    MappingKind kind = MappingKind::LinearComparison;
    /// WeightedRotation only; unset means pi / F_max.
    std::optional<double> alpha;

    double resolved_alpha(std::uint64_t f_max) const;
    /// 0 < alpha <= pi / F_max for WeightedRotation.
    void validate(std::uint64_t f_max) const;
    /// Closed-form coin-1 probability for a data value f.
    double phi(std::uint64_t f, std::uint64_t f_max, std::size_t data_width) const;
};

/// RotY(2^j alpha) on C controlled on data qubit j; P(C=1) = sin^2(alpha f / 2).
CircuitBlock build_weighted_rotation(const RegisterLayout &layout, double alpha);

/// Hadamards on AM, [AM < D] onto C, Hadamards on AM again;
/// P(C=1) = f / 2^n.
CircuitBlock build_linear_comparison(const RegisterLayout &layout);

/// Flips `target` exactly when value(a) < value(b). Ancilla free: b is
/// overwritten by a XOR b, tested bit by bit from the top, then restored.
/// Throws ValidationError on a width mismatch.
CircuitBlock build_comparator_less_than(std::span<const std::size_t> a,
                                        std::span<const std::size_t> b,
                                        std::size_t target);

/// Flips `target` exactly when value(reg) < constant, one multi-controlled X
/// per set bit of the constant. constant == 2^width flips everything.
CircuitBlock build_constant_comparator(std::span<const std::size_t> reg,
                                       std::uint64_t constant, std::size_t target);

CircuitBlock build_mapping(const RegisterLayout &layout, const MappingSpec &mapping,
                           std::uint64_t f_max);

} // namespace qlga
