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
 * Superposed lattice configurations: marker register encodings, the full
 * register layout, marker-controlled initial/boundary semantics and the
 * overlap-sharing plan that trims marker controls.
 */

#include "qlga/lattice.hpp"
#include "qlga/simulator.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace qlga {

/// Register names used by every pipeline layout, in layout order.
namespace reg {
inline constexpr std::string_view kBase = "B";
inline constexpr std::string_view kMarker = "M";
inline constexpr std::string_view kData = "D";
inline constexpr std::string_view kMappingAncilla = "AM";
inline constexpr std::string_view kCoin = "C";
inline constexpr std::string_view kEstimation = "E";
inline constexpr std::string_view kGrover = "G";
} // namespace reg

enum class MarkerEncoding { Compact, OneHot };
enum class MappingKind { WeightedRotation, LinearComparison };

struct ConfigurationSet {
    std::vector<LatticeSpec> lattices;
    MarkerEncoding encoding = MarkerEncoding::Compact;

    std::size_t size() const noexcept { return lattices.size(); }
    /// ceil(log2 |L|) for Compact, |L| for OneHot.
    std::size_t marker_width() const;
    /// Marker basis value assigned to lattice j: j, or the unit bitstring e_j.
    BasisValue marker_code(std::size_t lattice) const;
    std::optional<std::size_t> lattice_of_code(BasisValue code) const;
    const LatticeSpec &discretization() const;

    /// At least one lattice; all share one discretization and validate.
    void validate() const;
};

RegisterLayout build_layout(const ConfigurationSet &configs, const QoISpec &qoi,
                            std::size_t estimation_bits, MappingKind mapping);
/// B, M, D, AM, C only: enough for evolution, accumulation and mapping.
RegisterLayout build_work_layout(const ConfigurationSet &configs, const QoISpec &qoi,
                                 MappingKind mapping);

/// Uniform superposition over the assigned marker states.
CircuitBlock build_marker_prep(const ConfigurationSet &configs,
                               const RegisterLayout &layout);

/// Exact preparation of sum_v sqrt(weights[v]) |v> (weights normalized) on
/// `qubits`, as a tree of multi-controlled RotY gates. Zero-weight subtrees
/// emit nothing.
CircuitBlock build_amplitude_tree(std::span<const std::size_t> qubits,
                                  std::span<const double> weights);

/// Marker controls that select lattice j alone.
std::vector<Control> marker_controls(std::size_t lattice,
                                     const ConfigurationSet &configs,
                                     const RegisterLayout &layout);

CircuitBlock controlled_on_marker(const CircuitBlock &block, std::size_t lattice,
                                  const ConfigurationSet &configs,
                                  const RegisterLayout &layout);

enum class FeatureKind { InitialCondition, Boundary };
enum class SemanticsMode { Naive, Shared };

/// One configuration-specific element: an occupied (gridpoint, channel) for
/// initial conditions, or a reflection swap (gridpoint, channel, partner).
struct SemanticElement {
    std::size_t gridpoint = 0;
    std::size_t channel = 0;
    std::size_t partner = 0;

    auto operator<=>(const SemanticElement &) const = default;
};

struct FeatureGroup {
    FeatureKind kind = FeatureKind::Boundary;
    std::vector<SemanticElement> feature;
    std::vector<std::size_t> members;
    /// One marker control pattern per emitted copy of the feature. A single
    /// empty pattern means the feature is applied uncontrolled.
    std::vector<std::vector<Control>> applications;
};

/// Groups elements by the exact set of lattices that carry them. A group is
/// emitted once with the shared control bits when its members' Compact codes
/// form a subcube, uncontrolled when it is a boundary feature common to all
/// lattices, and once per member (fully controlled) otherwise. Naive mode
/// emits every element once per lattice with full controls.
std::vector<FeatureGroup> plan_shared_semantics(const ConfigurationSet &configs,
                                                const RegisterLayout &layout,
                                                FeatureKind kind,
                                                SemanticsMode mode = SemanticsMode::Shared);

CircuitBlock build_parallel_initial_conditions(const ConfigurationSet &configs,
                                               const RegisterLayout &layout,
                                               SemanticsMode mode = SemanticsMode::Shared);
CircuitBlock build_parallel_step(const ConfigurationSet &configs,
                                 const CollisionModel &collision,
                                 const RegisterLayout &layout,
                                 SemanticsMode mode = SemanticsMode::Shared);
void run_parallel_evolution(const ConfigurationSet &configs,
                            const CollisionModel &collision, std::size_t steps,
                            StateVector &state,
                            SemanticsMode mode = SemanticsMode::Shared);

/// Ops carrying at least one control.
std::size_t count_controlled_ops(const CircuitBlock &block);

} // namespace qlga
