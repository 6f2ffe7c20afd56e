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
 * Single-lattice description and the circuit builders for one QLGA time
 * step in the linear encoding: one qubit per (gridpoint, velocity channel)
 * occupancy bit, qubit = g * q + c with g the row-major gridpoint index
 * (x fastest).
 */

#include "qlga/simulator.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <set>
#include <vector>

namespace qlga {

/// Displacement per time step in lattice units; the second component is
/// unused for 1D lattices. The rest channel has the zero vector.
using Velocity = std::array<int, 2>;

struct Occupancy {
    std::size_t gridpoint = 0;
    std::size_t channel = 0;

    auto operator<=>(const Occupancy &) const = default;
};

/// Reflection link (gridpoint, channel) -> partner. Links must come in
/// mutual pairs; `LatticeSpec::reflection_pairs` folds them into swaps.
struct ReflectionLink {
    std::size_t gridpoint = 0;
    std::size_t channel = 0;
    std::size_t partner = 0;

    auto operator<=>(const ReflectionLink &) const = default;
};

struct LatticeSpec {
    std::size_t dims = 1;
    std::vector<std::size_t> shape{4};
    std::size_t q = 2;
    std::vector<Velocity> velocities{{1, 0}, {-1, 0}};
    int rest_weight = 2;
    std::set<Occupancy> initial_occupancy;
    std::set<ReflectionLink> boundary_links;
    bool periodic = true;

    /// D1Q2 ring: channel 0 moves right, channel 1 moves left.
    static LatticeSpec d1q2(std::size_t gridpoints);
    /// D2Q4 box, channels E, N, W, S.
    static LatticeSpec d2q4(std::size_t nx, std::size_t ny);

    std::size_t num_gridpoints() const;
    std::size_t num_qubits() const { return q * num_gridpoints(); }
    bool is_rest(std::size_t channel) const;
    /// Mass in lattice units: rest_weight for the rest channel, 1 otherwise.
    int channel_mass(std::size_t channel) const;
    std::array<std::size_t, 2> coordinates(std::size_t gridpoint) const;
    std::size_t gridpoint_at(std::array<std::size_t, 2> coords) const;
    /// Periodic neighbour reached by moving along `v`.
    std::size_t neighbor(std::size_t gridpoint, Velocity v) const;

    /// Adds the mutual link pair (g, a) <-> (g, b).
    void add_reflection(std::size_t gridpoint, std::size_t a, std::size_t b);
    /// Canonical pairs (channel < partner), one per swap.
    std::vector<ReflectionLink> reflection_pairs() const;
    /// N_bc: number of distinct gridpoints carrying reflection links.
    std::size_t boundary_gridpoint_count() const;

    /// Same dims/shape/q/velocities/rest_weight/periodic.
    bool same_discretization(const LatticeSpec &other) const;

    /// Throws ValidationError naming the first problem found.
    void validate() const;
};

enum class CollisionKind { Identity, HppPermutation, ParametrizedRotation, Custom };

struct CollisionModel {
    CollisionKind kind = CollisionKind::Identity;
    /// Rotation angle for ParametrizedRotation, radians.
    double theta = 0.0;
    /// Row-major 2^q x 2^q, Custom only.
    std::vector<Amplitude> matrix;

    static CollisionModel identity() { return {}; }
    static CollisionModel hpp() { return {CollisionKind::HppPermutation, 0.0, {}}; }
    static CollisionModel rotation(double theta) {
        return {CollisionKind::ParametrizedRotation, theta, {}};
    }
    static CollisionModel custom(std::vector<Amplitude> m) {
        return {CollisionKind::Custom, 0.0, std::move(m)};
    }

    /// The per-gridpoint q-qubit unitary (local occupancy bit c = channel c).
    /// HppPermutation swaps the two head-on pair states; ParametrizedRotation
    /// rotates |EW> toward |NS> by theta and is the identity elsewhere.
    std::vector<Amplitude> local_unitary(const LatticeSpec &spec) const;
};

/// Weighted occupancy sum over `region` x `channels`, accumulated at the end
/// of each time step listed in `acc_steps` (1-based).
struct QoISpec {
    std::vector<std::size_t> region;
    std::vector<std::size_t> channels;
    /// One weight per entry of `channels`; empty means channel masses.
    std::vector<int> weights;
    std::vector<std::size_t> acc_steps;

    int weight_of(std::size_t channel_slot, const LatticeSpec &spec) const;
    /// |acc_steps| * |region| * sum of channel weights.
    std::uint64_t f_max(const LatticeSpec &spec) const;
    /// Bits needed to hold every value in [0, F_max] without wrap.
    std::size_t accumulation_qubits(const LatticeSpec &spec) const;

    void validate(const LatticeSpec &spec) const;
};

std::size_t qubit_index(const LatticeSpec &spec, std::size_t gridpoint,
                        std::size_t channel);

CircuitBlock build_initial_conditions(const LatticeSpec &spec,
                                      std::size_t base_offset = 0);
CircuitBlock build_streaming(const LatticeSpec &spec, std::size_t base_offset = 0);
CircuitBlock build_collision(const LatticeSpec &spec, const CollisionModel &model,
                             std::size_t base_offset = 0);
CircuitBlock build_boundary(const LatticeSpec &spec, std::size_t base_offset = 0);
/// collision, then streaming, then boundary.
CircuitBlock build_time_step(const LatticeSpec &spec, const CollisionModel &model,
                             std::size_t base_offset = 0);

struct ConservationReport {
    bool passed = true;
    /// (from, to) local occupancy pairs with a nonzero matrix element across
    /// different (mass, momentum) classes.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> violations;
};

ConservationReport verify_conservation(const CollisionModel &model,
                                       const LatticeSpec &spec);

} // namespace qlga
