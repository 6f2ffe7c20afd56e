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

#include "qlga/lattice.hpp"

#include "qlga/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace qlga {

namespace {

constexpr double kMatrixTolerance = 1e-10;

std::string link_text(const ReflectionLink &l) {
    return "(" + std::to_string(l.gridpoint) + ", " + std::to_string(l.channel) +
           " -> " + std::to_string(l.partner) + ")";
}

struct HeadOnStates {
    std::uint64_t east_west = 0;
    std::uint64_t north_south = 0;
};

HeadOnStates head_on_states(const LatticeSpec &spec) {
    if (spec.dims != 2 || spec.q != 4) {
        throw ValidationError("HPP-type collisions need a D2Q4 lattice");
    }
    auto find = [&](Velocity v) {
        const auto it = std::find(spec.velocities.begin(), spec.velocities.end(), v);
        if (it == spec.velocities.end()) {
            throw ValidationError("HPP-type collisions need the four axis velocities");
        }
        return std::uint64_t{1} << (it - spec.velocities.begin());
    };
    return {find({1, 0}) | find({-1, 0}), find({0, 1}) | find({0, -1})};
}

std::vector<Amplitude> identity_matrix(std::size_t dim) {
    std::vector<Amplitude> m(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        m[i * dim + i] = 1.0;
    }
    return m;
}

} // namespace

LatticeSpec LatticeSpec::d1q2(std::size_t gridpoints) {
    LatticeSpec spec;
    spec.dims = 1;
    spec.shape = {gridpoints};
    spec.q = 2;
    spec.velocities = {{1, 0}, {-1, 0}};
    return spec;
}

LatticeSpec LatticeSpec::d2q4(std::size_t nx, std::size_t ny) {
    LatticeSpec spec;
    spec.dims = 2;
    spec.shape = {nx, ny};
    spec.q = 4;
    spec.velocities = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return spec;
}

std::size_t LatticeSpec::num_gridpoints() const {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                           std::multiplies<>());
}

bool LatticeSpec::is_rest(std::size_t channel) const {
    const auto &v = velocities.at(channel);
    return v[0] == 0 && v[1] == 0;
}

int LatticeSpec::channel_mass(std::size_t channel) const {
    return is_rest(channel) ? rest_weight : 1;
}

std::array<std::size_t, 2> LatticeSpec::coordinates(std::size_t gridpoint) const {
    if (gridpoint >= num_gridpoints()) {
        throw std::out_of_range("gridpoint " + std::to_string(gridpoint) +
                                " outside the lattice");
    }
    if (dims == 1) {
        return {gridpoint, 0};
    }
    return {gridpoint % shape[0], gridpoint / shape[0]};
}

std::size_t LatticeSpec::gridpoint_at(std::array<std::size_t, 2> coords) const {
    if (coords[0] >= shape[0] || (dims == 2 && coords[1] >= shape[1]) ||
        (dims == 1 && coords[1] != 0)) {
        throw std::out_of_range("coordinates outside the lattice");
    }
    return dims == 1 ? coords[0] : coords[1] * shape[0] + coords[0];
}

std::size_t LatticeSpec::neighbor(std::size_t gridpoint, Velocity v) const {
    auto c = coordinates(gridpoint);
    for (std::size_t d = 0; d < dims; ++d) {
        const auto n = static_cast<long long>(shape[d]);
        const long long moved = static_cast<long long>(c[d]) + v[d];
        c[d] = static_cast<std::size_t>(((moved % n) + n) % n);
    }
    return gridpoint_at(c);
}

void LatticeSpec::add_reflection(std::size_t gridpoint, std::size_t a, std::size_t b) {
    boundary_links.insert({gridpoint, a, b});
    boundary_links.insert({gridpoint, b, a});
}

std::vector<ReflectionLink> LatticeSpec::reflection_pairs() const {
    std::vector<ReflectionLink> out;
    for (const auto &l : boundary_links) {
        if (l.channel < l.partner) {
            out.push_back(l);
        }
    }
    return out;
}

std::size_t LatticeSpec::boundary_gridpoint_count() const {
    std::set<std::size_t> points;
    for (const auto &l : boundary_links) {
        points.insert(l.gridpoint);
    }
    return points.size();
}

bool LatticeSpec::same_discretization(const LatticeSpec &other) const {
    return dims == other.dims && shape == other.shape && q == other.q &&
           velocities == other.velocities && rest_weight == other.rest_weight &&
           periodic == other.periodic;
}

void LatticeSpec::validate() const {
    if (dims != 1 && dims != 2) {
        throw ValidationError("dims must be 1 or 2");
    }
    if (shape.size() != dims) {
        throw ValidationError("shape needs one extent per dimension");
    }
    for (std::size_t extent : shape) {
        if (extent == 0) {
            throw ValidationError("shape extents must be positive");
        }
    }
    if (q == 0 || velocities.size() != q) {
        throw ValidationError("need exactly q = " + std::to_string(q) +
                              " channel velocities");
    }
    for (std::size_t c = 0; c < q; ++c) {
        const auto &v = velocities[c];
        if (std::abs(v[0]) > 1 || std::abs(v[1]) > 1) {
            throw ValidationError("channel " + std::to_string(c) +
                                  " moves more than one gridpoint per step");
        }
        if (dims == 1 && v[1] != 0) {
            throw ValidationError("channel " + std::to_string(c) +
                                  " has a y component on a 1D lattice");
        }
    }
    if (rest_weight < 1) {
        throw ValidationError("rest_weight must be positive");
    }
    if (!periodic) {
        throw ValidationError(
            "only periodic closure is supported; model walls with reflection links");
    }
    const std::size_t ng = num_gridpoints();
    for (const auto &o : initial_occupancy) {
        if (o.gridpoint >= ng) {
            throw ValidationError("occupied gridpoint " + std::to_string(o.gridpoint) +
                                  " outside the lattice");
        }
        if (o.channel >= q) {
            throw ValidationError("unknown channel index " + std::to_string(o.channel));
        }
    }
    std::map<Occupancy, std::size_t> partner_of;
    for (const auto &l : boundary_links) {
        if (l.gridpoint >= ng) {
            throw ValidationError("reflection gridpoint " + std::to_string(l.gridpoint) +
                                  " outside the lattice");
        }
        if (l.channel >= q || l.partner >= q) {
            throw ValidationError("unknown channel index in reflection link " +
                                  link_text(l));
        }
        if (l.channel == l.partner) {
            throw ValidationError("reflection link " + link_text(l) +
                                  " maps a channel onto itself");
        }
        if (is_rest(l.channel) || is_rest(l.partner)) {
            throw ValidationError("rest channel cannot reflect " + link_text(l));
        }
        const auto [it, inserted] =
            partner_of.emplace(Occupancy{l.gridpoint, l.channel}, l.partner);
        if (!inserted) {
            throw ValidationError("overlapping reflection links at " + link_text(l));
        }
    }
    for (const auto &l : boundary_links) {
        if (!boundary_links.contains({l.gridpoint, l.partner, l.channel})) {
            throw ValidationError("non-mutual reflection pair " + link_text(l));
        }
    }
}

std::vector<Amplitude> CollisionModel::local_unitary(const LatticeSpec &spec) const {
    const std::size_t dim = std::size_t{1} << spec.q;
    switch (kind) {
    case CollisionKind::Identity:
        return identity_matrix(dim);
    case CollisionKind::HppPermutation: {
        const auto s = head_on_states(spec);
        auto m = identity_matrix(dim);
        m[s.east_west * dim + s.east_west] = 0.0;
        m[s.north_south * dim + s.north_south] = 0.0;
        m[s.north_south * dim + s.east_west] = 1.0;
        m[s.east_west * dim + s.north_south] = 1.0;
        return m;
    }
    case CollisionKind::ParametrizedRotation: {
        const auto s = head_on_states(spec);
        auto m = identity_matrix(dim);
        const double c = std::cos(theta);
        const double sn = std::sin(theta);
        m[s.east_west * dim + s.east_west] = c;
        m[s.north_south * dim + s.east_west] = sn;
        m[s.east_west * dim + s.north_south] = -sn;
        m[s.north_south * dim + s.north_south] = c;
        return m;
    }
    case CollisionKind::Custom:
        if (matrix.size() != dim * dim) {
            throw ValidationError("custom collision matrix must be " +
                                  std::to_string(dim) + "x" + std::to_string(dim));
        }
        return matrix;
    }
    return identity_matrix(dim);
}

int QoISpec::weight_of(std::size_t channel_slot, const LatticeSpec &spec) const {
    if (weights.empty()) {
        return spec.channel_mass(channels.at(channel_slot));
    }
    return weights.at(channel_slot);
}

std::uint64_t QoISpec::f_max(const LatticeSpec &spec) const {
    std::uint64_t per_point = 0;
    for (std::size_t s = 0; s < channels.size(); ++s) {
        per_point += static_cast<std::uint64_t>(weight_of(s, spec));
    }
    return acc_steps.size() * region.size() * per_point;
}

std::size_t QoISpec::accumulation_qubits(const LatticeSpec &spec) const {
    return std::max<std::size_t>(1, std::bit_width(f_max(spec)));
}

void QoISpec::validate(const LatticeSpec &spec) const {
    const std::size_t ng = spec.num_gridpoints();
    std::set<std::size_t> seen;
    for (std::size_t g : region) {
        if (g >= ng) {
            throw ValidationError("region gridpoint " + std::to_string(g) +
                                  " outside the lattice");
        }
        if (!seen.insert(g).second) {
            throw ValidationError("region gridpoint " + std::to_string(g) +
                                  " listed twice");
        }
    }
    seen.clear();
    for (std::size_t c : channels) {
        if (c >= spec.q) {
            throw ValidationError("unknown channel index " + std::to_string(c) +
                                  " in qoi");
        }
        if (!seen.insert(c).second) {
            throw ValidationError("qoi channel " + std::to_string(c) + " listed twice");
        }
    }
    if (!weights.empty() && weights.size() != channels.size()) {
        throw ValidationError("qoi needs one weight per channel");
    }
    for (int w : weights) {
        if (w < 1) {
            throw ValidationError("qoi weights must be positive integers");
        }
    }
    seen.clear();
    for (std::size_t t : acc_steps) {
        if (t == 0) {
            throw ValidationError("accumulation steps are 1-based");
        }
        if (!seen.insert(t).second) {
            throw ValidationError("accumulation step " + std::to_string(t) +
                                  " listed twice");
        }
    }
}

std::size_t qubit_index(const LatticeSpec &spec, std::size_t gridpoint,
                        std::size_t channel) {
    if (gridpoint >= spec.num_gridpoints() || channel >= spec.q) {
        throw std::out_of_range("(gridpoint " + std::to_string(gridpoint) +
                                ", channel " + std::to_string(channel) +
                                ") outside the lattice");
    }
    return gridpoint * spec.q + channel;
}

CircuitBlock build_initial_conditions(const LatticeSpec &spec, std::size_t base_offset) {
    CircuitBlock block("initial");
    for (const auto &o : spec.initial_occupancy) {
        block.push(CircuitOp::x(base_offset + qubit_index(spec, o.gridpoint, o.channel)));
    }
    return block;
}

CircuitBlock build_streaming(const LatticeSpec &spec, std::size_t base_offset) {
    // Each channel's shift is a gridpoint permutation. A cycle p0 -> p1 -> ...
    // is a rotation by one of the occupancies along it, done as two
    // reversals: L - 1 swaps in two layers of disjoint swaps.
    const std::size_t ng = spec.num_gridpoints();
    CircuitBlock first("streaming");
    CircuitBlock second;
    for (std::size_t c = 0; c < spec.q; ++c) {
        if (spec.is_rest(c)) {
            continue;
        }
        std::vector<bool> visited(ng, false);
        for (std::size_t start = 0; start < ng; ++start) {
            if (visited[start]) {
                continue;
            }
            std::vector<std::size_t> cycle;
            for (std::size_t g = start; !visited[g]; g = spec.neighbor(g, spec.velocities[c])) {
                visited[g] = true;
                cycle.push_back(base_offset + qubit_index(spec, g, c));
            }
            const std::size_t len = cycle.size();
            for (std::size_t i = 0; i < len / 2; ++i) {
                first.push(CircuitOp::swap(cycle[i], cycle[len - 1 - i]));
            }
            for (std::size_t i = 0; i < (len - 1) / 2; ++i) {
                second.push(CircuitOp::swap(cycle[1 + i], cycle[len - 1 - i]));
            }
        }
    }
    first.append(second);
    return first;
}

CircuitBlock build_collision(const LatticeSpec &spec, const CollisionModel &model,
                             std::size_t base_offset) {
    CircuitBlock block("collision");
    if (model.kind == CollisionKind::Identity) {
        return block;
    }
    const auto local = model.local_unitary(spec);
    std::vector<std::size_t> targets(spec.q);
    for (std::size_t g = 0; g < spec.num_gridpoints(); ++g) {
        for (std::size_t c = 0; c < spec.q; ++c) {
            targets[c] = base_offset + qubit_index(spec, g, c);
        }
        block.push(CircuitOp::unitary(targets, local));
    }
    return block;
}

CircuitBlock build_boundary(const LatticeSpec &spec, std::size_t base_offset) {
    spec.validate();
    CircuitBlock block("boundary");
    for (const auto &l : spec.reflection_pairs()) {
        block.push(CircuitOp::swap(base_offset + qubit_index(spec, l.gridpoint, l.channel),
                                   base_offset + qubit_index(spec, l.gridpoint, l.partner)));
    }
    return block;
}

CircuitBlock build_time_step(const LatticeSpec &spec, const CollisionModel &model,
                             std::size_t base_offset) {
    CircuitBlock step("time_step");
    step.append(build_collision(spec, model, base_offset));
    step.append(build_streaming(spec, base_offset));
    step.append(build_boundary(spec, base_offset));
    return step;
}

ConservationReport verify_conservation(const CollisionModel &model,
                                       const LatticeSpec &spec) {
    const auto m = model.local_unitary(spec);
    const std::size_t dim = std::size_t{1} << spec.q;
    struct Invariants {
        int mass = 0;
        int px = 0;
        int py = 0;
        bool operator==(const Invariants &) const = default;
    };
    std::vector<Invariants> cls(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t c = 0; c < spec.q; ++c) {
            if ((x >> c) & 1U) {
                cls[x].mass += spec.channel_mass(c);
                cls[x].px += spec.velocities[c][0];
                cls[x].py += spec.velocities[c][1];
            }
        }
    }
    ConservationReport report;
    for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t y = 0; y < dim; ++y) {
            if (cls[x] == cls[y]) {
                continue;
            }
            if (std::abs(m[y * dim + x]) > kMatrixTolerance) {
                report.passed = false;
                report.violations.emplace_back(x, y);
            }
        }
    }
    return report;
}

} // namespace qlga
