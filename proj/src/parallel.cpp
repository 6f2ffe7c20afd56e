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

#include "qlga/parallel.hpp"

#include "qlga/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace qlga {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<SemanticElement> elements_of(const LatticeSpec &spec, FeatureKind kind) {
    std::vector<SemanticElement> out;
    if (kind == FeatureKind::InitialCondition) {
        for (const auto &o : spec.initial_occupancy) {
            out.push_back({o.gridpoint, o.channel, 0});
        }
    } else {
        for (const auto &l : spec.reflection_pairs()) {
            out.push_back({l.gridpoint, l.channel, l.partner});
        }
    }
    return out;
}

CircuitOp element_op(const SemanticElement &e, FeatureKind kind,
                     const LatticeSpec &spec, std::size_t base) {
    if (kind == FeatureKind::InitialCondition) {
        return CircuitOp::x(base + qubit_index(spec, e.gridpoint, e.channel));
    }
    return CircuitOp::swap(base + qubit_index(spec, e.gridpoint, e.channel),
                           base + qubit_index(spec, e.gridpoint, e.partner));
}

/// Controls on the fixed bits when `codes` is exactly a subcube of the
/// width-bit code space.
std::optional<std::vector<Control>> subcube_controls(const std::vector<BasisValue> &codes,
                                                     const Register &marker) {
    BasisValue all_and = ~BasisValue{0};
    BasisValue all_or = 0;
    for (BasisValue c : codes) {
        all_and &= c;
        all_or |= c;
    }
    const BasisValue free = all_and ^ all_or;
    if (codes.size() != (std::size_t{1} << std::popcount(free))) {
        return std::nullopt;
    }
    std::vector<Control> controls;
    for (std::size_t b = 0; b < marker.width; ++b) {
        if (((free >> b) & 1U) == 0) {
            controls.push_back({marker.qubit(b), ((all_and >> b) & 1U) != 0});
        }
    }
    return controls;
}

CircuitBlock emit_groups(const std::vector<FeatureGroup> &groups,
                         const ConfigurationSet &configs,
                         const RegisterLayout &layout, std::string label) {
    CircuitBlock block(std::move(label));
    const auto &spec = configs.discretization();
    const std::size_t base = layout.at(reg::kBase).offset;
    for (const auto &g : groups) {
        for (const auto &pattern : g.applications) {
            for (const auto &e : g.feature) {
                block.push(element_op(e, g.kind, spec, base).with_controls(pattern));
            }
        }
    }
    return block;
}

} // namespace

std::size_t ConfigurationSet::marker_width() const {
    if (encoding == MarkerEncoding::OneHot) {
        return lattices.size();
    }
    return lattices.size() <= 1 ? 0 : std::bit_width(lattices.size() - 1);
}

BasisValue ConfigurationSet::marker_code(std::size_t lattice) const {
    if (lattice >= lattices.size()) {
        throw std::out_of_range("lattice index " + std::to_string(lattice) +
                                " out of range");
    }
    return encoding == MarkerEncoding::OneHot ? BasisValue{1} << lattice : lattice;
}

std::optional<std::size_t> ConfigurationSet::lattice_of_code(BasisValue code) const {
    if (encoding == MarkerEncoding::Compact) {
        if (code < lattices.size()) {
            return static_cast<std::size_t>(code);
        }
        return std::nullopt;
    }
    if (std::popcount(code) == 1) {
        const auto j = static_cast<std::size_t>(std::countr_zero(code));
        if (j < lattices.size()) {
            return j;
        }
    }
    return std::nullopt;
}

const LatticeSpec &ConfigurationSet::discretization() const {
    if (lattices.empty()) {
        throw ValidationError("configuration set is empty");
    }
    return lattices.front();
}

void ConfigurationSet::validate() const {
    const auto &first = discretization();
    for (std::size_t j = 0; j < lattices.size(); ++j) {
        lattices[j].validate();
        if (!lattices[j].same_discretization(first)) {
            throw ValidationError("configuration " + std::to_string(j) +
                                  " differs in discretization from configuration 0");
        }
    }
}

RegisterLayout build_work_layout(const ConfigurationSet &configs, const QoISpec &qoi,
                                 MappingKind mapping) {
    configs.validate();
    const auto &spec = configs.discretization();
    qoi.validate(spec);
    const std::size_t acc = qoi.accumulation_qubits(spec);
    RegisterLayout layout;
    layout.add(std::string(reg::kBase), spec.num_qubits())
        .add(std::string(reg::kMarker), configs.marker_width())
        .add(std::string(reg::kData), acc)
        .add(std::string(reg::kMappingAncilla),
             mapping == MappingKind::LinearComparison ? acc : 0)
        .add(std::string(reg::kCoin), 1);
    return layout;
}

RegisterLayout build_layout(const ConfigurationSet &configs, const QoISpec &qoi,
                            std::size_t estimation_bits, MappingKind mapping) {
    if (estimation_bits < 1) {
        throw ValidationError("estimation register needs e >= 1");
    }
    RegisterLayout layout = build_work_layout(configs, qoi, mapping);
    layout.add(std::string(reg::kEstimation), estimation_bits)
        .add(std::string(reg::kGrover), 1);
    return layout;
}

CircuitBlock build_amplitude_tree(std::span<const std::size_t> qubits,
                                  std::span<const double> weights) {
    const std::size_t n = qubits.size();
    if (weights.size() != (std::size_t{1} << n)) {
        throw ValidationError("amplitude tree needs 2^n weights");
    }
    CircuitBlock block("amplitude_tree");
    // Level b splits every prefix of the bits above b.
    for (std::size_t b = n; b-- > 0;) {
        const std::size_t prefixes = std::size_t{1} << (n - 1 - b);
        for (std::size_t p = 0; p < prefixes; ++p) {
            double w0 = 0.0;
            double w1 = 0.0;
            const std::size_t span = std::size_t{1} << b;
            const std::size_t start = p << (b + 1);
            for (std::size_t v = 0; v < span; ++v) {
                w0 += weights[start + v];
                w1 += weights[start + span + v];
            }
            if (w1 <= 0.0) {
                continue;
            }
            const double angle = 2.0 * std::atan2(std::sqrt(w1), std::sqrt(w0));
            CircuitOp op = CircuitOp::ry(qubits[b], angle);
            for (std::size_t hb = b + 1; hb < n; ++hb) {
                op.controls.push_back({qubits[hb], ((p >> (hb - b - 1)) & 1U) != 0});
            }
            block.push(std::move(op));
        }
    }
    return block;
}

CircuitBlock build_marker_prep(const ConfigurationSet &configs,
                               const RegisterLayout &layout) {
    const auto &marker = layout.at(reg::kMarker);
    const std::size_t count = configs.size();
    CircuitBlock block("marker_prep");
    if (configs.encoding == MarkerEncoding::OneHot) {
        block.push(CircuitOp::x(marker.qubit(0)));
        for (std::size_t k = 0; k + 1 < count; ++k) {
            const double keep = 1.0 / std::sqrt(static_cast<double>(count - k));
            block.push(CircuitOp::ry(marker.qubit(k + 1), 2.0 * std::acos(keep))
                           .with_control({marker.qubit(k)}));
            block.push(CircuitOp::x(marker.qubit(k)).with_control({marker.qubit(k + 1)}));
        }
        return block;
    }
    if (is_power_of_two(count)) {
        for (std::size_t b = 0; b < marker.width; ++b) {
            block.push(CircuitOp::h(marker.qubit(b)));
        }
        return block;
    }
    std::vector<double> weights(std::size_t{1} << marker.width, 0.0);
    std::fill(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(count), 1.0);
    const auto qubits = marker.qubits();
    block.append(build_amplitude_tree(qubits, weights));
    return block;
}

std::vector<Control> marker_controls(std::size_t lattice, const ConfigurationSet &configs,
                                     const RegisterLayout &layout) {
    const auto &marker = layout.at(reg::kMarker);
    std::vector<Control> controls;
    if (configs.encoding == MarkerEncoding::OneHot) {
        controls.push_back({marker.qubit(lattice), true});
        return controls;
    }
    const BasisValue code = configs.marker_code(lattice);
    for (std::size_t b = 0; b < marker.width; ++b) {
        controls.push_back({marker.qubit(b), ((code >> b) & 1U) != 0});
    }
    return controls;
}

CircuitBlock controlled_on_marker(const CircuitBlock &block, std::size_t lattice,
                                  const ConfigurationSet &configs,
                                  const RegisterLayout &layout) {
    const auto controls = marker_controls(lattice, configs, layout);
    return block.with_controls(controls);
}

std::vector<FeatureGroup> plan_shared_semantics(const ConfigurationSet &configs,
                                                const RegisterLayout &layout,
                                                FeatureKind kind, SemanticsMode mode) {
    const std::size_t count = configs.size();
    std::vector<FeatureGroup> groups;
    if (mode == SemanticsMode::Naive) {
        for (std::size_t j = 0; j < count; ++j) {
            auto elems = elements_of(configs.lattices[j], kind);
            if (elems.empty()) {
                continue;
            }
            groups.push_back({kind, std::move(elems), {j},
                              {marker_controls(j, configs, layout)}});
        }
        return groups;
    }

    std::map<SemanticElement, std::vector<std::size_t>> members_of;
    for (std::size_t j = 0; j < count; ++j) {
        for (const auto &e : elements_of(configs.lattices[j], kind)) {
            members_of[e].push_back(j);
        }
    }
    std::map<std::vector<std::size_t>, std::vector<SemanticElement>> by_members;
    for (const auto &[e, members] : members_of) {
        by_members[members].push_back(e);
    }

    const auto &marker = layout.at(reg::kMarker);
    for (auto &[members, feature] : by_members) {
        FeatureGroup group{kind, feature, members, {}};
        const bool everyone = members.size() == count;
        if (everyone && (kind == FeatureKind::Boundary ||
                         configs.encoding == MarkerEncoding::OneHot)) {
            group.applications.push_back({});
        } else if (configs.encoding == MarkerEncoding::Compact) {
            std::vector<BasisValue> codes;
            for (std::size_t j : members) {
                codes.push_back(configs.marker_code(j));
            }
            if (auto controls = subcube_controls(codes, marker)) {
                group.applications.push_back(std::move(*controls));
            }
        }
        if (group.applications.empty()) {
            for (std::size_t j : members) {
                group.applications.push_back(marker_controls(j, configs, layout));
            }
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

CircuitBlock build_parallel_initial_conditions(const ConfigurationSet &configs,
                                               const RegisterLayout &layout,
                                               SemanticsMode mode) {
    const auto groups =
        plan_shared_semantics(configs, layout, FeatureKind::InitialCondition, mode);
    return emit_groups(groups, configs, layout, "initial_conditions");
}

CircuitBlock build_parallel_step(const ConfigurationSet &configs,
                                 const CollisionModel &collision,
                                 const RegisterLayout &layout, SemanticsMode mode) {
    const auto &spec = configs.discretization();
    const std::size_t base = layout.at(reg::kBase).offset;
    CircuitBlock step("parallel_step");
    step.append(build_collision(spec, collision, base));
    step.append(build_streaming(spec, base));
    const auto groups = plan_shared_semantics(configs, layout, FeatureKind::Boundary, mode);
    step.append(emit_groups(groups, configs, layout, "boundary"));
    return step;
}

void run_parallel_evolution(const ConfigurationSet &configs,
                            const CollisionModel &collision, std::size_t steps,
                            StateVector &state, SemanticsMode mode) {
    const auto step = build_parallel_step(configs, collision, state.layout(), mode);
    for (std::size_t t = 0; t < steps; ++t) {
        apply(state, step);
    }
}

std::size_t count_controlled_ops(const CircuitBlock &block) {
    return static_cast<std::size_t>(
        std::count_if(block.ops.begin(), block.ops.end(),
                      [](const CircuitOp &op) { return !op.controls.empty(); }));
}

} // namespace qlga
