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

#include "qlga/accumulate.hpp"

#include "qlga/error.hpp"

#include <numbers>

namespace qlga {

std::vector<AccumulationSource> accumulation_sources(const RegisterLayout &layout,
                                                     const QoISpec &qoi,
                                                     const LatticeSpec &spec) {
    const std::size_t base = layout.at(reg::kBase).offset;
    std::vector<AccumulationSource> sources;
    for (std::size_t g : qoi.region) {
        for (std::size_t s = 0; s < qoi.channels.size(); ++s) {
            sources.push_back(
                {base + qubit_index(spec, g, qoi.channels[s]), qoi.weight_of(s, spec)});
        }
    }
    return sources;
}

CircuitBlock build_mhwa(const RegisterLayout &layout, const QoISpec &qoi,
                        const LatticeSpec &spec) {
    const auto &data = layout.at(reg::kData);
    const std::size_t n = data.width;
    CircuitBlock block("mhwa");
    for (const auto &src : accumulation_sources(layout, qoi, spec)) {
        for (std::size_t k = 0; k < n; ++k) {
            const double angle = static_cast<double>(src.weight) * std::numbers::pi /
                                 static_cast<double>(std::size_t{1} << (n - 1 - k));
            block.push(CircuitOp::phase(data.qubit(k), angle).with_control({src.qubit}));
        }
    }
    return block;
}

AccumulationSchedule build_accumulation_schedule(const QoISpec &qoi, std::size_t steps) {
    std::vector<bool> accumulate(steps + 1, false);
    for (std::size_t t : qoi.acc_steps) {
        if (t == 0 || t > steps) {
            throw ValidationError("accumulation step " + std::to_string(t) +
                                  " outside 1.." + std::to_string(steps));
        }
        accumulate[t] = true;
    }
    AccumulationSchedule schedule{{ScheduleKind::ForwardQft, 0}};
    for (std::size_t t = 1; t <= steps; ++t) {
        schedule.push_back({ScheduleKind::TimeStep, t});
        if (accumulate[t]) {
            schedule.push_back({ScheduleKind::Accumulate, t});
        }
    }
    schedule.push_back({ScheduleKind::InverseQft, 0});
    return schedule;
}

CircuitBlock assemble_evolution(const AccumulationSchedule &schedule,
                                const ConfigurationSet &configs,
                                const CollisionModel &collision, const QoISpec &qoi,
                                const RegisterLayout &layout, SemanticsMode mode) {
    const auto data = layout.at(reg::kData).qubits();
    const auto step = build_parallel_step(configs, collision, layout, mode);
    const auto mhwa = build_mhwa(layout, qoi, configs.discretization());
    CircuitBlock block("evolution");
    for (const auto &entry : schedule) {
        switch (entry.kind) {
        case ScheduleKind::ForwardQft:
            block.append(build_qft(data, false));
            break;
        case ScheduleKind::TimeStep:
            block.append(step);
            break;
        case ScheduleKind::Accumulate:
            block.append(mhwa);
            break;
        case ScheduleKind::InverseQft:
            block.append(build_qft(data, true));
            break;
        }
    }
    return block;
}

std::vector<MarkerDistribution> accumulated_state_check(const StateVector &state,
                                                        const ConfigurationSet &configs) {
    const auto &layout = state.layout();
    const auto &data = layout.at(reg::kData);
    const auto &marker = layout.at(reg::kMarker);
    std::vector<std::size_t> qubits = data.qubits();
    for (std::size_t q : marker.qubits()) {
        qubits.push_back(q);
    }
    const auto joint = marginal(state, qubits);
    const std::size_t dsize = std::size_t{1} << data.width;

    std::vector<MarkerDistribution> table;
    for (std::size_t j = 0; j < configs.size(); ++j) {
        MarkerDistribution row{j, 0.0, std::vector<double>(dsize, 0.0)};
        const BasisValue code = configs.marker_code(j);
        for (std::size_t v = 0; v < dsize; ++v) {
            row.data[v] = joint[code * dsize + v];
            row.weight += row.data[v];
        }
        if (row.weight > 0.0) {
            for (double &p : row.data) {
                p /= row.weight;
            }
        }
        table.push_back(std::move(row));
    }
    return table;
}

} // namespace qlga
