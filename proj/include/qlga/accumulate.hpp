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
 * Fourier-space accumulation of the quantity of interest into the data
 * register D, interleaved with the parallel lattice evolution.
 */

#include "qlga/parallel.hpp"

#include <vector>

namespace qlga {

/// Region source qubits (absolute indices) and their integer weights, in
/// region-major order.
struct AccumulationSource {
    std::size_t qubit = 0;
    int weight = 1;
};

std::vector<AccumulationSource> accumulation_sources(const RegisterLayout &layout,
                                                     const QoISpec &qoi,
                                                     const LatticeSpec &spec);

/// Adds sum_j alpha_j x_j to the Fourier-transformed D register: one
/// Phase(alpha * pi / 2^{n-1-k}) on data qubit k per source qubit.
/// Emitted source-major so that ASAP layering stays within S + n - 1 layers.
CircuitBlock build_mhwa(const RegisterLayout &layout, const QoISpec &qoi,
                        const LatticeSpec &spec);

enum class ScheduleKind { ForwardQft, TimeStep, Accumulate, InverseQft };

struct ScheduleEntry {
    ScheduleKind kind = ScheduleKind::TimeStep;
    /// 1-based time step for TimeStep and Accumulate entries.
    std::size_t step = 0;
};

using AccumulationSchedule = std::vector<ScheduleEntry>;

/// Forward QFT, then every time step followed by an accumulation when the
/// step is listed, then the inverse QFT. Throws ValidationError when an
/// accumulation step exceeds `steps`.
AccumulationSchedule build_accumulation_schedule(const QoISpec &qoi, std::size_t steps);

/// Concrete circuit for a schedule (initial conditions excluded).
CircuitBlock assemble_evolution(const AccumulationSchedule &schedule,
                                const ConfigurationSet &configs,
                                const CollisionModel &collision, const QoISpec &qoi,
                                const RegisterLayout &layout,
                                SemanticsMode mode = SemanticsMode::Shared);

struct MarkerDistribution {
    std::size_t marker = 0;
    /// P(M = j).
    double weight = 0.0;
    /// P(D = v | M = j), indexed by v.
    std::vector<double> data;
};

/// Joint (M, D) marginal split per configuration.
std::vector<MarkerDistribution> accumulated_state_check(const StateVector &state,
                                                        const ConfigurationSet &configs);

} // namespace qlga
