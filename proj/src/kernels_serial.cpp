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

#include "qlga/kernels.hpp"

#include <algorithm>
#include <vector>

// Straight scans over every basis index. Slow, but each kernel is a literal
// reading of the gate's definition.
namespace qlga::kernels::serial {

namespace {

bool selected(Index i, ControlMask ctrl) {
    return (i & ctrl.mask) == ctrl.value;
}

} // namespace

void apply_matrix(std::span<Amplitude> amps, unsigned target, const Matrix2 &m,
                  ControlMask ctrl) {
    const Index tbit = Index{1} << target;
    for (Index i = 0; i < amps.size(); ++i) {
        if ((i & tbit) != 0 || !selected(i, ctrl)) {
            continue;
        }
        const Amplitude v0 = amps[i];
        const Amplitude v1 = amps[i | tbit];
        amps[i] = m[0] * v0 + m[1] * v1;
        amps[i | tbit] = m[2] * v0 + m[3] * v1;
    }
}

void apply_diagonal(std::span<Amplitude> amps, unsigned target, Amplitude d0,
                    Amplitude d1, ControlMask ctrl) {
    const Index tbit = Index{1} << target;
    for (Index i = 0; i < amps.size(); ++i) {
        if (selected(i, ctrl)) {
            amps[i] *= (i & tbit) ? d1 : d0;
        }
    }
}

void apply_swap(std::span<Amplitude> amps, unsigned qa, unsigned qb,
                ControlMask ctrl) {
    const Index abit = Index{1} << qa;
    const Index bbit = Index{1} << qb;
    for (Index i = 0; i < amps.size(); ++i) {
        if ((i & abit) != 0 && (i & bbit) == 0 && selected(i, ctrl)) {
            std::swap(amps[i], amps[(i ^ abit) | bbit]);
        }
    }
}

void apply_dense(std::span<Amplitude> amps, std::span<const unsigned> targets,
                 std::span<const Amplitude> matrix, ControlMask ctrl) {
    const std::size_t k = targets.size();
    const std::size_t dim = std::size_t{1} << k;
    Index tmask = 0;
    for (unsigned t : targets) {
        tmask |= Index{1} << t;
    }
    std::vector<Index> idx(dim);
    std::vector<Amplitude> in(dim);
    for (Index i = 0; i < amps.size(); ++i) {
        if ((i & tmask) != 0 || !selected(i, ctrl)) {
            continue;
        }
        for (std::size_t s = 0; s < dim; ++s) {
            Index j = i;
            for (std::size_t b = 0; b < k; ++b) {
                if ((s >> b) & 1U) {
                    j |= Index{1} << targets[b];
                }
            }
            idx[s] = j;
            in[s] = amps[j];
        }
        for (std::size_t r = 0; r < dim; ++r) {
            Amplitude acc{0.0, 0.0};
            for (std::size_t s = 0; s < dim; ++s) {
                acc += matrix[r * dim + s] * in[s];
            }
            amps[idx[r]] = acc;
        }
    }
}

void probabilities(std::span<const Amplitude> amps,
                   std::span<const unsigned> qubits, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (Index i = 0; i < amps.size(); ++i) {
        Index v = 0;
        for (std::size_t b = 0; b < qubits.size(); ++b) {
            v |= ((i >> qubits[b]) & 1U) << b;
        }
        out[v] += std::norm(amps[i]);
    }
}

Amplitude inner_product(std::span<const Amplitude> x,
                        std::span<const Amplitude> y) {
    Amplitude total{0.0, 0.0};
    for (Index i = 0; i < x.size(); ++i) {
        total += std::conj(x[i]) * y[i];
    }
    return total;
}

void reflect_about(std::span<Amplitude> state,
                   std::span<const Amplitude> axis) {
    const Amplitude overlap = inner_product(axis, state);
    for (Index i = 0; i < state.size(); ++i) {
        state[i] = 2.0 * overlap * axis[i] - state[i];
    }
}

} // namespace qlga::kernels::serial
