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
 * Amplitude-level kernels behind StateVector. Two implementations share one
 * interface: `parallel` enumerates only the affected amplitudes and spreads
 * the work over OpenMP threads; `serial` scans every basis index and tests
 * the control predicate. The serial version is the reference the parallel
 * one is checked against, and the baseline for tools/bench_kernels.
 */

#include <array>
#include <complex>
#include <cstdint>
#include <span>

namespace qlga::kernels {

using Amplitude = std::complex<double>;
using Index = std::uint64_t;

/// Basis state i is acted on only when (i & mask) == value.
struct ControlMask {
    Index mask = 0;
    Index value = 0;
};

/// Row-major 2x2 matrix.
using Matrix2 = std::array<Amplitude, 4>;

namespace parallel {
void apply_matrix(std::span<Amplitude> amps, unsigned target, const Matrix2 &m,
                  ControlMask ctrl);
void apply_diagonal(std::span<Amplitude> amps, unsigned target, Amplitude d0,
                    Amplitude d1, ControlMask ctrl);
void apply_swap(std::span<Amplitude> amps, unsigned a, unsigned b,
                ControlMask ctrl);
/// `matrix` is row-major 2^k x 2^k; targets[0] is the least significant bit
/// of the matrix index.
void apply_dense(std::span<Amplitude> amps, std::span<const unsigned> targets,
                 std::span<const Amplitude> matrix, ControlMask ctrl);
/// out[v] = sum of |amp|^2 over basis states whose bits at `qubits` read v.
void probabilities(std::span<const Amplitude> amps,
                   std::span<const unsigned> qubits, std::span<double> out);
Amplitude inner_product(std::span<const Amplitude> a,
                        std::span<const Amplitude> b);
/// state <- 2 <axis|state> axis - state
void reflect_about(std::span<Amplitude> state, std::span<const Amplitude> axis);
} // namespace parallel

namespace serial {
void apply_matrix(std::span<Amplitude> amps, unsigned target, const Matrix2 &m,
                  ControlMask ctrl);
void apply_diagonal(std::span<Amplitude> amps, unsigned target, Amplitude d0,
                    Amplitude d1, ControlMask ctrl);
void apply_swap(std::span<Amplitude> amps, unsigned a, unsigned b,
                ControlMask ctrl);
/// `matrix` is row-major 2^k x 2^k; targets[0] is the least significant bit
/// of the matrix index.
void apply_dense(std::span<Amplitude> amps, std::span<const unsigned> targets,
                 std::span<const Amplitude> matrix, ControlMask ctrl);
/// out[v] = sum of |amp|^2 over basis states whose bits at `qubits` read v.
void probabilities(std::span<const Amplitude> amps,
                   std::span<const unsigned> qubits, std::span<double> out);
Amplitude inner_product(std::span<const Amplitude> a,
                        std::span<const Amplitude> b);
/// state <- 2 <axis|state> axis - state
void reflect_about(std::span<Amplitude> state, std::span<const Amplitude> axis);
} // namespace serial

/// Spreads the bits of `compact` over the positions not listed in `fixed`
/// (ascending), leaving zeros at the fixed positions.
inline Index insert_zero_bits(Index compact, std::span<const unsigned> fixed) {
    for (unsigned p : fixed) {
        const Index low = compact & ((Index{1} << p) - 1);
        compact = ((compact >> p) << (p + 1)) | low;
    }
    return compact;
}

} // namespace qlga::kernels
