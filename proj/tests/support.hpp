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

// Independent reference computations used by the tests. Nothing here calls
// the circuit builders under test.

#include "qlga/simulator.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace qlga::testing {

inline RegisterLayout flat_layout(std::size_t n, const char *name = "Q") {
    RegisterLayout layout;
    layout.add(name, n);
    return layout;
}

inline StateVector basis_state(const RegisterLayout &layout, BasisValue i) {
    StateVector s(layout);
    s.set_basis_state(i);
    return s;
}

/// Amplitudes a[i] = (i + 1) + i*0.5i, normalized; every entry distinct, so a
/// single application of a permutation circuit reveals the whole permutation.
inline StateVector labelled_state(const RegisterLayout &layout) {
    StateVector s(layout);
    auto amps = s.amplitudes();
    double norm = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = Amplitude(static_cast<double>(i) + 1.0, 0.5 * static_cast<double>(i));
        norm += std::norm(amps[i]);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return s;
}

inline StateVector random_state(const RegisterLayout &layout, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    StateVector s(layout);
    auto amps = s.amplitudes();
    double norm = 0.0;
    for (auto &a : amps) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return s;
}

inline double max_abs_diff(std::span<const Amplitude> a, std::span<const Amplitude> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

inline bool bit(std::uint64_t v, std::size_t i) { return ((v >> i) & 1U) != 0; }

/// Bits `qubits` of v read as an integer, qubits[0] least significant.
inline std::uint64_t gather(std::uint64_t v, const std::vector<std::size_t> &qubits) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        out |= static_cast<std::uint64_t>(bit(v, qubits[k])) << k;
    }
    return out;
}

/// v with the bits at `qubits` replaced by `value`.
inline std::uint64_t scatter(std::uint64_t v, const std::vector<std::size_t> &qubits,
                             std::uint64_t value) {
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        v &= ~(std::uint64_t{1} << qubits[k]);
        v |= static_cast<std::uint64_t>(bit(value, k)) << qubits[k];
    }
    return v;
}

/// Periodic streaming of one occupancy bitmask written from scratch:
/// bit (g*q + c) moves to the gridpoint displaced by velocity c.
inline std::uint64_t stream_reference(std::uint64_t occ, std::size_t nx, std::size_t ny,
                                      const std::vector<std::array<int, 2>> &vel) {
    const std::size_t q = vel.size();
    std::uint64_t out = 0;
    for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t x = 0; x < nx; ++x) {
            for (std::size_t c = 0; c < q; ++c) {
                if (!bit(occ, (y * nx + x) * q + c)) {
                    continue;
                }
                const auto tx = static_cast<std::size_t>(
                    (static_cast<long>(x) + vel[c][0] + static_cast<long>(nx)) %
                    static_cast<long>(nx));
                const auto ty = static_cast<std::size_t>(
                    (static_cast<long>(y) + vel[c][1] + static_cast<long>(ny)) %
                    static_cast<long>(ny));
                out |= std::uint64_t{1} << ((ty * nx + tx) * q + c);
            }
        }
    }
    return out;
}

/// Number of cycles of the gridpoint shift x -> x + v on an nx-by-ny torus.
inline std::size_t shift_cycles(std::size_t nx, std::size_t ny, std::array<int, 2> v) {
    std::vector<bool> seen(nx * ny, false);
    std::size_t cycles = 0;
    for (std::size_t start = 0; start < nx * ny; ++start) {
        if (seen[start]) {
            continue;
        }
        ++cycles;
        std::size_t g = start;
        while (!seen[g]) {
            seen[g] = true;
            const long x = static_cast<long>(g % nx) + v[0];
            const long y = static_cast<long>(g / nx) + v[1];
            const auto xx = static_cast<std::size_t>((x + static_cast<long>(nx)) % static_cast<long>(nx));
            const auto yy = static_cast<std::size_t>((y + static_cast<long>(ny)) % static_cast<long>(ny));
            g = yy * nx + xx;
        }
    }
    return cycles;
}

} // namespace qlga::testing
