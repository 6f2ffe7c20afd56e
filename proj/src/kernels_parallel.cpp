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
#include <bit>
#include <vector>

namespace qlga::kernels::parallel {

namespace {

// Fixed reduction chunking keeps sums independent of the thread count.
constexpr Index kReduceChunk = Index{1} << 14;

unsigned log2_size(std::size_t n) {
    return static_cast<unsigned>(std::countr_zero(static_cast<Index>(n)));
}

std::vector<unsigned> fixed_positions(Index mask) {
    std::vector<unsigned> out;
    while (mask != 0) {
        out.push_back(static_cast<unsigned>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

} // namespace

void apply_matrix(std::span<Amplitude> amps, unsigned target, const Matrix2 &m,
                  ControlMask ctrl) {
    const Index tbit = Index{1} << target;
    const auto fixed = fixed_positions(ctrl.mask | tbit);
    const Index count = Index{1} << (log2_size(amps.size()) - fixed.size());
    Amplitude *a = amps.data();
    const std::span<const unsigned> fx(fixed);
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < count; ++i) {
        const Index i0 = insert_zero_bits(i, fx) | ctrl.value;
        const Index i1 = i0 | tbit;
        const Amplitude v0 = a[i0];
        const Amplitude v1 = a[i1];
        a[i0] = m[0] * v0 + m[1] * v1;
        a[i1] = m[2] * v0 + m[3] * v1;
    }
}

void apply_diagonal(std::span<Amplitude> amps, unsigned target, Amplitude d0,
                    Amplitude d1, ControlMask ctrl) {
    const Index tbit = Index{1} << target;
    const auto fixed = fixed_positions(ctrl.mask | tbit);
    const Index count = Index{1} << (log2_size(amps.size()) - fixed.size());
    Amplitude *a = amps.data();
    const std::span<const unsigned> fx(fixed);
    const bool touch0 = d0 != Amplitude{1.0, 0.0};
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < count; ++i) {
        const Index i0 = insert_zero_bits(i, fx) | ctrl.value;
        if (touch0) {
            a[i0] *= d0;
        }
        a[i0 | tbit] *= d1;
    }
}

void apply_swap(std::span<Amplitude> amps, unsigned qa, unsigned qb,
                ControlMask ctrl) {
    const Index abit = Index{1} << qa;
    const Index bbit = Index{1} << qb;
    const auto fixed = fixed_positions(ctrl.mask | abit | bbit);
    const Index count = Index{1} << (log2_size(amps.size()) - fixed.size());
    Amplitude *a = amps.data();
    const std::span<const unsigned> fx(fixed);
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < count; ++i) {
        const Index base = insert_zero_bits(i, fx) | ctrl.value;
        std::swap(a[base | abit], a[base | bbit]);
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
    const auto fixed = fixed_positions(ctrl.mask | tmask);
    const Index count = Index{1} << (log2_size(amps.size()) - fixed.size());

    std::vector<Index> offsets(dim, 0);
    for (std::size_t s = 0; s < dim; ++s) {
        for (std::size_t b = 0; b < k; ++b) {
            if ((s >> b) & 1U) {
                offsets[s] |= Index{1} << targets[b];
            }
        }
    }

    Amplitude *a = amps.data();
    const std::span<const unsigned> fx(fixed);
#pragma omp parallel
    {
        std::vector<Amplitude> in(dim);
#pragma omp for schedule(static)
        for (Index i = 0; i < count; ++i) {
            const Index base = insert_zero_bits(i, fx) | ctrl.value;
            for (std::size_t s = 0; s < dim; ++s) {
                in[s] = a[base | offsets[s]];
            }
            for (std::size_t r = 0; r < dim; ++r) {
                Amplitude acc{0.0, 0.0};
                const Amplitude *row = matrix.data() + r * dim;
                for (std::size_t s = 0; s < dim; ++s) {
                    acc += row[s] * in[s];
                }
                a[base | offsets[r]] = acc;
            }
        }
    }
}

void probabilities(std::span<const Amplitude> amps,
                   std::span<const unsigned> qubits, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const Index size = amps.size();
    const Index chunks = (size + kReduceChunk - 1) / kReduceChunk;
    const std::size_t bins = out.size();

    auto value_of = [&](Index i) {
        Index v = 0;
        for (std::size_t b = 0; b < qubits.size(); ++b) {
            v |= ((i >> qubits[b]) & 1U) << b;
        }
        return v;
    };

    // Per-chunk histograms are only affordable for narrow registers; wide
    // ones fall back to a single ordered pass.
    if (chunks * bins > (Index{1} << 24)) {
        for (Index i = 0; i < size; ++i) {
            out[value_of(i)] += std::norm(amps[i]);
        }
        return;
    }

    std::vector<double> partial(chunks * bins, 0.0);
#pragma omp parallel for schedule(static)
    for (Index c = 0; c < chunks; ++c) {
        double *hist = partial.data() + c * bins;
        const Index end = std::min(size, (c + 1) * kReduceChunk);
        for (Index i = c * kReduceChunk; i < end; ++i) {
            hist[value_of(i)] += std::norm(amps[i]);
        }
    }
    for (Index c = 0; c < chunks; ++c) {
        for (std::size_t v = 0; v < bins; ++v) {
            out[v] += partial[c * bins + v];
        }
    }
}

Amplitude inner_product(std::span<const Amplitude> x,
                        std::span<const Amplitude> y) {
    const Index size = x.size();
    const Index chunks = (size + kReduceChunk - 1) / kReduceChunk;
    std::vector<Amplitude> partial(chunks);
#pragma omp parallel for schedule(static)
    for (Index c = 0; c < chunks; ++c) {
        Amplitude acc{0.0, 0.0};
        const Index end = std::min(size, (c + 1) * kReduceChunk);
        for (Index i = c * kReduceChunk; i < end; ++i) {
            acc += std::conj(x[i]) * y[i];
        }
        partial[c] = acc;
    }
    Amplitude total{0.0, 0.0};
    for (const auto &p : partial) {
        total += p;
    }
    return total;
}

void reflect_about(std::span<Amplitude> state,
                   std::span<const Amplitude> axis) {
    const Amplitude overlap = inner_product(axis, state);
    const Amplitude scale = 2.0 * overlap;
    const Index size = state.size();
    Amplitude *s = state.data();
    const Amplitude *ax = axis.data();
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < size; ++i) {
        s[i] = scale * ax[i] - s[i];
    }
}

} // namespace qlga::kernels::parallel
