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

// Serial reference vs OpenMP kernels on random states.
// usage: bench_kernels [min_qubits] [max_qubits] [repeats]

#include "qlga/kernels.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

using qlga::kernels::Amplitude;
namespace par = qlga::kernels::parallel;
namespace ser = qlga::kernels::serial;

namespace {

std::vector<Amplitude> random_state(unsigned n, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::vector<Amplitude> v(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : v) {
        a = {gauss(rng), gauss(rng)};
        norm += std::norm(a);
    }
    for (auto &a : v) {
        a /= std::sqrt(norm);
    }
    return v;
}

double seconds(const std::function<void()> &fn, int repeats) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) {
        fn();
    }
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / repeats;
}

double max_diff(const std::vector<Amplitude> &a, const std::vector<Amplitude> &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

} // namespace

int main(int argc, char **argv) {
    const unsigned lo = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 16;
    const unsigned hi = argc > 2 ? static_cast<unsigned>(std::atoi(argv[2])) : 22;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 5;
    std::mt19937_64 rng(2026);
    const double s = 1.0 / std::sqrt(2.0);
    const qlga::kernels::Matrix2 hadamard{s, s, s, -s};

    std::printf("threads=%d\n", omp_get_max_threads());
    std::printf("%-8s %-22s %12s %12s %8s %10s\n", "qubits", "kernel", "serial_s",
                "parallel_s", "speedup", "max_diff");
    for (unsigned n = lo; n <= hi; n += 2) {
        const auto start = random_state(n, rng);
        const unsigned t = n / 2;
        const qlga::kernels::ControlMask none{};
        const qlga::kernels::ControlMask two{(1ULL << 0) | (1ULL << (n - 1)), 1ULL << 0};

        struct Case {
            const char *name;
            std::function<void(std::vector<Amplitude> &, bool)> run;
        };
        const std::vector<Case> cases{
            {"hadamard", [&](auto &v, bool p) {
                 p ? par::apply_matrix(v, t, hadamard, none)
                   : ser::apply_matrix(v, t, hadamard, none);
             }},
            {"hadamard_2ctrl", [&](auto &v, bool p) {
                 p ? par::apply_matrix(v, t, hadamard, two)
                   : ser::apply_matrix(v, t, hadamard, two);
             }},
            {"phase", [&](auto &v, bool p) {
                 const Amplitude ph = std::polar(1.0, 0.3);
                 p ? par::apply_diagonal(v, t, 1.0, ph, none)
                   : ser::apply_diagonal(v, t, 1.0, ph, none);
             }},
            {"swap", [&](auto &v, bool p) {
                 p ? par::apply_swap(v, 1, n - 2, none) : ser::apply_swap(v, 1, n - 2, none);
             }},
            {"reflect_about", [&](auto &v, bool p) {
                 p ? par::reflect_about(v, start) : ser::reflect_about(v, start);
             }},
        };
        for (const auto &c : cases) {
            auto a = start;
            auto b = start;
            const double ts = seconds([&] { c.run(a, false); }, repeats);
            const double tp = seconds([&] { c.run(b, true); }, repeats);
            std::printf("%-8u %-22s %12.6f %12.6f %8.2f %10.2e\n", n, c.name, ts, tp, ts / tp,
                        max_diff(a, b));
        }
        std::vector<unsigned> qubits{0, t, n - 1};
        std::vector<double> ps(8), pp(8);
        const double ts = seconds([&] { ser::probabilities(start, qubits, ps); }, repeats);
        const double tp = seconds([&] { par::probabilities(start, qubits, pp); }, repeats);
        double d = 0.0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            d = std::max(d, std::abs(ps[i] - pp[i]));
        }
        std::printf("%-8u %-22s %12.6f %12.6f %8.2f %10.2e\n", n, "probabilities", ts, tp,
                    ts / tp, d);
    }
    return 0;
}
