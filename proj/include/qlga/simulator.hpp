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
 * Dense statevector engine. Qubit 0 is the least significant bit of the
 * basis index; inside a register, the register's first qubit is the least
 * significant bit of the register value. Registers are laid out
 * contiguously in the order they are added.
 */

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qlga {

using Amplitude = std::complex<double>;
using BasisValue = std::uint64_t;
using Rng = std::mt19937_64;

inline constexpr std::size_t kDefaultMaxQubits = 26;

struct Register {
    std::string name;
    std::size_t offset = 0;
    std::size_t width = 0;

    std::size_t qubit(std::size_t i) const;
    std::vector<std::size_t> qubits() const;
    /// Value of this register inside a full basis index.
    BasisValue value_in(BasisValue basis) const;
};

class RegisterLayout {
  public:
    /// Appends a register after the existing ones. Width 0 is allowed and
    /// produces an empty register (e.g. the marker of a single lattice).
    RegisterLayout &add(std::string name, std::size_t width);

    const Register &at(std::string_view name) const;
    bool contains(std::string_view name) const noexcept;
    std::size_t total_qubits() const noexcept { return total_; }
    std::span<const Register> registers() const noexcept { return registers_; }

  private:
    std::vector<Register> registers_;
    std::size_t total_ = 0;
};

struct Control {
    std::size_t qubit = 0;
    bool polarity = true;

    friend bool operator==(const Control &, const Control &) = default;
};

enum class GateKind { PauliX, PauliZ, Hadamard, RotY, Phase, Swap, Unitary };

/// One gate with optional polarity controls. Multi-controlled gates are kept
/// whole; decomposition cost is accounted separately (see commands.hpp).
struct CircuitOp {
    GateKind kind = GateKind::PauliX;
    std::vector<std::size_t> targets;
    std::vector<Control> controls;
    double angle = 0.0;
    /// Row-major 2^k x 2^k, only for GateKind::Unitary.
    std::vector<Amplitude> matrix;

    static CircuitOp x(std::size_t q);
    static CircuitOp z(std::size_t q);
    static CircuitOp h(std::size_t q);
    /// RotY(t)|0> = cos(t/2)|0> + sin(t/2)|1>
    static CircuitOp ry(std::size_t q, double angle);
    /// Phase(t)|1> = e^{it}|1>
    static CircuitOp phase(std::size_t q, double angle);
    static CircuitOp swap(std::size_t a, std::size_t b);
    static CircuitOp unitary(std::vector<std::size_t> targets,
                             std::vector<Amplitude> matrix);

    CircuitOp with_control(Control c) const;
    CircuitOp with_controls(std::span<const Control> extra) const;
    CircuitOp adjoint() const;

    /// Throws std::out_of_range for bad indices, ValidationError for
    /// overlapping targets/controls, NumericalError for non-unitary blocks.
    void validate(std::size_t num_qubits) const;
};

struct CircuitBlock {
    std::string label;
    std::vector<CircuitOp> ops;

    CircuitBlock() = default;
    explicit CircuitBlock(std::string name) : label(std::move(name)) {}

    void push(CircuitOp op) { ops.push_back(std::move(op)); }
    void append(const CircuitBlock &other);
    CircuitBlock adjoint() const;
    CircuitBlock with_controls(std::span<const Control> extra) const;

    std::size_t size() const noexcept { return ops.size(); }
    bool empty() const noexcept { return ops.empty(); }
};

/// Greedy as-soon-as-possible layering: ops touching disjoint qubit sets
/// (targets and controls) share a layer.
std::size_t circuit_depth(const CircuitBlock &block);

enum class Backend { Parallel, Serial };

class StateVector {
  public:
    /// Vacuum state |0...0>. Throws CapacityError above `max_qubits`.
    explicit StateVector(RegisterLayout layout,
                         std::size_t max_qubits = kDefaultMaxQubits);

    const RegisterLayout &layout() const noexcept { return layout_; }
    std::size_t num_qubits() const noexcept { return layout_.total_qubits(); }
    std::span<Amplitude> amplitudes() noexcept { return amps_; }
    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    Amplitude amplitude(BasisValue i) const { return amps_.at(i); }

    double norm_squared() const;
    void set_basis_state(BasisValue i);

    Backend backend() const noexcept { return backend_; }
    void set_backend(Backend b) noexcept { backend_ = b; }

  private:
    RegisterLayout layout_;
    std::vector<Amplitude> amps_;
    Backend backend_ = Backend::Parallel;
};

inline StateVector new_state(RegisterLayout layout,
                             std::size_t max_qubits = kDefaultMaxQubits) {
    return StateVector(std::move(layout), max_qubits);
}

void apply(StateVector &state, const CircuitOp &op);
void apply(StateVector &state, const CircuitBlock &block);

/// QFT|x> = 2^{-n/2} sum_y exp(2 pi i x y / 2^n) |y> over `qubits`
/// (qubits[0] least significant). With this convention, Phase(pi/2^{n-1-k})
/// on qubit k of the transformed register adds 1 to the value.
CircuitBlock build_qft(std::span<const std::size_t> qubits, bool inverse);
void apply_qft(StateVector &state, const Register &reg, bool inverse);

std::vector<double> marginal(const StateVector &state, const Register &reg);
std::vector<double> marginal(const StateVector &state,
                             std::span<const std::size_t> qubits);

/// Renormalized projection onto reg == value. Throws NumericalError when the
/// outcome has (numerically) zero probability.
StateVector conditional_state(const StateVector &state, const Register &reg,
                              BasisValue value);

struct Sample {
    BasisValue value = 0;
    StateVector collapsed;
};

Sample sample(const StateVector &state, const Register &reg, Rng &rng);
/// Draws a value of the joint register formed by `qubits` without building
/// the collapsed state.
BasisValue sample_value(const StateVector &state,
                        std::span<const std::size_t> qubits, Rng &rng);

double fidelity(const StateVector &a, const StateVector &b);

/// state <- 2 <axis|state> axis - state, with `axis` normalized.
void reflect_about(StateVector &state, const StateVector &axis);

} // namespace qlga
