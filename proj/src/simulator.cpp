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

#include "qlga/simulator.hpp"

#include "qlga/error.hpp"
#include "qlga/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qlga {

namespace {

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kZeroProbability = 1e-14;

bool is_unitary(std::span<const Amplitude> m, std::size_t dim) {
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            Amplitude acc{0.0, 0.0};
            for (std::size_t k = 0; k < dim; ++k) {
                acc += std::conj(m[k * dim + r]) * m[k * dim + c];
            }
            const Amplitude expected = (r == c) ? 1.0 : 0.0;
            if (std::abs(acc - expected) > kUnitaryTolerance) {
                return false;
            }
        }
    }
    return true;
}

kernels::ControlMask control_mask(const CircuitOp &op) {
    kernels::ControlMask ctrl;
    for (const auto &c : op.controls) {
        const auto bit = kernels::Index{1} << c.qubit;
        ctrl.mask |= bit;
        if (c.polarity) {
            ctrl.value |= bit;
        }
    }
    return ctrl;
}

template <class Kernels> void dispatch(StateVector &state, const CircuitOp &op) {
    const auto amps = state.amplitudes();
    const auto ctrl = control_mask(op);
    const double s2 = 1.0 / std::numbers::sqrt2;
    switch (op.kind) {
    case GateKind::PauliX:
        Kernels::matrix(amps, op.targets[0], {0.0, 1.0, 1.0, 0.0}, ctrl);
        break;
    case GateKind::PauliZ:
        Kernels::diagonal(amps, op.targets[0], 1.0, -1.0, ctrl);
        break;
    case GateKind::Hadamard:
        Kernels::matrix(amps, op.targets[0], {s2, s2, s2, -s2}, ctrl);
        break;
    case GateKind::RotY: {
        const double c = std::cos(op.angle / 2.0);
        const double s = std::sin(op.angle / 2.0);
        Kernels::matrix(amps, op.targets[0], {c, -s, s, c}, ctrl);
        break;
    }
    case GateKind::Phase:
        Kernels::diagonal(amps, op.targets[0], 1.0, std::polar(1.0, op.angle),
                          ctrl);
        break;
    case GateKind::Swap:
        Kernels::swap(amps, op.targets[0], op.targets[1], ctrl);
        break;
    case GateKind::Unitary: {
        std::vector<unsigned> targets(op.targets.begin(), op.targets.end());
        Kernels::dense(amps, targets, op.matrix, ctrl);
        break;
    }
    }
}

struct ParallelKernels {
    static void matrix(std::span<Amplitude> a, std::size_t t,
                       const kernels::Matrix2 &m, kernels::ControlMask c) {
        kernels::parallel::apply_matrix(a, static_cast<unsigned>(t), m, c);
    }
    static void diagonal(std::span<Amplitude> a, std::size_t t, Amplitude d0,
                         Amplitude d1, kernels::ControlMask c) {
        kernels::parallel::apply_diagonal(a, static_cast<unsigned>(t), d0, d1, c);
    }
    static void swap(std::span<Amplitude> a, std::size_t x, std::size_t y,
                     kernels::ControlMask c) {
        kernels::parallel::apply_swap(a, static_cast<unsigned>(x),
                                      static_cast<unsigned>(y), c);
    }
    static void dense(std::span<Amplitude> a, std::span<const unsigned> t,
                      std::span<const Amplitude> m, kernels::ControlMask c) {
        kernels::parallel::apply_dense(a, t, m, c);
    }
};

struct SerialKernels {
    static void matrix(std::span<Amplitude> a, std::size_t t,
                       const kernels::Matrix2 &m, kernels::ControlMask c) {
        kernels::serial::apply_matrix(a, static_cast<unsigned>(t), m, c);
    }
    static void diagonal(std::span<Amplitude> a, std::size_t t, Amplitude d0,
                         Amplitude d1, kernels::ControlMask c) {
        kernels::serial::apply_diagonal(a, static_cast<unsigned>(t), d0, d1, c);
    }
    static void swap(std::span<Amplitude> a, std::size_t x, std::size_t y,
                     kernels::ControlMask c) {
        kernels::serial::apply_swap(a, static_cast<unsigned>(x),
                                    static_cast<unsigned>(y), c);
    }
    static void dense(std::span<Amplitude> a, std::span<const unsigned> t,
                      std::span<const Amplitude> m, kernels::ControlMask c) {
        kernels::serial::apply_dense(a, t, m, c);
    }
};

std::vector<unsigned> as_unsigned(std::span<const std::size_t> qubits) {
    return {qubits.begin(), qubits.end()};
}

} // namespace

std::size_t Register::qubit(std::size_t i) const {
    if (i >= width) {
        throw std::out_of_range("qubit " + std::to_string(i) +
                                " outside register " + name);
    }
    return offset + i;
}

std::vector<std::size_t> Register::qubits() const {
    std::vector<std::size_t> out(width);
    for (std::size_t i = 0; i < width; ++i) {
        out[i] = offset + i;
    }
    return out;
}

BasisValue Register::value_in(BasisValue basis) const {
    if (width == 0) {
        return 0;
    }
    return (basis >> offset) & ((BasisValue{1} << width) - 1);
}

RegisterLayout &RegisterLayout::add(std::string name, std::size_t width) {
    if (contains(name)) {
        throw ValidationError("duplicate register " + name);
    }
    registers_.push_back(Register{std::move(name), total_, width});
    total_ += width;
    return *this;
}

const Register &RegisterLayout::at(std::string_view name) const {
    for (const auto &r : registers_) {
        if (r.name == name) {
            return r;
        }
    }
    throw std::out_of_range("no register named " + std::string(name));
}

bool RegisterLayout::contains(std::string_view name) const noexcept {
    return std::any_of(registers_.begin(), registers_.end(),
                       [&](const Register &r) { return r.name == name; });
}

CircuitOp CircuitOp::x(std::size_t q) { return {GateKind::PauliX, {q}, {}, 0.0, {}}; }
CircuitOp CircuitOp::z(std::size_t q) { return {GateKind::PauliZ, {q}, {}, 0.0, {}}; }
CircuitOp CircuitOp::h(std::size_t q) { return {GateKind::Hadamard, {q}, {}, 0.0, {}}; }

CircuitOp CircuitOp::ry(std::size_t q, double angle) {
    return {GateKind::RotY, {q}, {}, angle, {}};
}

CircuitOp CircuitOp::phase(std::size_t q, double angle) {
    return {GateKind::Phase, {q}, {}, angle, {}};
}

CircuitOp CircuitOp::swap(std::size_t a, std::size_t b) {
    return {GateKind::Swap, {a, b}, {}, 0.0, {}};
}

CircuitOp CircuitOp::unitary(std::vector<std::size_t> targets,
                             std::vector<Amplitude> matrix) {
    const std::size_t dim = std::size_t{1} << targets.size();
    if (matrix.size() != dim * dim) {
        throw ValidationError("unitary block: matrix size does not match " +
                              std::to_string(targets.size()) + " targets");
    }
    if (!is_unitary(matrix, dim)) {
        throw NumericalError("unitary block: matrix is not unitary");
    }
    return {GateKind::Unitary, std::move(targets), {}, 0.0, std::move(matrix)};
}

CircuitOp CircuitOp::with_control(Control c) const {
    CircuitOp out = *this;
    out.controls.push_back(c);
    return out;
}

CircuitOp CircuitOp::with_controls(std::span<const Control> extra) const {
    CircuitOp out = *this;
    out.controls.insert(out.controls.end(), extra.begin(), extra.end());
    return out;
}

CircuitOp CircuitOp::adjoint() const {
    CircuitOp out = *this;
    switch (kind) {
    case GateKind::RotY:
    case GateKind::Phase:
        out.angle = -angle;
        break;
    case GateKind::Unitary: {
        const std::size_t dim = std::size_t{1} << targets.size();
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                out.matrix[r * dim + c] = std::conj(matrix[c * dim + r]);
            }
        }
        break;
    }
    default:
        break;
    }
    return out;
}

void CircuitOp::validate(std::size_t num_qubits) const {
    const std::size_t expected_targets =
        kind == GateKind::Swap ? 2 : (kind == GateKind::Unitary ? targets.size() : 1);
    if (targets.size() != expected_targets || targets.empty()) {
        throw ValidationError("gate has the wrong number of targets");
    }
    std::vector<std::size_t> touched = targets;
    for (const auto &c : controls) {
        touched.push_back(c.qubit);
    }
    for (std::size_t q : touched) {
        if (q >= num_qubits) {
            throw std::out_of_range("qubit index " + std::to_string(q) +
                                    " out of range for " +
                                    std::to_string(num_qubits) + " qubits");
        }
    }
    std::sort(touched.begin(), touched.end());
    if (std::adjacent_find(touched.begin(), touched.end()) != touched.end()) {
        throw ValidationError("gate targets and controls must be disjoint");
    }
    if (kind == GateKind::Unitary) {
        const std::size_t dim = std::size_t{1} << targets.size();
        if (matrix.size() != dim * dim) {
            throw ValidationError("unitary block: matrix size mismatch");
        }
        if (!is_unitary(matrix, dim)) {
            throw NumericalError("unitary block: matrix is not unitary");
        }
    }
}

void CircuitBlock::append(const CircuitBlock &other) {
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

CircuitBlock CircuitBlock::adjoint() const {
    CircuitBlock out(label + "^dag");
    out.ops.reserve(ops.size());
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        out.ops.push_back(it->adjoint());
    }
    return out;
}

CircuitBlock CircuitBlock::with_controls(std::span<const Control> extra) const {
    CircuitBlock out(label);
    out.ops.reserve(ops.size());
    for (const auto &op : ops) {
        out.ops.push_back(op.with_controls(extra));
    }
    return out;
}

std::size_t circuit_depth(const CircuitBlock &block) {
    std::vector<std::size_t> ready;
    std::size_t depth = 0;
    for (const auto &op : block.ops) {
        std::size_t layer = 0;
        auto visit = [&](std::size_t q) {
            if (q >= ready.size()) {
                ready.resize(q + 1, 0);
            }
            layer = std::max(layer, ready[q]);
        };
        for (std::size_t q : op.targets) {
            visit(q);
        }
        for (const auto &c : op.controls) {
            visit(c.qubit);
        }
        for (std::size_t q : op.targets) {
            ready[q] = layer + 1;
        }
        for (const auto &c : op.controls) {
            ready[c.qubit] = layer + 1;
        }
        depth = std::max(depth, layer + 1);
    }
    return depth;
}

StateVector::StateVector(RegisterLayout layout, std::size_t max_qubits)
    : layout_(std::move(layout)) {
    const std::size_t n = layout_.total_qubits();
    if (n > max_qubits) {
        throw CapacityError("layout needs " + std::to_string(n) +
                            " qubits, cap is " + std::to_string(max_qubits));
    }
    amps_.assign(std::size_t{1} << n, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

double StateVector::norm_squared() const {
    return std::real(kernels::parallel::inner_product(amps_, amps_));
}

void StateVector::set_basis_state(BasisValue i) {
    if (i >= amps_.size()) {
        throw std::out_of_range("basis state out of range");
    }
    std::fill(amps_.begin(), amps_.end(), Amplitude{0.0, 0.0});
    amps_[i] = 1.0;
}

void apply(StateVector &state, const CircuitOp &op) {
    op.validate(state.num_qubits());
    if (state.backend() == Backend::Serial) {
        dispatch<SerialKernels>(state, op);
    } else {
        dispatch<ParallelKernels>(state, op);
    }
}

void apply(StateVector &state, const CircuitBlock &block) {
    for (const auto &op : block.ops) {
        apply(state, op);
    }
}

CircuitBlock build_qft(std::span<const std::size_t> qubits, bool inverse) {
    const std::size_t n = qubits.size();
    CircuitBlock qft("qft");
    for (std::size_t jj = n; jj-- > 0;) {
        qft.push(CircuitOp::h(qubits[jj]));
        for (std::size_t kk = jj; kk-- > 0;) {
            const double angle =
                std::numbers::pi / static_cast<double>(std::size_t{1} << (jj - kk));
            qft.push(CircuitOp::phase(qubits[jj], angle).with_control({qubits[kk]}));
        }
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
        qft.push(CircuitOp::swap(qubits[i], qubits[n - 1 - i]));
    }
    if (inverse) {
        auto inv = qft.adjoint();
        inv.label = "iqft";
        return inv;
    }
    return qft;
}

void apply_qft(StateVector &state, const Register &reg, bool inverse) {
    const auto qubits = reg.qubits();
    apply(state, build_qft(qubits, inverse));
}

std::vector<double> marginal(const StateVector &state,
                             std::span<const std::size_t> qubits) {
    for (std::size_t q : qubits) {
        if (q >= state.num_qubits()) {
            throw std::out_of_range("marginal: qubit out of range");
        }
    }
    std::vector<double> out(std::size_t{1} << qubits.size());
    const auto uq = as_unsigned(qubits);
    if (state.backend() == Backend::Serial) {
        kernels::serial::probabilities(state.amplitudes(), uq, out);
    } else {
        kernels::parallel::probabilities(state.amplitudes(), uq, out);
    }
    return out;
}

std::vector<double> marginal(const StateVector &state, const Register &reg) {
    const auto qubits = reg.qubits();
    return marginal(state, qubits);
}

StateVector conditional_state(const StateVector &state, const Register &reg,
                              BasisValue value) {
    const auto probs = marginal(state, reg);
    if (value >= probs.size() || probs[value] <= kZeroProbability) {
        throw NumericalError("conditioning " + reg.name + " = " +
                             std::to_string(value) +
                             " on a zero-probability outcome");
    }
    StateVector out = state;
    const double scale = 1.0 / std::sqrt(probs[value]);
    auto amps = out.amplitudes();
    for (BasisValue i = 0; i < amps.size(); ++i) {
        amps[i] = reg.value_in(i) == value ? amps[i] * scale : Amplitude{0.0, 0.0};
    }
    return out;
}

BasisValue sample_value(const StateVector &state,
                        std::span<const std::size_t> qubits, Rng &rng) {
    const auto probs = marginal(state, qubits);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    double total = 0.0;
    for (double p : probs) {
        total += p;
    }
    u *= total;
    BasisValue last_nonzero = 0;
    for (BasisValue v = 0; v < probs.size(); ++v) {
        if (probs[v] <= 0.0) {
            continue;
        }
        last_nonzero = v;
        if (u < probs[v]) {
            return v;
        }
        u -= probs[v];
    }
    return last_nonzero;
}

Sample sample(const StateVector &state, const Register &reg, Rng &rng) {
    const auto qubits = reg.qubits();
    const BasisValue v = sample_value(state, qubits, rng);
    return Sample{v, conditional_state(state, reg, v)};
}

double fidelity(const StateVector &a, const StateVector &b) {
    if (a.amplitudes().size() != b.amplitudes().size()) {
        throw ValidationError("fidelity: states differ in size");
    }
    return std::norm(kernels::parallel::inner_product(a.amplitudes(), b.amplitudes()));
}

void reflect_about(StateVector &state, const StateVector &axis) {
    if (state.amplitudes().size() != axis.amplitudes().size()) {
        throw ValidationError("reflect_about: states differ in size");
    }
    if (state.backend() == Backend::Serial) {
        kernels::serial::reflect_about(state.amplitudes(), axis.amplitudes());
    } else {
        kernels::parallel::reflect_about(state.amplitudes(), axis.amplitudes());
    }
}

} // namespace qlga
