// Copyright 2026 The qtransfer Authors.
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
#include "qtransfer/gradient.hpp"

#include <numbers>

#include "qtransfer/error.hpp"

namespace qtransfer {

namespace {

void check_shapes(const CircuitSpec &circuit, std::span<const double> params, const PauliSum &h) {
    require(params.size() == circuit.num_params(), ErrorCode::ShapeMismatch,
            "expected " + std::to_string(circuit.num_params()) + " parameters, got " +
                std::to_string(params.size()));
    require(h.num_qubits() == circuit.num_qubits(), ErrorCode::ShapeMismatch,
            "Hamiltonian has " + std::to_string(h.num_qubits()) + " qubits, circuit has " +
                std::to_string(circuit.num_qubits()));
}

// <a| P |b> for a Pauli string without its coefficient.
Complex pauli_matrix_element(const StateVector &a, const PauliMask &mask, const StateVector &b) {
    Complex s{};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < y.size(); ++i) {
        s += std::conj(x[i ^ mask.x]) * mask.phase(i) * y[i];
    }
    return s;
}

} // namespace

double cost(const CircuitSpec &circuit, std::span<const double> params, const PauliSum &h) {
    check_shapes(circuit, params, h);
    return expectation(evaluate(circuit, params, StateVector::zero(circuit.num_qubits())), h);
}

double cost_and_gradient(const CircuitSpec &circuit, std::span<const double> params,
                         const PauliSum &h, std::span<double> grad) {
    check_shapes(circuit, params, h);
    require(grad.size() == params.size(), ErrorCode::ShapeMismatch,
            "gradient buffer has the wrong length");
    std::fill(grad.begin(), grad.end(), 0.0);

    StateVector psi = evaluate(circuit, params, StateVector::zero(circuit.num_qubits()));
    StateVector lambda = psi;
    lambda.apply_hamiltonian(h);
    const double value = inner_product(psi, lambda).real();

    const auto &gates = circuit.gates();
    for (std::size_t k = gates.size(); k-- > 0;) {
        const auto &g = gates[k];
        const double theta = g.param_index ? params[*g.param_index] : 0.0;
        if (g.param_index) {
            // d/dtheta exp(-i theta a P) = -i a P exp(...), so dC = 2 a Im<lambda|P|psi>.
            const PauliTerm gen = generator(g);
            grad[*g.param_index] +=
                2.0 * gen.coefficient * pauli_matrix_element(lambda, to_mask(gen), psi).imag();
        }
        apply_gate(psi, g, -theta);
        apply_gate(lambda, g, -theta);
    }
    return value;
}

std::vector<double> gradient(const CircuitSpec &circuit, std::span<const double> params,
                             const PauliSum &h) {
    std::vector<double> grad(params.size());
    cost_and_gradient(circuit, params, h, grad);
    return grad;
}

std::vector<double> parameter_shift_gradient(const CircuitSpec &circuit,
                                             std::span<const double> params, const PauliSum &h) {
    check_shapes(circuit, params, h);
    std::vector<int> uses(circuit.num_params(), 0);
    for (const auto &g : circuit.gates()) {
        if (!g.param_index) {
            continue;
        }
        require(g.kind == GateKind::RotX || g.kind == GateKind::RotZ, ErrorCode::UnsupportedAnsatz,
                "parameter shift is only defined here for Rx/Rz rotation slots");
        ++uses[*g.param_index];
    }
    for (int u : uses) {
        require(u == 1, ErrorCode::UnsupportedAnsatz,
                "parameter shift needs every parameter to drive exactly one rotation");
    }

    std::vector<double> shifted(params.begin(), params.end());
    std::vector<double> grad(params.size());
    constexpr double kShift = std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        shifted[i] = params[i] + kShift;
        const double plus = cost(circuit, shifted, h);
        shifted[i] = params[i] - kShift;
        const double minus = cost(circuit, shifted, h);
        shifted[i] = params[i];
        grad[i] = 0.5 * (plus - minus);
    }
    return grad;
}

std::vector<double> finite_difference_gradient(const CircuitSpec &circuit,
                                               std::span<const double> params, const PauliSum &h,
                                               double step) {
    check_shapes(circuit, params, h);
    require(step > 0.0, ErrorCode::InvalidArgument, "finite-difference step must be positive");
    std::vector<double> shifted(params.begin(), params.end());
    std::vector<double> grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        shifted[i] = params[i] + step;
        const double plus = cost(circuit, shifted, h);
        shifted[i] = params[i] - step;
        const double minus = cost(circuit, shifted, h);
        shifted[i] = params[i];
        grad[i] = (plus - minus) / (2.0 * step);
    }
    return grad;
}

} // namespace qtransfer
