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
#include "qtransfer/ansatz.hpp"

#include <algorithm>

#include "qtransfer/error.hpp"

namespace qtransfer {

namespace {

void check_parts(std::span<const PauliSum> parts, std::size_t layers) {
    require(!parts.empty(), ErrorCode::InvalidArgument, "HVA needs at least one Hamiltonian part");
    require(layers >= 1, ErrorCode::InvalidArgument, "HVA needs at least one layer");
    const std::size_t n = parts.front().num_qubits();
    for (std::size_t m = 0; m < parts.size(); ++m) {
        require(parts[m].num_qubits() == n, ErrorCode::ShapeMismatch,
                "HVA parts act on different qubit counts");
        require(!parts[m].empty(), ErrorCode::InvalidArgument,
                "HVA part " + std::to_string(m) + " has no terms");
        require(parts[m].is_commuting(), ErrorCode::NonCommutingPart,
                "HVA part " + std::to_string(m) + " contains non-commuting terms");
    }
}

CircuitSpec build_hva_impl(std::span<const PauliSum> parts, std::size_t layers, bool mirrored) {
    check_parts(parts, layers);
    const std::size_t n = parts.front().num_qubits();
    const std::size_t m_parts = parts.size();
    std::vector<GateSlot> gates;
    std::vector<ParamSlot> layout;
    for (std::size_t p = 0; p < layers; ++p) {
        for (std::size_t m = 0; m < m_parts; ++m) {
            layout.push_back({0, p, m});
        }
        // 0-based odd layers are the 1-based even ones.
        const bool reverse = mirrored && (p % 2 == 1);
        for (std::size_t k = 0; k < m_parts; ++k) {
            const std::size_t m = reverse ? m_parts - 1 - k : k;
            for (const auto &term : parts[m].terms()) {
                std::vector<std::size_t> qubits;
                for (const auto &f : term.factors) {
                    qubits.push_back(f.qubit);
                }
                gates.push_back({GateKind::PauliExp, std::move(qubits), p * m_parts + m, term});
            }
        }
    }
    return CircuitSpec(n, mirrored ? AnsatzKind::HVAVariant : AnsatzKind::HVA, layers, m_parts,
                       std::move(gates), std::move(layout));
}

} // namespace

std::string to_string(AnsatzKind kind) {
    switch (kind) {
    case AnsatzKind::HEA:
        return "hea";
    case AnsatzKind::HVA:
        return "hva";
    case AnsatzKind::HVAVariant:
        return "hva-variant";
    case AnsatzKind::Tiled:
        return "tiled";
    }
    return "unknown";
}

std::string to_string(Entangler entangler) {
    return entangler == Entangler::Ring ? "ring" : "chain";
}

Entangler entangler_from_string(std::string_view name) {
    if (name == "ring") {
        return Entangler::Ring;
    }
    if (name == "chain") {
        return Entangler::Chain;
    }
    fail(ErrorCode::InvalidArgument, "unknown entangler '" + std::string(name) + "' (ring, chain)");
}

AnsatzKind ansatz_kind_from_string(std::string_view name) {
    if (name == "hea") {
        return AnsatzKind::HEA;
    }
    if (name == "hva") {
        return AnsatzKind::HVA;
    }
    if (name == "hva-variant") {
        return AnsatzKind::HVAVariant;
    }
    if (name == "tiled") {
        return AnsatzKind::Tiled;
    }
    fail(ErrorCode::Parse, "unknown ansatz '" + std::string(name) + "'");
}

CircuitSpec::CircuitSpec(std::size_t num_qubits, AnsatzKind kind, std::size_t layers,
                         std::size_t params_per_layer, std::vector<GateSlot> gates,
                         std::vector<ParamSlot> layout, Entangler entangler)
    : num_qubits_(num_qubits), kind_(kind), layers_(layers), params_per_layer_(params_per_layer),
      gates_(std::move(gates)), layout_(std::move(layout)), entangler_(entangler) {
    require(num_qubits_ >= 1 && num_qubits_ <= kMaxStateQubits, ErrorCode::InvalidSize,
            "circuit qubit count out of range");
    std::vector<bool> used(layout_.size(), false);
    for (const auto &g : gates_) {
        for (auto q : g.qubits) {
            require(q < num_qubits_, ErrorCode::OutOfRange, "gate acts outside the register");
        }
        switch (g.kind) {
        case GateKind::CZ:
            require(!g.param_index, ErrorCode::InvalidArgument, "CZ carries no parameter");
            require(g.qubits.size() == 2 && g.qubits[0] != g.qubits[1], ErrorCode::InvalidPair,
                    "CZ needs two distinct qubits");
            break;
        case GateKind::RotX:
        case GateKind::RotZ:
            require(g.qubits.size() == 1, ErrorCode::InvalidArgument, "rotation acts on one qubit");
            require(g.param_index.has_value(), ErrorCode::InvalidArgument,
                    "rotation needs a parameter");
            break;
        case GateKind::PauliExp:
            require(g.param_index.has_value() && g.fixed_term.has_value(),
                    ErrorCode::InvalidArgument, "Pauli exponential needs a parameter and a term");
            if (!g.fixed_term->factors.empty()) {
                require(g.fixed_term->max_qubit() < num_qubits_, ErrorCode::OutOfRange,
                        "Pauli exponential acts outside the register");
            }
            break;
        }
        if (g.param_index) {
            require(*g.param_index < layout_.size(), ErrorCode::OutOfRange,
                    "gate parameter index exceeds the layout");
            used[*g.param_index] = true;
        }
    }
    require(std::all_of(used.begin(), used.end(), [](bool u) { return u; }),
            ErrorCode::InvalidArgument, "every parameter must drive at least one gate");
}

std::size_t CircuitSpec::index_of(const ParamSlot &slot) const {
    const auto it = std::find(layout_.begin(), layout_.end(), slot);
    require(it != layout_.end(), ErrorCode::OutOfRange,
            "no parameter at copy " + std::to_string(slot.copy) + ", layer " +
                std::to_string(slot.layer) + ", position " + std::to_string(slot.position));
    return static_cast<std::size_t>(it - layout_.begin());
}

CircuitSpec build_hea(std::size_t num_qubits, std::size_t blocks, Entangler entangler) {
    require(num_qubits >= 2, ErrorCode::InvalidSize, "HEA needs at least two qubits for the CZ ring");
    require(blocks >= 1, ErrorCode::InvalidArgument, "HEA needs at least one block");
    std::vector<GateSlot> gates;
    std::vector<ParamSlot> layout;
    const std::size_t per_layer = 3 * num_qubits;
    for (std::size_t p = 0; p < blocks; ++p) {
        for (std::size_t q = 0; q < num_qubits; ++q) {
            const std::size_t base = p * per_layer + 3 * q;
            gates.push_back({GateKind::RotZ, {q}, base, std::nullopt});
            gates.push_back({GateKind::RotX, {q}, base + 1, std::nullopt});
            gates.push_back({GateKind::RotZ, {q}, base + 2, std::nullopt});
            for (std::size_t r = 0; r < 3; ++r) {
                layout.push_back({0, p, 3 * q + r});
            }
        }
        for (std::size_t q = 0; q + 1 < num_qubits; ++q) {
            gates.push_back({GateKind::CZ, {q, q + 1}, std::nullopt, std::nullopt});
        }
        if (entangler == Entangler::Ring) {
            gates.push_back({GateKind::CZ, {num_qubits - 1, 0}, std::nullopt, std::nullopt});
        }
    }
    return CircuitSpec(num_qubits, AnsatzKind::HEA, blocks, per_layer, std::move(gates),
                       std::move(layout), entangler);
}

CircuitSpec build_hva(std::span<const PauliSum> parts, std::size_t layers) {
    return build_hva_impl(parts, layers, false);
}

CircuitSpec build_hva_variant(std::span<const PauliSum> parts, std::size_t layers) {
    require(layers % 2 == 0, ErrorCode::InvalidArgument,
            "the mirrored HVA variant needs an even layer count, got " + std::to_string(layers));
    return build_hva_impl(parts, layers, true);
}

CircuitSpec tile_circuit(const CircuitSpec &base, std::size_t num_qubits,
                         std::span<const std::size_t> offsets) {
    require(!offsets.empty(), ErrorCode::InvalidArgument, "tiling needs at least one copy");
    const std::size_t l_base = base.num_params();
    std::vector<GateSlot> gates;
    std::vector<ParamSlot> layout;
    for (std::size_t copy = 0; copy < offsets.size(); ++copy) {
        const std::size_t offset = offsets[copy];
        require(offset + base.num_qubits() <= num_qubits, ErrorCode::OutOfRange,
                "tile copy " + std::to_string(copy) + " does not fit the register");
        for (const auto &slot : base.layout()) {
            layout.push_back({copy, slot.layer, slot.position});
        }
        for (auto g : base.gates()) {
            for (auto &q : g.qubits) {
                q += offset;
            }
            if (g.param_index) {
                *g.param_index += copy * l_base;
            }
            if (g.fixed_term) {
                for (auto &f : g.fixed_term->factors) {
                    f.qubit += offset;
                }
            }
            gates.push_back(std::move(g));
        }
    }
    CircuitSpec out(num_qubits, AnsatzKind::Tiled, base.layers(), base.params_per_layer(),
                    std::move(gates), std::move(layout), base.entangler());
    out.tile_ = std::make_shared<const CircuitSpec>(base);
    out.offsets_.assign(offsets.begin(), offsets.end());
    return out;
}

PauliTerm generator(const GateSlot &gate) {
    switch (gate.kind) {
    case GateKind::RotX:
        return PauliTerm{0.5, {{gate.qubits.at(0), PauliAxis::X}}};
    case GateKind::RotZ:
        return PauliTerm{0.5, {{gate.qubits.at(0), PauliAxis::Z}}};
    case GateKind::PauliExp:
        return gate.fixed_term.value();
    case GateKind::CZ:
        break;
    }
    fail(ErrorCode::InvalidArgument, "CZ has no generator");
}

void apply_gate(StateVector &state, const GateSlot &gate, double theta) {
    switch (gate.kind) {
    case GateKind::RotX:
        state.apply_rotation(RotationAxis::X, gate.qubits[0], theta);
        break;
    case GateKind::RotZ:
        state.apply_rotation(RotationAxis::Z, gate.qubits[0], theta);
        break;
    case GateKind::CZ:
        state.apply_cz(gate.qubits[0], gate.qubits[1]);
        break;
    case GateKind::PauliExp:
        state.apply_pauli_exp(*gate.fixed_term, theta);
        break;
    }
}

StateVector evaluate(const CircuitSpec &circuit, std::span<const double> params,
                     StateVector initial) {
    require(params.size() == circuit.num_params(), ErrorCode::ShapeMismatch,
            "expected " + std::to_string(circuit.num_params()) + " parameters, got " +
                std::to_string(params.size()));
    require(initial.num_qubits() == circuit.num_qubits(), ErrorCode::ShapeMismatch,
            "initial state qubit count does not match the circuit");
    for (const auto &g : circuit.gates()) {
        apply_gate(initial, g, g.param_index ? params[*g.param_index] : 0.0);
    }
    return initial;
}

} // namespace qtransfer
