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
/**
 * @file
 * Parameterized circuits: hardware-efficient (HEA), Hamiltonian variational
 * (HVA) and the mirrored HVA variant, lowered to flat gate lists with an
 * explicit parameter layout.
 *
 * Layout conventions:
 *  - HEA: parameter (layer p, qubit q, rotation r) has position 3q + r within
 *    its layer, where r = 0, 1, 2 are the Rz, Rx, Rz of that qubit, and index
 *    p * 3n + 3q + r.
 *  - HVA and variant: parameter (layer p, part m) has position m and index
 *    p * M + m, independent of the order the variant applies the parts in.
 */
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtransfer/pauli.hpp"
#include "qtransfer/statevector.hpp"

namespace qtransfer {

enum class GateKind { RotX, RotZ, CZ, PauliExp };

struct GateSlot {
    GateKind kind;
    std::vector<std::size_t> qubits;
    std::optional<std::size_t> param_index;
    std::optional<PauliTerm> fixed_term; // PauliExp only

    [[nodiscard]] bool is_parameterized() const noexcept { return param_index.has_value(); }
};

enum class AnsatzKind { HEA, HVA, HVAVariant, Tiled };

/// HEA entangling layer: CZ(q, q+1) for all q, plus the closing CZ(n-1, 0) for Ring.
enum class Entangler { Ring, Chain };

std::string to_string(Entangler entangler);
Entangler entangler_from_string(std::string_view name);

std::string to_string(AnsatzKind kind);
AnsatzKind ansatz_kind_from_string(std::string_view name);

/// Address of one parameter: which tiled copy, which layer, which slot in the layer.
struct ParamSlot {
    std::size_t copy = 0;
    std::size_t layer = 0;
    std::size_t position = 0;

    bool operator==(const ParamSlot &) const = default;
};

class CircuitSpec {
  public:
    /// Validates the gate/layout invariants; see the builders for normal use.
    CircuitSpec(std::size_t num_qubits, AnsatzKind kind, std::size_t layers,
                std::size_t params_per_layer, std::vector<GateSlot> gates,
                std::vector<ParamSlot> layout, Entangler entangler = Entangler::Ring);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] AnsatzKind kind() const noexcept { return kind_; }
    /// Layers per copy (blocks for HEA).
    [[nodiscard]] std::size_t layers() const noexcept { return layers_; }
    [[nodiscard]] std::size_t params_per_layer() const noexcept { return params_per_layer_; }
    /// Meaningful for HEA circuits and tiles of them.
    [[nodiscard]] Entangler entangler() const noexcept { return entangler_; }
    [[nodiscard]] std::size_t num_params() const noexcept { return layout_.size(); }
    [[nodiscard]] const std::vector<GateSlot> &gates() const noexcept { return gates_; }
    [[nodiscard]] const std::vector<ParamSlot> &layout() const noexcept { return layout_; }

    /// Parameter index of (copy, layer, position); throws if absent.
    [[nodiscard]] std::size_t index_of(const ParamSlot &slot) const;

    /// For tiled circuits: the circuit of one copy and each copy's qubit offset.
    [[nodiscard]] const CircuitSpec *tile() const noexcept { return tile_.get(); }
    [[nodiscard]] const std::vector<std::size_t> &tile_offsets() const noexcept { return offsets_; }

  private:
    friend CircuitSpec tile_circuit(const CircuitSpec &, std::size_t, std::span<const std::size_t>);

    std::size_t num_qubits_;
    AnsatzKind kind_;
    std::size_t layers_;
    std::size_t params_per_layer_;
    std::vector<GateSlot> gates_;
    std::vector<ParamSlot> layout_;
    Entangler entangler_;
    std::shared_ptr<const CircuitSpec> tile_;
    std::vector<std::size_t> offsets_;
};

/// P blocks of [Rz Rx Rz on every qubit] then CZ(0,1)...CZ(n-2,n-1), CZ(n-1,0).
/// The closing CZ is dropped for Chain. For n = 2 the ring is CZ(0,1) CZ(1,0), which cancels.
CircuitSpec build_hea(std::size_t num_qubits, std::size_t blocks,
                      Entangler entangler = Entangler::Ring);

/// P layers of exp(-i theta_{p,m} H_m) for m = 1..M. Parts must be internally commuting.
CircuitSpec build_hva(std::span<const PauliSum> parts, std::size_t layers);

/// Like build_hva, but even layers (1-based) apply the parts in reverse order. P must be even.
CircuitSpec build_hva_variant(std::span<const PauliSum> parts, std::size_t layers);

/**
 * Places copies of `base` on qubits [offset, offset + n_base) of a larger
 * register, in the given order. Copy i owns parameters
 * [i * L_base, (i + 1) * L_base).
 */
CircuitSpec tile_circuit(const CircuitSpec &base, std::size_t num_qubits,
                         std::span<const std::size_t> offsets);

void apply_gate(StateVector &state, const GateSlot &gate, double theta);

/// U(params) applied to `initial`, gates in sequence order.
StateVector evaluate(const CircuitSpec &circuit, std::span<const double> params,
                     StateVector initial);

/// The Hermitian generator G of a parameterized gate exp(-i theta G) as a Pauli term.
PauliTerm generator(const GateSlot &gate);

} // namespace qtransfer
