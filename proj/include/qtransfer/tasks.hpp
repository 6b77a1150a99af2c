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
 * Benchmark tasks A-F: a base problem trained from scratch and a larger
 * target problem initialized from the base solutions.
 *
 *  A  TFIM chain 4 -> 6 qubits, HEA 4 blocks, network transfer, strings of 3
 *  B  TFIM chain 4 -> 8 qubits, HEA 4 blocks, network transfer, strings of 5
 *  C  H2 (4 qubits, HEA 4) -> H3 (6 qubits, HEA 8), structure transfer, strings of 2
 *  D  XXZ chain 4 -> 8, HVA 4 -> 8 layers, structure transfer, strings of 2
 *  E  XXZ chain 4 -> 2x4 grid, HEA 4 -> 8 blocks, structure transfer, strings of 4
 *  F  XXZ chain 4 -> 8, mirrored HVA 4 -> 8 layers, structure transfer, strings of 2, BLE
 */
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qtransfer/ansatz.hpp"
#include "qtransfer/models.hpp"
#include "qtransfer/pauli.hpp"

namespace qtransfer {

/// Chemical accuracy in Hartree.
inline constexpr double kChemicalAccuracy = 1.6e-3;

enum class TransferMethod { Network, Structure };

std::string to_string(TransferMethod method);

/// One Hamiltonian plus the circuit recipe used to solve it.
struct ProblemSpec {
    std::string description;
    PauliSum hamiltonian{1};
    std::vector<PauliSum> parts; // HVA parts; empty for HEA
    AnsatzKind ansatz = AnsatzKind::HEA;
    Entangler entangler = Entangler::Chain; // HEA only
    std::size_t layers = 1;
    std::optional<double> reference_energy; // as written by an external oracle

    [[nodiscard]] std::size_t num_qubits() const noexcept { return hamiltonian.num_qubits(); }
};

CircuitSpec build_circuit(const ProblemSpec &problem);

struct TaskSpec {
    char id = 'A';
    bool available = true;
    std::string unavailable_reason;
    ProblemSpec base;
    ProblemSpec target;
    TransferMethod transfer = TransferMethod::Structure;
    std::size_t string_length = 0;
    std::vector<std::string> allowed_init_strings;
    bool supports_ble = false;
    double success_threshold = kChemicalAccuracy;
    std::size_t target_successes = 100;
    Boundary chain_boundary = Boundary::Periodic;
    Boundary grid_boundary = Boundary::Open;
};

/// The circuit trained on the target problem (network tasks tile the base circuit).
CircuitSpec target_circuit(const TaskSpec &task);

/// Overrides read from the task config file.
struct TaskConfig {
    Boundary chain_boundary = Boundary::Periodic;
    Boundary grid_boundary = Boundary::Open;
    std::optional<std::size_t> base_layers;
    std::optional<std::size_t> target_layers;
    /// Chain by default: with the closing CZ the 4-qubit HEA cannot reach the
    /// TFIM or H2 ground states at any depth, so the base tasks never succeed.
    Entangler hea_entangler = Entangler::Chain;
    double success_threshold = kChemicalAccuracy;
    std::size_t target_successes = 100;
    std::filesystem::path chemistry_dir = default_chemistry_dir();

    /// $QTRANSFER_CHEMISTRY_DIR, else the data directory of the source tree.
    static std::filesystem::path default_chemistry_dir();

    /// Keys: boundary (string or {chain, grid}), layers ({base, target}), hea_entangler,
    /// thresholds (number or {success}), target_successes, chemistry_dir.
    static TaskConfig from_json(const nlohmann::json &j);
    [[nodiscard]] nlohmann::json to_json() const;
};

std::vector<TaskSpec> task_registry(const TaskConfig &config = {});
TaskSpec find_task(char id, const TaskConfig &config = {});

/// True if `init` is a T/R string the task accepts (or "BLE" where supported).
bool is_allowed_init(const TaskSpec &task, std::string_view init);

HamiltonianText load_hamiltonian_file(const std::filesystem::path &path);
void save_hamiltonian_file(const std::filesystem::path &path, const PauliSum &h,
                           std::optional<double> reference_energy = std::nullopt);

} // namespace qtransfer
