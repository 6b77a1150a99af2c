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
 * Initial parameters for target circuits: cold start, network transfer,
 * structure transfer and block-identity (BLE) pairs, plus the pool of
 * trained base solutions they draw from.
 *
 * Random parameters are uniform on [-pi, pi). All draws go through an
 * explicit Rng, in ascending parameter order, so a seed fixes the result.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qtransfer/ansatz.hpp"
#include "qtransfer/random.hpp"

namespace qtransfer {

std::vector<double> random_params(std::size_t count, Rng &rng);

/// Per-block marker string over {T, R}: T copies trained parameters, R draws fresh ones.
class TransferString {
  public:
    static TransferString parse(std::string_view text);
    static TransferString uniform(std::size_t length, bool transferred);

    [[nodiscard]] std::size_t size() const noexcept { return transferred_.size(); }
    [[nodiscard]] bool transferred(std::size_t block) const { return transferred_.at(block); }
    [[nodiscard]] bool any_transferred() const noexcept;
    [[nodiscard]] std::string str() const;

  private:
    std::vector<bool> transferred_;
};

struct NetworkTransfer {
    CircuitSpec circuit;
    std::vector<double> params;
};

/**
 * Tiles m - n + 1 copies of the n-qubit base circuit on qubits {i, ..., i+n-1}.
 * Copy i starts from the trained parameters when s[i] == 'T', random otherwise.
 * Only HEA bases are accepted.
 */
NetworkTransfer network_transfer(const CircuitSpec &base, std::span<const double> trained,
                                 std::size_t target_qubits, const TransferString &s, Rng &rng);

/**
 * Splits the target layers into s.size() equal contiguous blocks. A T block
 * takes target layer l from base layer (l mod P_base); for HEA only the first
 * n_base qubits are copied and the rest drawn at random. R blocks are random.
 */
std::vector<double> structure_transfer(const CircuitSpec &base, std::span<const double> trained,
                                       const CircuitSpec &target, const TransferString &s, Rng &rng);

/// Random odd layers, each followed by its negation so every pair composes to the identity.
std::vector<double> ble_init(const CircuitSpec &variant, Rng &rng);

struct PoolEntry {
    std::uint64_t seed = 0;
    double energy = 0.0;
    std::vector<double> params;

    bool operator==(const PoolEntry &) const = default;
};

/// Trained base solutions. Serialized as versioned JSON with 17-digit floats.
struct ParamPool {
    std::string task;
    std::string ansatz;
    std::string entangler; // HEA pools only
    std::size_t num_qubits = 0;
    std::size_t layers = 0;
    std::size_t num_params = 0;
    std::vector<PoolEntry> entries;
    nlohmann::json manifest = nlohmann::json::object();

    bool operator==(const ParamPool &) const = default;
};

inline constexpr int kPoolFormatVersion = 1;

std::string pool_to_json(const ParamPool &pool);
ParamPool pool_from_json(std::string_view text);
void pool_save(const ParamPool &pool, const std::filesystem::path &path);
ParamPool pool_load(const std::filesystem::path &path);

/// Fails unless the pool was trained on a circuit of this shape.
void check_pool_shape(const ParamPool &pool, const CircuitSpec &base);

/// Uniform draw over the entries.
const PoolEntry &pool_draw(const ParamPool &pool, Rng &rng);

} // namespace qtransfer
