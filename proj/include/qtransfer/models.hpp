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
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qtransfer/pauli.hpp"

namespace qtransfer {

enum class Boundary { Open, Periodic };

std::string to_string(Boundary boundary);
Boundary boundary_from_string(std::string_view name);

/// Chain or rectangular grid with row-major site numbering.
class Lattice {
  public:
    static Lattice chain(std::size_t sites);
    static Lattice grid(std::size_t rows, std::size_t cols);

    [[nodiscard]] std::size_t num_sites() const noexcept { return rows_ * cols_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_chain() const noexcept { return rows_ == 1; }

    /// Nearest-neighbour bonds (i < j), horizontal before vertical; no duplicates.
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> bonds(Boundary boundary) const;

  private:
    Lattice(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows_;
    std::size_t cols_;
};

/// H = -J sum_<ij> Z_i Z_j - h sum_i X_i on a chain.
PauliSum build_tfim(std::size_t sites, double coupling, double field, Boundary boundary);

struct XxzModel {
    PauliSum hamiltonian;
    std::array<PauliSum, 3> parts; // H_X, H_Y, H_Z
};

/// H = -J sum_<ij> (X_i X_j + Y_i Y_j + delta Z_i Z_j), split by axis.
XxzModel build_xxz(const Lattice &lattice, double coupling, double anisotropy, Boundary boundary);

} // namespace qtransfer
