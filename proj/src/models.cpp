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
#include "qtransfer/models.hpp"

#include <algorithm>
#include <set>

#include "qtransfer/error.hpp"

namespace qtransfer {

std::string to_string(Boundary boundary) {
    return boundary == Boundary::Periodic ? "periodic" : "open";
}

Boundary boundary_from_string(std::string_view name) {
    if (name == "periodic") {
        return Boundary::Periodic;
    }
    if (name == "open") {
        return Boundary::Open;
    }
    fail(ErrorCode::Parse, "unknown boundary '" + std::string(name) + "' (expected open|periodic)");
}

Lattice Lattice::chain(std::size_t sites) {
    require(sites >= 2, ErrorCode::InvalidSize, "a chain needs at least two sites");
    return Lattice(1, sites);
}

Lattice Lattice::grid(std::size_t rows, std::size_t cols) {
    require(rows >= 2 && cols >= 2, ErrorCode::InvalidSize,
            "a grid needs at least 2 rows and 2 columns; use a chain otherwise");
    return Lattice(rows, cols);
}

std::vector<std::pair<std::size_t, std::size_t>> Lattice::bonds(Boundary boundary) const {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<std::pair<std::size_t, std::size_t>> out;
    auto add = [&](std::size_t a, std::size_t b) {
        const auto key = std::minmax(a, b);
        if (a != b && seen.insert(key).second) {
            out.emplace_back(key.first, key.second);
        }
    };
    const bool wrap = boundary == Boundary::Periodic;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c + 1 < cols_; ++c) {
            add(r * cols_ + c, r * cols_ + c + 1);
        }
        if (wrap && cols_ > 2) {
            add(r * cols_ + cols_ - 1, r * cols_);
        }
    }
    for (std::size_t c = 0; c < cols_; ++c) {
        for (std::size_t r = 0; r + 1 < rows_; ++r) {
            add(r * cols_ + c, (r + 1) * cols_ + c);
        }
        if (wrap && rows_ > 2) {
            add((rows_ - 1) * cols_ + c, c);
        }
    }
    return out;
}

PauliSum build_tfim(std::size_t sites, double coupling, double field, Boundary boundary) {
    const auto lattice = Lattice::chain(sites);
    std::vector<PauliTerm> terms;
    for (const auto &[i, j] : lattice.bonds(boundary)) {
        terms.push_back({-coupling, {{i, PauliAxis::Z}, {j, PauliAxis::Z}}});
    }
    for (std::size_t i = 0; i < sites; ++i) {
        terms.push_back({-field, {{i, PauliAxis::X}}});
    }
    return canonicalize(std::move(terms), sites);
}

XxzModel build_xxz(const Lattice &lattice, double coupling, double anisotropy, Boundary boundary) {
    const std::size_t n = lattice.num_sites();
    std::array<std::vector<PauliTerm>, 3> split;
    for (const auto &[i, j] : lattice.bonds(boundary)) {
        split[0].push_back({-coupling, {{i, PauliAxis::X}, {j, PauliAxis::X}}});
        split[1].push_back({-coupling, {{i, PauliAxis::Y}, {j, PauliAxis::Y}}});
        split[2].push_back({-coupling * anisotropy, {{i, PauliAxis::Z}, {j, PauliAxis::Z}}});
    }
    std::vector<PauliTerm> all;
    for (const auto &part : split) {
        all.insert(all.end(), part.begin(), part.end());
    }
    return XxzModel{canonicalize(all, n),
                    {canonicalize(split[0], n), canonicalize(split[1], n), canonicalize(split[2], n)}};
}

} // namespace qtransfer
