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
#include <cmath>
#include <string>

#include "catch_amalgamated.hpp"

#include "oracle.hpp"
#include "qtransfer/error.hpp"
#include "qtransfer/models.hpp"
#include "qtransfer/pauli.hpp"

using namespace qtransfer;
using Catch::Matchers::WithinAbs;

namespace {

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InternalConsistency;
}

} // namespace

TEST_CASE("canonicalize merges equal strings", "[pauli]") {
    const auto h = canonicalize({pauli_term(1.0, "Z0"), pauli_term(2.0, "Z0")}, 1);
    REQUIRE(h.size() == 1);
    CHECK(h.terms()[0].coefficient == 3.0);
    CHECK(h.terms()[0].label() == "Z0");
}

TEST_CASE("canonicalize drops negligible coefficients", "[pauli]") {
    CHECK(canonicalize({pauli_term(1e-15, "X0")}, 2).empty());
    CHECK(canonicalize({pauli_term(1.0, "X0"), pauli_term(-1.0, "X0")}, 2).empty());
}

TEST_CASE("canonicalize sorts factors by qubit", "[pauli]") {
    const auto h = canonicalize({pauli_term(0.5, "X1 Z0")}, 2);
    REQUIRE(h.size() == 1);
    const auto &f = h.terms()[0].factors;
    REQUIRE(f.size() == 2);
    CHECK(f[0].qubit == 0);
    CHECK(f[0].axis == PauliAxis::Z);
    CHECK(f[1].qubit == 1);
    CHECK(f[1].axis == PauliAxis::X);
}

TEST_CASE("canonicalize rejects bad qubit indices and sizes", "[pauli]") {
    CHECK(code_of([] { canonicalize({pauli_term(1.0, "Z2")}, 2); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { canonicalize(std::vector<PauliTerm>{}, 0); }) == ErrorCode::InvalidSize);
    CHECK(code_of([] { pauli_term(1.0, "Z0 X0"); }) != ErrorCode::OutOfRange);
}

TEST_CASE("to_dense of single Paulis", "[pauli]") {
    const auto z = to_dense(canonicalize({pauli_term(1.0, "Z0")}, 1));
    CHECK(z(0, 0) == Complex(1.0));
    CHECK(z(1, 1) == Complex(-1.0));
    CHECK(z(0, 1) == Complex(0.0));

    const auto xx = to_dense(canonicalize({pauli_term(1.0, "X0 X1")}, 2));
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            CHECK(xx(r, c) == Complex(r + c == 3 ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("to_dense matches the Kronecker oracle", "[pauli]") {
    const auto h = build_tfim(4, 1.0, 2.0, Boundary::Periodic);
    CHECK((to_dense(h) - oracle::dense_hamiltonian(h)).norm() < 1e-12);

    const auto y = canonicalize({pauli_term(0.7, "Y0 Z2"), pauli_term(-0.3, "X1 Y2")}, 3);
    CHECK((to_dense(y) - oracle::dense_hamiltonian(y)).norm() < 1e-12);
}

TEST_CASE("to_dense refuses registers above the dense limit", "[pauli]") {
    const auto h = canonicalize({pauli_term(1.0, "Z12")}, 13);
    CHECK(code_of([&] { (void)to_dense(h); }) == ErrorCode::SizeLimit);
    CHECK(code_of([&] { (void)ground_energy(h); }) == ErrorCode::SizeLimit);
}

TEST_CASE("ground energies of elementary Hamiltonians", "[pauli]") {
    CHECK_THAT(ground_energy(canonicalize({pauli_term(-1.0, "Z0")}, 1)), WithinAbs(-1.0, 1e-12));
    CHECK_THAT(ground_energy(build_tfim(4, 1.0, 0.0, Boundary::Periodic)), WithinAbs(-4.0, 1e-12));
}

TEST_CASE("dense eigensolver agrees with power iteration", "[pauli]") {
    const auto h = build_tfim(4, 1.0, 2.0, Boundary::Periodic);
    const double reference = oracle::power_iteration_ground(oracle::dense_hamiltonian(h));
    CHECK_THAT(ground_energy(h), WithinAbs(reference, 1e-8));
}

TEST_CASE("Lanczos path agrees with the closed form above the dense-diagonalization size", "[pauli]") {
    // Periodic TFIM at h = 0: all spins aligned, E0 = -J n.
    CHECK_THAT(ground_energy(build_tfim(11, 1.0, 0.0, Boundary::Periodic)), WithinAbs(-11.0, 1e-8));
    // Free spins in a field: E0 = -h n.
    CHECK_THAT(ground_energy(build_tfim(11, 0.0, 1.5, Boundary::Open)), WithinAbs(-16.5, 1e-8));
}

TEST_CASE("ground energy shift and scaling invariants", "[pauli]") {
    const auto h = build_tfim(4, 1.0, 2.0, Boundary::Periodic);
    const double e = ground_energy(h);
    const auto shifted = h + PauliSum::identity(4, 3.25);
    CHECK_THAT(ground_energy(shifted), WithinAbs(e + 3.25, 1e-10));
    CHECK_THAT(ground_energy(h.scaled(2.5)), WithinAbs(2.5 * e, 1e-10));
}

TEST_CASE("ground space spans degenerate minima", "[pauli]") {
    // -Z0 Z1 has ground states |00> and |11>.
    const auto space = ground_space(canonicalize({pauli_term(-1.0, "Z0 Z1")}, 2));
    CHECK(space.cols() == 2);
    CHECK((space.adjoint() * space - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-10);
}

TEST_CASE("commutation of Pauli strings", "[pauli]") {
    CHECK(commutes(pauli_term(1, "X0 X1"), pauli_term(1, "Z0 Z1")));
    CHECK_FALSE(commutes(pauli_term(1, "X0"), pauli_term(1, "Z0")));
    CHECK(commutes(pauli_term(1, "X0"), pauli_term(1, "Z1")));
}

TEST_CASE("Hamiltonian text parses and round-trips", "[pauli]") {
    const auto parsed = parse_hamiltonian("# qubits: 1\n-1.0 Z\n");
    CHECK(parsed.hamiltonian == canonicalize({pauli_term(-1.0, "Z0")}, 1));
    CHECK_FALSE(parsed.reference_energy.has_value());

    const auto h = canonicalize({pauli_term(0.1, "X0 Y2"), pauli_term(-0.4804, "Z1"),
                                 pauli_term(1.0 / 3.0, "I")},
                                3);
    const std::string text = format_hamiltonian(h, -1.25);
    const auto back = parse_hamiltonian(text);
    CHECK(back.hamiltonian == h);
    REQUIRE(back.reference_energy.has_value());
    CHECK(*back.reference_energy == -1.25);
    CHECK(format_hamiltonian(back.hamiltonian, back.reference_energy) == text);
}

TEST_CASE("Hamiltonian text errors carry line numbers", "[pauli]") {
    try {
        parse_hamiltonian("# qubits: 2\n1.0 ZZ\n0.5 ZZZ\n");
        FAIL("expected a parse error");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::Parse);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK(code_of([] { parse_hamiltonian("# qubits: 1\nabc Z\n"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_hamiltonian("# qubits: 1\n1.0 Q\n"); }) == ErrorCode::Parse);
}

TEST_CASE("doubles format and parse round-trip", "[pauli]") {
    for (double v : {0.1, -1.1372838344885028, 1e-300, 123456789.125, 0.0}) {
        const auto back = parse_double(format_double(v));
        REQUIRE(back.has_value());
        CHECK(*back == v);
    }
    CHECK_FALSE(parse_double("1.0x").has_value());
}
