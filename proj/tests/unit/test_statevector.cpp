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
#include <numbers>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "catch_amalgamated.hpp"

#include "oracle.hpp"
#include "qtransfer/error.hpp"
#include "qtransfer/models.hpp"
#include "qtransfer/random.hpp"
#include "qtransfer/statevector.hpp"

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

StateVector random_state(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> normal;
    std::vector<Complex> a(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &x : a) {
        x = {normal(rng), normal(rng)};
        norm += std::norm(x);
    }
    for (auto &x : a) {
        x /= std::sqrt(norm);
    }
    return StateVector::from_amplitudes(std::move(a));
}

oracle::Vector to_vec(const StateVector &s) {
    oracle::Vector v(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

double distance(const StateVector &s, const oracle::Vector &v) { return (to_vec(s) - v).norm(); }

} // namespace

TEST_CASE("zero state", "[statevector]") {
    const auto s1 = StateVector::zero(1);
    CHECK(s1.dimension() == 2);
    CHECK(s1[0] == Complex(1.0));
    CHECK(s1[1] == Complex(0.0));
    const auto s2 = StateVector::zero(2);
    CHECK(s2.dimension() == 4);
    CHECK(s2[0] == Complex(1.0));
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK(s2[i] == Complex(0.0));
    }
    const auto s3 = StateVector::zero(3);
    CHECK(s3.dimension() == 8);
    CHECK(s3[0] == Complex(1.0));
    CHECK(code_of([] { StateVector::zero(0); }) == ErrorCode::InvalidSize);
    CHECK(code_of([] { StateVector::zero(kMaxStateQubits + 1); }) == ErrorCode::InvalidSize);
}

TEST_CASE("single-qubit rotations", "[statevector]") {
    auto s = StateVector::zero(1);
    s.apply_rotation(RotationAxis::X, 0, std::numbers::pi);
    CHECK(std::abs(s[0]) < 1e-15);
    CHECK(std::abs(s[1] - Complex(0, -1)) < 1e-15);

    const double theta = 0.83;
    auto z = StateVector::zero(1);
    z.apply_rotation(RotationAxis::Z, 0, theta);
    CHECK(std::abs(z[0] - std::exp(Complex(0, -theta / 2))) < 1e-15);
    CHECK(std::abs(z[1]) < 1e-15);

    CHECK(code_of([] { StateVector::zero(2).apply_rotation(RotationAxis::X, 2, 0.1); }) ==
          ErrorCode::OutOfRange);
}

TEST_CASE("rotation on a random state matches the dense matrix", "[statevector]") {
    auto s = random_state(3, 7);
    const auto before = to_vec(s);
    s.apply_rotation(RotationAxis::X, 1, 0.7);
    GateSlot g{GateKind::RotX, {1}, 0, std::nullopt};
    CHECK(distance(s, oracle::gate_matrix(g, 0.7, 3) * before) < 1e-12);
}

TEST_CASE("controlled-Z", "[statevector]") {
    auto s11 = StateVector::basis(2, 3);
    s11.apply_cz(0, 1);
    CHECK(s11[3] == Complex(-1.0));
    auto s01 = StateVector::basis(2, 1);
    s01.apply_cz(0, 1);
    CHECK(s01[1] == Complex(1.0));

    auto a = random_state(3, 11);
    auto b = a;
    a.apply_cz(0, 2);
    b.apply_cz(2, 0);
    CHECK(a == b);
    CHECK(code_of([] { StateVector::zero(2).apply_cz(1, 1); }) == ErrorCode::InvalidPair);
}

TEST_CASE("Pauli exponentials", "[statevector]") {
    const double theta = 0.41;
    auto s = StateVector::zero(1);
    s.apply_pauli_exp(pauli_term(1.0, "Z0"), theta);
    CHECK(std::abs(s[0] - std::exp(Complex(0, -theta))) < 1e-15);

    auto r = random_state(3, 5);
    const auto unchanged = r;
    r.apply_pauli_exp(pauli_term(1.0, "X0 X1"), 0.0);
    CHECK(r == unchanged);

    // Dense exponential through the matrix function module as an independent reference.
    auto q = random_state(3, 9);
    const auto before = to_vec(q);
    q.apply_pauli_exp(pauli_term(1.0, "X0 X1"), 0.3);
    const oracle::Matrix gen = Complex(0, -0.3) * oracle::word_matrix("XXI");
    CHECK(distance(q, gen.exp() * before) < 1e-12);

    auto y = random_state(3, 13);
    const auto ybefore = to_vec(y);
    y.apply_pauli_exp(pauli_term(-0.6, "Y0 Z2"), 0.45);
    const oracle::Matrix ygen = Complex(0, 0.6 * 0.45) * oracle::word_matrix("YIZ");
    CHECK(distance(y, ygen.exp() * ybefore) < 1e-12);

    CHECK(code_of([] { StateVector::zero(2).apply_pauli_exp(pauli_term(1.0, "Z3"), 0.1); }) ==
          ErrorCode::OutOfRange);
}

TEST_CASE("expectation values", "[statevector]") {
    CHECK_THAT(expectation(StateVector::zero(4), canonicalize({pauli_term(1.0, "Z0")}, 4)),
               WithinAbs(1.0, 1e-15));
    CHECK_THAT(expectation(StateVector::zero(1), canonicalize({pauli_term(1.0, "X0")}, 1)),
               WithinAbs(0.0, 1e-15));

    const auto h = build_tfim(4, 1.0, 2.0, Boundary::Periodic);
    const auto s = random_state(4, 3);
    CHECK_THAT(expectation(s, h), WithinAbs(oracle::dense_expectation(to_vec(s), to_dense(h)), 1e-12));
    CHECK(code_of([&] { (void)expectation(StateVector::zero(3), h); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("fidelity", "[statevector]") {
    const auto psi = random_state(3, 21);
    CHECK_THAT(fidelity(psi, psi), WithinAbs(1.0, 1e-14));
    CHECK_THAT(fidelity(StateVector::basis(1, 0), StateVector::basis(1, 1)), WithinAbs(0.0, 1e-15));

    std::vector<Complex> rotated(psi.amplitudes().begin(), psi.amplitudes().end());
    for (auto &a : rotated) {
        a *= std::exp(Complex(0, 1.234));
    }
    CHECK_THAT(fidelity(psi, StateVector::from_amplitudes(rotated)), WithinAbs(1.0, 1e-14));
    CHECK(code_of([&] { (void)fidelity(psi, StateVector::zero(2)); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("tensor product puts the first factor on the low qubits", "[statevector]") {
    const auto low = random_state(2, 1);
    const auto high = random_state(1, 2);
    const auto t = tensor_product(low, high);
    CHECK((to_vec(t) - oracle::kron(to_vec(high), to_vec(low))).norm() < 1e-14);
}

TEST_CASE("Hamiltonian application matches the dense matrix", "[statevector]") {
    const auto h = canonicalize({pauli_term(0.3, "X0 Y1"), pauli_term(-1.2, "Z2"),
                                 pauli_term(0.5, "Y0 Y1 Y2"), pauli_term(0.25, "I")},
                                3);
    auto s = random_state(3, 17);
    const auto before = to_vec(s);
    s.apply_hamiltonian(h);
    CHECK((to_vec(s) - oracle::dense_hamiltonian(h) * before).norm() < 1e-12);
}
