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
#include <filesystem>
#include <fstream>
#include <string>

#include "catch_amalgamated.hpp"

#include "oracle.hpp"
#include "qtransfer/error.hpp"
#include "qtransfer/models.hpp"
#include "qtransfer/tasks.hpp"

using namespace qtransfer;
using Catch::Matchers::WithinAbs;
namespace fs = std::filesystem;

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

fs::path scratch(const std::string &name) {
    const auto dir = fs::temp_directory_path() / "qtransfer_test_tasks";
    fs::create_directories(dir);
    return dir / name;
}

double coefficient_of(const PauliSum &h, const std::string &label) {
    for (const auto &t : h.terms()) {
        if (t.label() == label) {
            return t.coefficient;
        }
    }
    return 0.0;
}

const fs::path kChemistry = fs::path(QTRANSFER_TEST_DATA_DIR) / "chemistry";

} // namespace

TEST_CASE("TFIM terms", "[tasks]") {
    const auto two = build_tfim(2, 1.0, 0.0, Boundary::Open);
    REQUIRE(two.size() == 1);
    CHECK(two.terms()[0].label() == "Z0 Z1");
    CHECK(two.terms()[0].coefficient == -1.0);

    const auto four = build_tfim(4, 1.0, 2.0, Boundary::Periodic);
    CHECK(four.size() == 8);
    int zz = 0, x = 0;
    for (const auto &t : four.terms()) {
        if (t.factors.size() == 2) {
            ++zz;
            CHECK(t.coefficient == -1.0);
        } else {
            ++x;
            CHECK(t.coefficient == -2.0);
        }
    }
    CHECK(zz == 4);
    CHECK(x == 4);
    CHECK(coefficient_of(four, "Z0 Z3") == -1.0);
    CHECK_THAT(ground_energy(build_tfim(4, 1.0, 0.0, Boundary::Periodic)), WithinAbs(-4.0, 1e-12));
    CHECK(code_of([] { build_tfim(1, 1.0, 1.0, Boundary::Open); }) == ErrorCode::InvalidSize);
}

TEST_CASE("XXZ two-site chain", "[tasks]") {
    const auto m = build_xxz(Lattice::chain(2), 1.0, 2.0, Boundary::Open);
    CHECK(m.hamiltonian.size() == 3);
    CHECK(coefficient_of(m.hamiltonian, "X0 X1") == -1.0);
    CHECK(coefficient_of(m.hamiltonian, "Y0 Y1") == -1.0);
    CHECK(coefficient_of(m.hamiltonian, "Z0 Z1") == -2.0);
    CHECK(coefficient_of(m.parts[0], "X0 X1") == -1.0);
    CHECK(coefficient_of(m.parts[1], "Y0 Y1") == -1.0);
    CHECK(coefficient_of(m.parts[2], "Z0 Z1") == -2.0);
    // A periodic 2-site chain keeps a single bond.
    CHECK(build_xxz(Lattice::chain(2), 1.0, 2.0, Boundary::Periodic).hamiltonian == m.hamiltonian);
}

TEST_CASE("lattice bond counting", "[tasks]") {
    CHECK(Lattice::grid(2, 4).bonds(Boundary::Open).size() == 10);
    CHECK(Lattice::chain(4).bonds(Boundary::Periodic).size() == 4);
    CHECK(Lattice::chain(4).bonds(Boundary::Open).size() == 3);
    const auto m = build_xxz(Lattice::grid(2, 4), 1.0, 2.0, Boundary::Open);
    CHECK(m.hamiltonian.size() == 30);
    CHECK(code_of([] { Lattice::chain(1); }) == ErrorCode::InvalidSize);
    CHECK(code_of([] { Lattice::grid(1, 1); }) == ErrorCode::InvalidSize);
}

TEST_CASE("XXZ chain ground energy matches the dense oracle", "[tasks]") {
    const auto m = build_xxz(Lattice::chain(4), 1.0, 2.0, Boundary::Periodic);
    const auto dense = oracle::dense_hamiltonian(m.hamiltonian);
    Eigen::SelfAdjointEigenSolver<oracle::Matrix> es(dense);
    CHECK_THAT(ground_energy(m.hamiltonian), WithinAbs(es.eigenvalues()(0), 1e-10));
    // Ferromagnetic: the fully polarized state is a ground state, E0 = -delta * bonds.
    CHECK_THAT(ground_energy(m.hamiltonian), WithinAbs(-8.0, 1e-10));
}

TEST_CASE("Hamiltonian files load and round-trip", "[tasks]") {
    const auto p = scratch("one.txt");
    {
        std::ofstream(p) << "# qubits: 1\n-1.0 Z\n";
    }
    const auto h = load_hamiltonian_file(p);
    CHECK(h.hamiltonian == canonicalize({pauli_term(-1.0, "Z0")}, 1));

    const auto q = scratch("tfim.txt");
    save_hamiltonian_file(q, build_tfim(4, 1.0, 2.0, Boundary::Periodic), -8.5);
    const auto back = load_hamiltonian_file(q);
    CHECK(back.hamiltonian == build_tfim(4, 1.0, 2.0, Boundary::Periodic));
    const auto r = scratch("tfim2.txt");
    save_hamiltonian_file(r, back.hamiltonian, back.reference_energy);
    std::ifstream a(q), b(r);
    CHECK(std::string(std::istreambuf_iterator<char>(a), {}) ==
          std::string(std::istreambuf_iterator<char>(b), {}));

    const auto bad = scratch("bad.txt");
    {
        std::ofstream(bad) << "# qubits: 2\n0.5 ZZ\n1.0 ZZZ\n";
    }
    CHECK(code_of([&] { load_hamiltonian_file(bad); }) == ErrorCode::Parse);
    CHECK(code_of([&] { load_hamiltonian_file(scratch("missing.txt")); }) == ErrorCode::Io);
}

TEST_CASE("chemistry Hamiltonians match their reference energies", "[tasks]") {
    for (const char *name : {"h2_sto3g.txt", "h3_sto3g.txt"}) {
        const auto path = kChemistry / name;
        if (!fs::exists(path)) {
            SKIP("chemistry file " << path << " not present");
        }
        const auto h = load_hamiltonian_file(path);
        REQUIRE(h.reference_energy.has_value());
        CHECK_THAT(ground_energy(h.hamiltonian), WithinAbs(*h.reference_energy, 1e-8));
    }
}

TEST_CASE("task registry", "[tasks]") {
    const auto tasks = task_registry();
    REQUIRE(tasks.size() == 6);
    const auto a = find_task('A');
    for (const char *s : {"TTT", "RRT", "TTR", "RRR"}) {
        CHECK(is_allowed_init(a, s));
    }
    CHECK_FALSE(is_allowed_init(a, "TT"));
    CHECK_FALSE(is_allowed_init(a, "BLE"));
    CHECK(a.base.num_qubits() == 4);
    CHECK(a.target.num_qubits() == 6);
    CHECK(build_circuit(a.base).num_params() == 48);
    CHECK(target_circuit(a).num_params() == 144);

    const auto f = find_task('F');
    CHECK(f.supports_ble);
    CHECK(is_allowed_init(f, "BLE"));
    CHECK(f.target.ansatz == AnsatzKind::HVAVariant);

    const auto d = find_task('d');
    CHECK(d.base.layers == 4);
    CHECK(d.target.layers == 8);
    CHECK(build_circuit(d.base).num_params() == 12);

    const auto e = find_task('E');
    CHECK(e.target.num_qubits() == 8);
    CHECK(e.string_length == 4);
    CHECK(code_of([] { find_task('G'); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("task config overrides", "[tasks]") {
    const auto c = TaskConfig::from_json(nlohmann::json::parse(
        R"({"boundary": "open", "layers": {"base": 2, "target": 4}, "hea_entangler": "ring", "target_successes": 7})"));
    CHECK(c.chain_boundary == Boundary::Open);
    CHECK(c.hea_entangler == Entangler::Ring);
    const auto a = find_task('A', c);
    CHECK(a.target_successes == 7);
    CHECK(build_circuit(a.base).num_params() == 24);
    CHECK(build_circuit(a.base).entangler() == Entangler::Ring);
    CHECK(TaskConfig::from_json(c.to_json()).to_json() == c.to_json());
    CHECK(code_of([] { TaskConfig::from_json(nlohmann::json::parse(R"({"bogus": 1})")); }) ==
          ErrorCode::Config);
}

TEST_CASE("missing chemistry data marks task C unavailable", "[tasks]") {
    TaskConfig c;
    c.chemistry_dir = scratch("no_such_dir");
    const auto t = find_task('C', c);
    CHECK_FALSE(t.available);
    CHECK(t.unavailable_reason.find("not found") != std::string::npos);
}
