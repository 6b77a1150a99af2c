#!/usr/bin/env python3
# Copyright 2026 The qtransfer Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes qubit Hamiltonians for linear hydrogen chains in the qtransfer text format.

Requires pyscf (integrals, FCI) and openfermion (Jordan-Wigner). These are
external tools; the C++ code only ever reads the files this script produces.

Conventions:
  * STO-3G basis, atoms on the z axis with uniform spacing (default 0.74 A).
  * Molecular orbitals come from an RHF calculation on the closed-shell
    reference: H2 (charge 0, singlet) and H3+ (charge +1, singlet). The qubit
    Hamiltonian itself carries no electron count.
  * Spin orbitals are interleaved (alpha_0, beta_0, alpha_1, ...) and mapped
    with Jordan-Wigner; spin orbital k becomes qubit k.
  * reference_energy is the lowest eigenvalue of the qubit Hamiltonian over
    the whole Fock space, obtained as the minimum over every (N_alpha, N_beta)
    sector of a pyscf FCI solve. A variational circuit started from |0...0>
    does not conserve particle number, so this is the value it targets.
"""

import argparse
import itertools

import numpy as np
import openfermion
from openfermion.chem.molecular_data import spinorb_from_spatial
from pyscf import ao2mo, fci, gto, scf


def build(num_atoms, spacing):
    charge = num_atoms % 2
    mol = gto.M(
        atom=[("H", (0.0, 0.0, k * spacing)) for k in range(num_atoms)],
        basis="sto-3g",
        charge=charge,
        spin=0,
        unit="Angstrom",
        verbose=0,
    )
    mf = scf.RHF(mol).run()
    coeff = mf.mo_coeff
    norb = coeff.shape[1]
    h1 = coeff.T @ mf.get_hcore() @ coeff
    eri = ao2mo.restore(1, ao2mo.full(mol, coeff), norb)
    enuc = mol.energy_nuc()

    two_body = np.asarray(eri.transpose(0, 2, 3, 1), order="C")
    one_so, two_so = spinorb_from_spatial(h1, two_body)
    op = openfermion.InteractionOperator(enuc, one_so, 0.5 * two_so)
    qubit_op = openfermion.jordan_wigner(openfermion.get_fermion_operator(op))
    qubit_op.compress(1e-12)

    best = None
    for na, nb in itertools.product(range(norb + 1), repeat=2):
        if na + nb == 0:
            energy = enuc
        else:
            solver = fci.direct_spin1.FCI()
            solver.conv_tol = 1e-13
            energy, _ = solver.kernel(h1, eri, norb, (na, nb), ecore=enuc, nroots=1)
        if best is None or energy < best[0]:
            best = (float(energy), na, nb)
    return qubit_op, 2 * norb, best, charge


def write(path, qubit_op, num_qubits, best, num_atoms, spacing, charge):
    lines = [
        f"# qubits: {num_qubits}",
        f"# reference_energy: {best[0]:.17g}",
        f"# H{num_atoms} linear chain, spacing {spacing} A, STO-3G, Jordan-Wigner",
        f"# orbitals from RHF with charge {charge}; minimum found in sector "
        f"N_alpha={best[1]} N_beta={best[2]}",
    ]
    for term, coeff in sorted(qubit_op.terms.items()):
        if abs(coeff.imag) > 1e-12:
            raise ValueError(f"complex coefficient on {term}")
        word = ["I"] * num_qubits
        for qubit, axis in term:
            word[qubit] = axis
        lines.append(f"{coeff.real:.17g} {''.join(word)}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--atoms", type=int, required=True)
    parser.add_argument("--spacing", type=float, default=0.74)
    parser.add_argument("--out", required=True)
    args = parser.parse_args()
    qubit_op, num_qubits, best, charge = build(args.atoms, args.spacing)
    write(args.out, qubit_op, num_qubits, best, args.atoms, args.spacing, charge)
    print(f"wrote {args.out}: {num_qubits} qubits, reference {best[0]:.12f}")


if __name__ == "__main__":
    main()
