# Pauli-string algebra and the Jordan-Wigner encoding, step by step.
#
# Run with:  python demos/01_pauli_and_jordan_wigner.py

import numpy as np

from qocavqe import (
    LatticeSpec,
    PauliString,
    PauliSum,
    commutator_is_zero,
    jw_hubbard,
    jw_ladder,
    jw_total_number,
    pauli_mul,
)

# ---------------------------------------------------------------------------
# Strings multiply with exact unit phases.

x, z = PauliString.from_label("X"), PauliString.from_label("Z")
phase, product = pauli_mul(x, z)
print(f"X * Z = ({phase}) * {product.label()}")

zz, zi = PauliString.from_label("ZZ"), PauliString.from_label("ZI")
phase, product = pauli_mul(zz, zi)
print(f"ZZ * ZI = ({phase}) * {product.label()}")

# Weighted sums behave like operators; the dense matrix is the oracle.
s = PauliSum.from_terms(2, [("XX", 0.5), ("YY", 0.5)])
print("\nhopping operator 0.5(XX+YY) as a matrix:")
print(np.round(s.to_dense().real, 3))

# ---------------------------------------------------------------------------
# Jordan-Wigner: ladder operators become strings with Z tails.

print("\na_1 on a 1-orbital register :", jw_ladder(1, False, 1))
print("a_2 on a 2-orbital register :", jw_ladder(2, False, 2))
print("a+_3 on a 3-orbital register:", jw_ladder(3, True, 3))

# The tails enforce fermionic anticommutation, which we can verify densely.
n = 3
a1 = jw_ladder(1, False, n)
a3 = jw_ladder(3, False, n)
anti = a1 * a3 + a3 * a1
print("\n{a_1, a_3} simplifies to the empty sum:", anti.simplify().is_zero)

# ---------------------------------------------------------------------------
# The lattice Hamiltonian conserves particle number; the drives break it.

lattice = LatticeSpec(rows=2, cols=2, t=1.0, u=4.0, mu=2.0)
hamiltonian = jw_hubbard(lattice)
number = jw_total_number(lattice.num_orbitals)
print("\n2x2 Hubbard model:", hamiltonian.num_terms, "Pauli terms")
print("[H, N_total] = 0:", commutator_is_zero(hamiltonian, number))

from qocavqe import DriveKind, DriveSpec, RegisterBlock, build_drive

drive = build_drive(
    DriveSpec(DriveKind.X_DRIVE, RegisterBlock.SPIN_UP), lattice.num_sites, 8
)
print("X drive on the spin-up register:", drive)
print("[H, drive] = 0:", commutator_is_zero(hamiltonian, drive))
