"""Letter-string Pauli sums and the Jordan-Wigner map used for export.

Operators are plain ``dict[str, complex]`` keyed by letter strings like
``"ZIXY"`` with qubit 1 as the first character.  Spin orbitals follow the
consumer's convention: all spin-up spatial orbitals first (qubits 1..M),
then all spin-down (qubits M+1..2M); occupied orbital = qubit state 1.
"""

from __future__ import annotations

import numpy as np

# single-letter products: (a, b) -> (phase, result)
_MUL = {}
for letter in "IXYZ":
    _MUL[("I", letter)] = (1.0, letter)
    _MUL[(letter, "I")] = (1.0, letter)
    _MUL[(letter, letter)] = (1.0, "I")
for a, b, c, phase in (
    ("X", "Y", "Z", 1j),
    ("Y", "Z", "X", 1j),
    ("Z", "X", "Y", 1j),
    ("Y", "X", "Z", -1j),
    ("Z", "Y", "X", -1j),
    ("X", "Z", "Y", -1j),
):
    _MUL[(a, b)] = (phase, c)

PRUNE = 1e-12


def multiply(left: dict[str, complex], right: dict[str, complex]) -> dict[str, complex]:
    out: dict[str, complex] = {}
    for sa, ca in left.items():
        for sb, cb in right.items():
            phase = 1.0 + 0.0j
            letters = []
            for la, lb in zip(sa, sb):
                ph, lc = _MUL[(la, lb)]
                phase *= ph
                letters.append(lc)
            key = "".join(letters)
            out[key] = out.get(key, 0.0) + phase * ca * cb
    return {k: v for k, v in out.items() if abs(v) > PRUNE}


def add_into(acc: dict[str, complex], term: dict[str, complex], weight: complex) -> None:
    for key, value in term.items():
        acc[key] = acc.get(key, 0.0) + weight * value


def ladder(qubit: int, dagger: bool, n: int) -> dict[str, complex]:
    """JW image of one ladder operator: (X -/+ iY)/2 with a Z tail below."""
    head = "Z" * (qubit - 1)
    tail = "I" * (n - qubit)
    y_coeff = -0.5j if dagger else 0.5j
    return {head + "X" + tail: 0.5, head + "Y" + tail: y_coeff}


def qubit_hamiltonian(space, prune: float = PRUNE) -> dict[str, complex]:
    """Map the active-space Hamiltonian to a qubit Pauli sum.

    Uses the up-block/down-block spin-orbital ordering: spatial orbital p
    with spin up sits on qubit p+1, spin down on qubit M+p+1.
    """
    m = space.n_orbitals
    n = 2 * m
    ladders_ann = {q: ladder(q, False, n) for q in range(1, n + 1)}
    ladders_cre = {q: ladder(q, True, n) for q in range(1, n + 1)}

    def qubit_of(p: int, down: bool) -> int:
        return p + 1 + (m if down else 0)

    acc: dict[str, complex] = {"I" * n: complex(space.constant)}
    for p in range(m):
        for q in range(m):
            value = space.h1[p, q]
            if abs(value) < prune:
                continue
            for down in (False, True):
                term = multiply(
                    ladders_cre[qubit_of(p, down)], ladders_ann[qubit_of(q, down)]
                )
                add_into(acc, term, value)
    # 0.5 * (pq|rs) a+_{p,s1} a+_{r,s2} a_{s,s2} a_{q,s1}
    for p in range(m):
        for q in range(m):
            for r in range(m):
                for s in range(m):
                    value = 0.5 * space.eri[p, q, r, s]
                    if abs(value) < prune:
                        continue
                    for down1 in (False, True):
                        for down2 in (False, True):
                            term = multiply(
                                ladders_cre[qubit_of(p, down1)],
                                ladders_cre[qubit_of(r, down2)],
                            )
                            term = multiply(term, ladders_ann[qubit_of(s, down2)])
                            term = multiply(term, ladders_ann[qubit_of(q, down1)])
                            add_into(acc, term, value)
    return {k: v for k, v in acc.items() if abs(v) > prune}


def diagonal_expectation(pauli: dict[str, complex], bits: str) -> float:
    """<bits| H |bits> for a computational basis state (I/Z terms only)."""
    total = 0.0
    for letters, coeff in pauli.items():
        if any(letter in "XY" for letter in letters):
            continue
        sign = 1.0
        for letter, bit in zip(letters, bits):
            if letter == "Z" and bit == "1":
                sign = -sign
        total += (coeff * sign).real
    return total


def dense_matrix(pauli: dict[str, complex]) -> np.ndarray:
    """Dense matrix of a letter-string sum.

    Each string is a signed permutation, so the matrix is filled one
    column set per term instead of via Kronecker products.
    """
    n = len(next(iter(pauli)))
    dim = 1 << n
    cols = np.arange(dim, dtype=np.int64)
    out = np.zeros((dim, dim), dtype=complex)
    for letters, coeff in pauli.items():
        x_mask = z_mask = 0
        y_count = 0
        for letter in letters:
            x_mask <<= 1
            z_mask <<= 1
            if letter == "X":
                x_mask |= 1
            elif letter == "Z":
                z_mask |= 1
            elif letter == "Y":
                x_mask |= 1
                z_mask |= 1
                y_count += 1
        parity = np.bitwise_count(cols.astype(np.uint64) & np.uint64(z_mask)) & 1
        phases = (1j**y_count) * (1.0 - 2.0 * parity.astype(float))
        out[cols ^ x_mask, cols] += coeff * phases
    return out
