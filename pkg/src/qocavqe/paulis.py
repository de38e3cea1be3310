"""Exact algebra of Pauli strings and weighted Pauli sums.

A string is stored as a pair of bitmasks over the qubit register.  Qubit 1
is the leftmost tensor factor and therefore the most significant bit of a
basis-state index; every module in this package shares that convention.
Products of strings carry exact unit phases (one of 1, -1, i, -i), so long
operator products do not accumulate rounding error in the phase.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

import numpy as np

#: Coefficients with magnitude below this are dropped when simplifying.
PRUNE_TOL = 1e-12

#: Largest register for which dense matrices are materialized.
DENSE_CAP = 14

_LETTER_TO_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_XZ_TO_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}

_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class PauliString:
    """A tensor product of single-qubit Paulis, without a coefficient.

    ``x_mask`` / ``z_mask`` hold one bit per qubit; a qubit with both bits
    set carries Y.  Bit ``num_qubits - q`` belongs to qubit ``q`` (1-based),
    so qubit 1 sits at the most significant position.
    """

    __slots__ = ("num_qubits", "x_mask", "z_mask")

    def __init__(self, num_qubits: int, x_mask: int = 0, z_mask: int = 0):
        if num_qubits < 1:
            raise ValueError(f"num_qubits must be positive, got {num_qubits}")
        full = (1 << num_qubits) - 1
        if x_mask & ~full or z_mask & ~full:
            raise ValueError("mask has bits outside the register")
        object.__setattr__(self, "num_qubits", num_qubits)
        object.__setattr__(self, "x_mask", x_mask)
        object.__setattr__(self, "z_mask", z_mask)

    def __setattr__(self, name, value):
        raise AttributeError("PauliString is immutable")

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Build from a letter string, qubit 1 first, e.g. ``"ZIX"``."""
        x = z = 0
        for letter in label:
            try:
                xb, zb = _LETTER_TO_XZ[letter]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {letter!r}") from None
            x = (x << 1) | xb
            z = (z << 1) | zb
        return cls(len(label), x, z)

    @classmethod
    def identity(cls, num_qubits: int) -> "PauliString":
        return cls(num_qubits)

    @classmethod
    def single(cls, num_qubits: int, qubit: int, letter: str) -> "PauliString":
        """A single-qubit Pauli ``letter`` on ``qubit`` (1-based)."""
        _check_qubit(qubit, num_qubits)
        xb, zb = _LETTER_TO_XZ[letter]
        shift = num_qubits - qubit
        return cls(num_qubits, xb << shift, zb << shift)

    def label(self) -> str:
        bits = range(self.num_qubits - 1, -1, -1)
        return "".join(
            _XZ_TO_LETTER[((self.x_mask >> b) & 1, (self.z_mask >> b) & 1)]
            for b in bits
        )

    def letter(self, qubit: int) -> str:
        _check_qubit(qubit, self.num_qubits)
        b = self.num_qubits - qubit
        return _XZ_TO_LETTER[((self.x_mask >> b) & 1, (self.z_mask >> b) & 1)]

    @property
    def weight(self) -> int:
        """Number of non-identity sites."""
        return (self.x_mask | self.z_mask).bit_count()

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def active_qubits(self) -> list[int]:
        """1-based qubits carrying a non-identity Pauli, ascending."""
        support = self.x_mask | self.z_mask
        n = self.num_qubits
        return [q for q in range(1, n + 1) if (support >> (n - q)) & 1]

    def commutes_with(self, other: "PauliString") -> bool:
        _check_same_size(self, other)
        anti = (self.x_mask & other.z_mask).bit_count() + (
            self.z_mask & other.x_mask
        ).bit_count()
        return anti % 2 == 0

    def matrix(self) -> np.ndarray:
        """Dense matrix, qubit 1 as the leftmost Kronecker factor."""
        if self.num_qubits > DENSE_CAP:
            raise ValueError(
                f"dense matrix refused: {self.num_qubits} qubits exceeds the "
                f"cap of {DENSE_CAP}"
            )
        out = np.array([[1.0 + 0j]])
        for letter in self.label():
            out = np.kron(out, _MATRICES[letter])
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PauliString)
            and self.num_qubits == other.num_qubits
            and self.x_mask == other.x_mask
            and self.z_mask == other.z_mask
        )

    def __hash__(self) -> int:
        return hash((self.num_qubits, self.x_mask, self.z_mask))

    def __repr__(self) -> str:
        return f"PauliString('{self.label()}')"


def _check_qubit(qubit: int, num_qubits: int) -> None:
    if not 1 <= qubit <= num_qubits:
        raise ValueError(f"qubit {qubit} out of range 1..{num_qubits}")


def _check_same_size(a, b) -> None:
    if a.num_qubits != b.num_qubits:
        raise ValueError(
            f"register size mismatch: {a.num_qubits} vs {b.num_qubits}"
        )


def pauli_mul(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    """Multiply two strings; returns ``(phase, result)``.

    The phase is exactly one of 1, -1, 1j, -1j and satisfies
    ``matrix(a) @ matrix(b) == phase * matrix(result)``.
    """
    _check_same_size(a, b)
    x1, z1, x2, z2 = a.x_mask, a.z_mask, b.x_mask, b.z_mask
    full = (1 << a.num_qubits) - 1
    # Per-site phase of sigma_a * sigma_b = i^k sigma_(a xor b):
    # k = +1 for the cyclic pairs (X,Y), (Y,Z), (Z,X); -1 for their reverses.
    cyc = (
        (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2 & full) | (~x1 & z1 & x2 & ~z2 & full)
    ).bit_count()
    anti = (
        (x2 & ~z2 & x1 & z1) | (x2 & z2 & ~x1 & z1 & full) | (~x2 & z2 & x1 & ~z1 & full)
    ).bit_count()
    phase = 1j ** ((cyc - anti) % 4)
    return phase, PauliString(a.num_qubits, x1 ^ x2, z1 ^ z2)


class PauliSum:
    """A complex-weighted sum of :class:`PauliString` terms.

    Values behave immutably: arithmetic returns new sums and simplification
    drops coefficients below :data:`PRUNE_TOL`.
    """

    __slots__ = ("num_qubits", "_terms")

    def __init__(
        self,
        num_qubits: int,
        terms: Mapping[PauliString, complex] | None = None,
    ):
        if num_qubits < 1:
            raise ValueError(f"num_qubits must be positive, got {num_qubits}")
        self.num_qubits = num_qubits
        data: dict[PauliString, complex] = {}
        if terms:
            for string, coeff in terms.items():
                if string.num_qubits != num_qubits:
                    raise ValueError(
                        "term register size differs from the sum's"
                    )
                if abs(coeff) > PRUNE_TOL:
                    data[string] = complex(coeff)
        self._terms = data

    @classmethod
    def zero(cls, num_qubits: int) -> "PauliSum":
        return cls(num_qubits)

    @classmethod
    def identity(cls, num_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        return cls(num_qubits, {PauliString.identity(num_qubits): coeff})

    @classmethod
    def from_label(cls, label: str, coeff: complex = 1.0) -> "PauliSum":
        return cls(len(label), {PauliString.from_label(label): coeff})

    @classmethod
    def from_terms(
        cls, num_qubits: int, terms: Iterable[tuple[str | PauliString, complex]]
    ) -> "PauliSum":
        data: dict[PauliString, complex] = {}
        for string, coeff in terms:
            if isinstance(string, str):
                string = PauliString.from_label(string)
            data[string] = data.get(string, 0.0) + coeff
        return cls(num_qubits, data)

    def terms(self) -> Iterator[tuple[PauliString, complex]]:
        return iter(self._terms.items())

    def coefficient(self, string: PauliString) -> complex:
        return self._terms.get(string, 0.0 + 0.0j)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def identity_coefficient(self) -> complex:
        return self._terms.get(PauliString.identity(self.num_qubits), 0.0 + 0.0j)

    def without_identity(self) -> "PauliSum":
        ident = PauliString.identity(self.num_qubits)
        return PauliSum(
            self.num_qubits,
            {s: c for s, c in self._terms.items() if s != ident},
        )

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "PauliSum") -> "PauliSum":
        _check_same_size(self, other)
        data = dict(self._terms)
        for string, coeff in other._terms.items():
            data[string] = data.get(string, 0.0) + coeff
        return PauliSum(self.num_qubits, data)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (-1.0) * other

    def __neg__(self) -> "PauliSum":
        return (-1.0) * self

    def __rmul__(self, scalar: complex) -> "PauliSum":
        return PauliSum(
            self.num_qubits, {s: scalar * c for s, c in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, PauliSum):
            _check_same_size(self, other)
            data: dict[PauliString, complex] = {}
            for sa, ca in self._terms.items():
                for sb, cb in other._terms.items():
                    phase, sc = pauli_mul(sa, sb)
                    data[sc] = data.get(sc, 0.0) + ca * cb * phase
            return PauliSum(self.num_qubits, data)
        return other * self

    def simplify(self, tol: float = PRUNE_TOL) -> "PauliSum":
        return PauliSum(
            self.num_qubits,
            {s: c for s, c in self._terms.items() if abs(c) > tol},
        )

    def adjoint(self) -> "PauliSum":
        return PauliSum(
            self.num_qubits, {s: c.conjugate() for s, c in self._terms.items()}
        )

    def hermitian(self, tol: float = PRUNE_TOL) -> bool:
        """True iff every coefficient is real up to ``tol``.

        Strings themselves are Hermitian, so this decides Hermiticity of
        the whole sum.
        """
        return all(abs(c.imag) <= tol for c in self._terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliSum) or self.num_qubits != other.num_qubits:
            return False
        return (self - other).is_zero

    def __repr__(self) -> str:
        if not self._terms:
            return f"PauliSum(0, n={self.num_qubits})"
        parts = [
            f"({c:.6g})*{s.label()}"
            for s, c in sorted(self._terms.items(), key=lambda t: t[0].label())
        ]
        return " + ".join(parts)

    # -- dense realization -------------------------------------------------

    def to_dense(self, cap: int = DENSE_CAP) -> np.ndarray:
        """Dense matrix of the sum; refuses registers above ``cap`` qubits."""
        n = self.num_qubits
        if n > cap:
            raise ValueError(
                f"dense matrix refused: {n} qubits exceeds the cap of {cap}"
            )
        dim = 1 << n
        out = np.zeros((dim, dim), dtype=complex)
        for string, coeff in self._terms.items():
            out += coeff * string.matrix()
        return out

    def to_sparse(self):
        """Sparse CSR matrix; each string contributes one diagonal band."""
        from scipy.sparse import coo_matrix

        n = self.num_qubits
        dim = 1 << n
        cols = np.arange(dim, dtype=np.int64)
        row_blocks = []
        col_blocks = []
        data_blocks = []
        for string, coeff in self._terms.items():
            phases = _string_phases(string)
            row_blocks.append(cols ^ string.x_mask)
            col_blocks.append(cols)
            data_blocks.append(coeff * phases)
        if not row_blocks:
            return coo_matrix((dim, dim), dtype=complex).tocsr()
        rows = np.concatenate(row_blocks)
        cs = np.concatenate(col_blocks)
        data = np.concatenate(data_blocks)
        return coo_matrix((data, (rows, cs)), shape=(dim, dim)).tocsr()

    # -- serialization ------------------------------------------------------

    def dumps(self) -> str:
        """Interchange text: one ``<re> <im> <letters>`` term per line.

        Terms are sorted by letters so equal sums serialize identically.
        """
        lines = []
        for string, coeff in sorted(
            self._terms.items(), key=lambda t: t[0].label()
        ):
            lines.append(
                f"{coeff.real:.17g} {coeff.imag:.17g} {string.label()}"
            )
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def loads(cls, text: str) -> "PauliSum":
        """Parse the interchange format; ``#`` lines are comments."""
        data: dict[PauliString, complex] = {}
        num_qubits = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) != 3:
                raise ValueError(
                    f"line {lineno}: expected '<re> <im> <letters>', got {raw!r}"
                )
            try:
                re_part = float(fields[0])
                im_part = float(fields[1])
            except ValueError:
                raise ValueError(
                    f"line {lineno}: invalid coefficient in {raw!r}"
                ) from None
            try:
                string = PauliString.from_label(fields[2])
            except ValueError as err:
                raise ValueError(f"line {lineno}: {err}") from None
            if num_qubits is None:
                num_qubits = string.num_qubits
            elif string.num_qubits != num_qubits:
                raise ValueError(
                    f"line {lineno}: letter string length {string.num_qubits} "
                    f"differs from earlier lines ({num_qubits})"
                )
            data[string] = data.get(string, 0.0) + complex(re_part, im_part)
        if num_qubits is None:
            raise ValueError("no terms found in Hamiltonian text")
        return cls(num_qubits, data)

    def save(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.dumps())

    @classmethod
    def load(cls, path) -> "PauliSum":
        with open(path, "r", encoding="ascii") as fh:
            return cls.loads(fh.read())


def _string_phases(string: PauliString) -> np.ndarray:
    """Vector of P|b> phases over all basis indices b.

    P|b> = phase[b] |b xor x_mask| with phase[b] = i^(#Y) * (-1)^|b & z_mask|.
    """
    n = string.num_qubits
    idx = np.arange(1 << n, dtype=np.uint64)
    parity = np.bitwise_count(idx & np.uint64(string.z_mask)) & 1
    y_count = (string.x_mask & string.z_mask).bit_count()
    signs = 1.0 - 2.0 * parity.astype(np.float64)
    return (1j**y_count) * signs


def commutator_is_zero(a: PauliSum, b: PauliSum, tol: float = PRUNE_TOL) -> bool:
    """True iff ``a b - b a`` simplifies to the empty sum."""
    _check_same_size(a, b)
    return (a * b - b * a).simplify(tol).is_zero
