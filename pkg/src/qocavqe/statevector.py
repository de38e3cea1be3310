"""Exact complex statevector evolution and dense diagnostics.

Amplitude index bit ``num_qubits - q`` (counted from the least significant
end) stores the occupation of qubit ``q``, matching the Pauli-string
convention that qubit 1 is the most significant tensor factor.  Gates act
in place; every operation is unitary so the norm is preserved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .paulis import DENSE_CAP, PauliString, PauliSum, _string_phases

_SQ2 = 1.0 / np.sqrt(2.0)

_FIXED_GATES = {
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    # Basis change between Y and Z, the Y-analogue of the Hadamard.
    "G": np.array([[_SQ2, -1j * _SQ2], [1j * _SQ2, -_SQ2]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
}


def one_qubit_matrix(gate: str, angle: float | None = None) -> np.ndarray:
    """2x2 matrix for H, G, X or a rotation RX/RY/RZ(angle) = exp(-i*angle*P/2)."""
    if gate in _FIXED_GATES:
        return _FIXED_GATES[gate]
    if angle is None:
        raise ValueError(f"gate {gate} needs an angle")
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    if gate == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if gate == "RY":
        return np.array([[c, -s], [s, c]])
    if gate == "RZ":
        return np.array([[c - 1j * s, 0], [0, c + 1j * s]])
    raise ValueError(f"unknown one-qubit gate {gate!r}")


def pauli_action(string: PauliString) -> tuple[np.ndarray, np.ndarray]:
    """Index permutation and phases realizing ``P |psi>`` on amplitudes.

    ``(P psi)[i] = phase[i] * psi[perm[i]]``.
    """
    dim = 1 << string.num_qubits
    perm = np.arange(dim, dtype=np.intp) ^ string.x_mask
    phases = _string_phases(string)[perm]
    return perm, phases


class Statevector:
    """Normalized amplitude vector over the 2^N computational basis."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray | None = None):
        if num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        dim = 1 << num_qubits
        if amplitudes is None:
            amplitudes = np.zeros(dim, dtype=complex)
            amplitudes[0] = 1.0
        else:
            amplitudes = np.asarray(amplitudes, dtype=complex)
            if amplitudes.shape != (dim,):
                raise ValueError(
                    f"expected {dim} amplitudes, got shape {amplitudes.shape}"
                )
        self.num_qubits = num_qubits
        self.amplitudes = amplitudes

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero_state(cls, num_qubits: int) -> "Statevector":
        return cls(num_qubits)

    @classmethod
    def plus_state(cls, num_qubits: int) -> "Statevector":
        dim = 1 << num_qubits
        return cls(num_qubits, np.full(dim, dim**-0.5, dtype=complex))

    @classmethod
    def computational(cls, bits: str) -> "Statevector":
        """Basis state from an occupation string, qubit 1 first."""
        if not bits or any(b not in "01" for b in bits):
            raise ValueError(f"invalid bitstring {bits!r}")
        n = len(bits)
        state = cls(n)
        state.amplitudes[0] = 0.0
        state.amplitudes[int(bits, 2)] = 1.0
        return state

    def copy(self) -> "Statevector":
        return Statevector(self.num_qubits, self.amplitudes.copy())

    # -- basics ---------------------------------------------------------------

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "Statevector") -> complex:
        self._check_dims(other.num_qubits)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def _check_dims(self, num_qubits: int) -> None:
        if self.num_qubits != num_qubits:
            raise ValueError(
                f"dimension mismatch: state has {self.num_qubits} qubits, "
                f"operand has {num_qubits}"
            )

    def _check_qubit(self, qubit: int) -> None:
        if not 1 <= qubit <= self.num_qubits:
            raise ValueError(f"qubit {qubit} out of range 1..{self.num_qubits}")

    # -- gates ----------------------------------------------------------------

    def apply_one_qubit(
        self, gate: str, qubit: int, angle: float | None = None
    ) -> "Statevector":
        self._check_qubit(qubit)
        u = one_qubit_matrix(gate, angle)
        view = self.amplitudes.reshape(
            1 << (qubit - 1), 2, 1 << (self.num_qubits - qubit)
        )
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
        view[:, 1, :] = u[1, 0] * a0 + u[1, 1] * a1
        return self

    def apply_cnot(self, control: int, target: int) -> "Statevector":
        self._check_qubit(control)
        self._check_qubit(target)
        if control == target:
            raise ValueError("control and target must differ")
        n = self.num_qubits
        q1, q2 = min(control, target), max(control, target)
        view = self.amplitudes.reshape(
            1 << (q1 - 1), 2, 1 << (q2 - q1 - 1), 2, 1 << (n - q2)
        )
        if control < target:
            block = view[:, 1, :, :, :]
            block[:, :, [0, 1], :] = block[:, :, [1, 0], :]
        else:
            block = view[:, :, :, 1, :]
            block[:, [0, 1], :, :] = block[:, [1, 0], :, :]
        return self

    def apply_pauli_exponential(
        self, pauli: PauliString, angle: float
    ) -> "Statevector":
        """In-place exp(i * angle * P), using P^2 = I."""
        self._check_dims(pauli.num_qubits)
        perm, phases = pauli_action(pauli)
        rotated = phases * self.amplitudes[perm]
        self.amplitudes *= np.cos(angle)
        self.amplitudes += (1j * np.sin(angle)) * rotated
        return self

    def apply_dense_unitary(
        self, matrix: np.ndarray, first_qubit: int, check: bool = True
    ) -> "Statevector":
        """Apply a unitary on the contiguous block starting at ``first_qubit``."""
        matrix = np.asarray(matrix, dtype=complex)
        dim = matrix.shape[0]
        if matrix.shape != (dim, dim) or dim & (dim - 1):
            raise ValueError("block matrix must be square with power-of-two size")
        block = dim.bit_length() - 1
        self._check_qubit(first_qubit)
        last = first_qubit + block - 1
        self._check_qubit(last)
        if check:
            err = np.abs(matrix @ matrix.conj().T - np.eye(dim)).max()
            if err > 1e-10:
                raise ValueError(f"matrix is not unitary (deviation {err:.2e})")
        view = self.amplitudes.reshape(
            1 << (first_qubit - 1), dim, 1 << (self.num_qubits - last)
        )
        self.amplitudes = np.einsum("ab,lbr->lar", matrix, view).reshape(-1)
        return self

    # -- observables -------------------------------------------------------

    def expectation(self, observable: PauliSum) -> float:
        """<psi|O|psi> for a Hermitian observable."""
        self._check_dims(observable.num_qubits)
        if not observable.hermitian(1e-10):
            raise ValueError("observable is not Hermitian")
        value = 0.0 + 0.0j
        for string, coeff in observable.terms():
            perm, phases = pauli_action(string)
            value += coeff * np.vdot(self.amplitudes, phases * self.amplitudes[perm])
        if abs(value.imag) > 1e-10:
            raise AssertionError(
                f"expectation of Hermitian observable has imaginary part {value.imag}"
            )
        return float(value.real)

    def save_amplitudes(self, path) -> None:
        """Debug dump: little-endian interleaved float64 re/im pairs."""
        inter = np.empty(2 * self.amplitudes.size, dtype="<f8")
        inter[0::2] = self.amplitudes.real
        inter[1::2] = self.amplitudes.imag
        inter.tofile(path)


@dataclass
class GroundSpace:
    """Lowest eigenspace of a Hermitian observable."""

    energy: float
    basis: np.ndarray  # shape (dim, degeneracy), orthonormal columns
    degeneracy_tolerance: float

    @property
    def degeneracy(self) -> int:
        return self.basis.shape[1]


def exact_ground_space(
    hamiltonian: PauliSum, tol: float | None = None, cap: int = DENSE_CAP
) -> GroundSpace:
    """Dense Hermitian eigendecomposition keeping all lowest eigenvectors.

    ``tol`` defaults to 1e-8 relative to the spectral range.
    """
    if hamiltonian.num_qubits > cap:
        raise ValueError(
            f"dense eigensolve refused: {hamiltonian.num_qubits} qubits "
            f"exceeds the cap of {cap}"
        )
    if not hamiltonian.hermitian(1e-10):
        raise ValueError("Hamiltonian is not Hermitian")
    dense = hamiltonian.to_dense(cap)
    if np.abs(dense.imag).max() < 1e-14:
        vals, vecs = np.linalg.eigh(dense.real)
        vecs = vecs.astype(complex)
    else:
        vals, vecs = np.linalg.eigh(dense)
    if tol is None:
        spread = max(1.0, float(vals[-1] - vals[0]))
        tol = 1e-8 * spread
    keep = vals <= vals[0] + tol
    return GroundSpace(
        energy=float(vals[0]), basis=vecs[:, keep], degeneracy_tolerance=tol
    )


def fidelity(state: Statevector, target) -> float:
    """Squared overlap with a state, or projection weight onto a ground space."""
    if isinstance(target, Statevector):
        state._check_dims(target.num_qubits)
        return float(min(1.0, abs(state.inner(target)) ** 2))
    basis = target.basis
    if basis.shape[0] != state.amplitudes.size:
        raise ValueError("dimension mismatch between state and ground space")
    overlaps = basis.conj().T @ state.amplitudes
    return float(min(1.0, float(np.sum(np.abs(overlaps) ** 2))))


def site_occupancy(state: Statevector, lattice) -> float:
    """Average particle number per lattice site, <N_total>/L."""
    from .fermions import jw_total_number

    n = 2 * lattice.num_sites
    state._check_dims(n)
    return state.expectation(jw_total_number(n)) / lattice.num_sites
