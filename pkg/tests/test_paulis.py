"""Unit tests for the Pauli string / Pauli sum algebra."""

import numpy as np
import pytest

from qocavqe.paulis import (
    PauliString,
    PauliSum,
    commutator_is_zero,
    pauli_mul,
)

from oracles import kron_string, kron_sum


def random_string(rng, n):
    return PauliString(n, int(rng.integers(0, 2**n)), int(rng.integers(0, 2**n)))


def random_sum(rng, n, terms=4):
    data = {}
    for _ in range(terms):
        coeff = complex(rng.normal(), rng.normal())
        data[random_string(rng, n)] = coeff
    return PauliSum(n, data)


class TestPauliString:
    def test_label_round_trip(self):
        for label in ["I", "X", "ZIX", "XYZI", "YYYY"]:
            assert PauliString.from_label(label).label() == label

    def test_weight_and_identity(self):
        assert PauliString.from_label("IIII").is_identity
        assert PauliString.from_label("IXYI").weight == 2
        assert PauliString.from_label("ZZZZ").weight == 4

    def test_single(self):
        assert PauliString.single(3, 1, "Z").label() == "ZII"
        assert PauliString.single(3, 3, "Y").label() == "IIY"

    def test_qubit_one_is_leftmost_tensor_factor(self):
        # ZI acts on qubit 1 = the most significant index bit.
        mat = PauliString.from_label("ZI").matrix()
        np.testing.assert_allclose(mat, np.diag([1, 1, -1, -1]))

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            PauliString.from_label("XQ")
        with pytest.raises(ValueError):
            PauliString(2, x_mask=4)
        with pytest.raises(ValueError):
            PauliString(0)


class TestPauliMul:
    def test_involution(self):
        phase, res = pauli_mul(
            PauliString.from_label("X"), PauliString.from_label("X")
        )
        assert phase == 1
        assert res.is_identity

    def test_xz_gives_minus_i_y(self):
        phase, res = pauli_mul(
            PauliString.from_label("X"), PauliString.from_label("Z")
        )
        assert phase == -1j
        assert res.label() == "Y"

    def test_zz_times_zi(self):
        phase, res = pauli_mul(
            PauliString.from_label("ZZ"), PauliString.from_label("ZI")
        )
        assert phase == 1
        assert res.label() == "IZ"

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            pauli_mul(PauliString.from_label("X"), PauliString.from_label("XX"))

    def test_matches_dense_product_exactly(self):
        # Phases are exact units, so the comparison is exact as well.
        rng = np.random.default_rng(7)
        for _ in range(200):
            a = random_string(rng, 3)
            b = random_string(rng, 3)
            phase, res = pauli_mul(a, b)
            assert phase in (1, -1, 1j, -1j)
            np.testing.assert_array_equal(
                kron_string(a.label()) @ kron_string(b.label()),
                phase * kron_string(res.label()),
            )


class TestPauliSumArithmetic:
    def test_like_term_merge(self):
        s = PauliSum.from_label("X", 0.5) + PauliSum.from_label("X", 0.5)
        assert s.num_terms == 1
        assert s.coefficient(PauliString.from_label("X")) == 1.0

    def test_identity_times_sum(self):
        rng = np.random.default_rng(3)
        s = random_sum(rng, 3)
        assert PauliSum.identity(3) * s == s

    def test_x_plus_z_times_x_minus_z(self):
        # Dense oracle: (X+Z)(X-Z) = XX - XZ + ZX - ZZ = 2iY.
        a = PauliSum.from_label("X") + PauliSum.from_label("Z")
        b = PauliSum.from_label("X") - PauliSum.from_label("Z")
        prod = a * b
        dense = kron_sum({"X": 1, "Z": 1}) @ kron_sum({"X": 1, "Z": -1})
        np.testing.assert_allclose(prod.to_dense(), dense, atol=1e-15)
        assert prod == PauliSum.from_label("Y", 2j)

    def test_sum_mul_matches_dense(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            a = random_sum(rng, 3)
            b = random_sum(rng, 3)
            np.testing.assert_allclose(
                (a * b).to_dense(), a.to_dense() @ b.to_dense(), atol=1e-10
            )

    def test_scalar_and_sub(self):
        s = 2.0 * PauliSum.from_label("XZ", 1.5)
        assert s.coefficient(PauliString.from_label("XZ")) == 3.0
        assert (s - s).is_zero

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            PauliSum.from_label("X") + PauliSum.from_label("XX")
        with pytest.raises(ValueError):
            PauliSum.from_label("X") * PauliSum.from_label("XX")

    def test_simplify_idempotent(self):
        rng = np.random.default_rng(23)
        s = random_sum(rng, 4, terms=8) + PauliSum.from_label("IIII", 1e-15)
        once = s.simplify()
        assert once == once.simplify()
        assert once.coefficient(PauliString.identity(4)) == 0


class TestDense:
    def test_z_diag(self):
        np.testing.assert_array_equal(
            PauliSum.from_label("Z").to_dense(), np.diag([1.0, -1.0])
        )

    def test_xx_antidiag(self):
        np.testing.assert_array_equal(
            PauliSum.from_label("XX").to_dense(), np.fliplr(np.eye(4))
        )

    def test_random_sums_match_kron_oracle(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            s = random_sum(rng, 3, terms=5)
            oracle = np.zeros((8, 8), dtype=complex)
            for string, coeff in s.terms():
                oracle += coeff * kron_string(string.label())
            np.testing.assert_allclose(s.to_dense(), oracle, atol=1e-14)

    def test_cap_refusal(self):
        with pytest.raises(ValueError, match="cap"):
            PauliSum.identity(15).to_dense()

    def test_sparse_matches_dense(self):
        rng = np.random.default_rng(17)
        s = random_sum(rng, 4, terms=6)
        np.testing.assert_allclose(
            s.to_sparse().toarray(), s.to_dense(), atol=1e-14
        )

    def test_hermitian_sum_dense_is_selfadjoint(self):
        rng = np.random.default_rng(29)
        data = {random_string(rng, 3): rng.normal() for _ in range(6)}
        s = PauliSum(3, data)
        assert s.hermitian()
        dense = s.to_dense()
        np.testing.assert_allclose(dense, dense.conj().T, atol=1e-12)

    def test_non_hermitian_detected(self):
        assert not PauliSum.from_label("XZ", 1j).hermitian()


class TestCommutator:
    def test_z_with_z(self):
        assert commutator_is_zero(PauliSum.from_label("Z"), PauliSum.from_label("Z"))

    def test_x_with_z(self):
        assert not commutator_is_zero(
            PauliSum.from_label("X"), PauliSum.from_label("Z")
        )

    def test_matches_dense_commutator(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            a = random_sum(rng, 3)
            b = random_sum(rng, 3)
            dense_comm = a.to_dense() @ b.to_dense() - b.to_dense() @ a.to_dense()
            assert commutator_is_zero(a, b) == (
                np.abs(dense_comm).max() < 1e-10
            )


class TestSerialization:
    def test_single_term(self):
        s = PauliSum.loads("1.0 0.0 Z\n")
        assert s.num_qubits == 1
        assert s.coefficient(PauliString.from_label("Z")) == 1.0

    def test_round_trip_is_canonical(self):
        rng = np.random.default_rng(41)
        s = random_sum(rng, 4, terms=7)
        text = s.dumps()
        assert PauliSum.loads(text) == s
        assert PauliSum.loads(text).dumps() == text

    def test_comments_and_blank_lines(self):
        text = "# a comment\n\n0.25 0.0 ZIIIZIII\n# another\n-1 0.5 XIIIIIII\n"
        s = PauliSum.loads(text)
        assert s.num_qubits == 8
        assert s.num_terms == 2

    def test_malformed_line_reports_lineno(self):
        with pytest.raises(ValueError, match="line 2"):
            PauliSum.loads("1.0 0.0 Z\n1.0 Z\n")
        with pytest.raises(ValueError, match="line 1"):
            PauliSum.loads("x 0.0 Z\n")
        with pytest.raises(ValueError, match="line 2"):
            PauliSum.loads("1.0 0.0 ZZ\n1.0 0.0 Z\n")

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            PauliSum.loads("# nothing\n")

    def test_file_round_trip(self, tmp_path):
        rng = np.random.default_rng(43)
        s = random_sum(rng, 3)
        path = tmp_path / "ham.txt"
        s.save(path)
        assert PauliSum.load(path) == s
