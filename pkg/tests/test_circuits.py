"""Unit tests for ansatz construction, compilation, and resource counts."""

import numpy as np
import pytest

from qocavqe.circuits import (
    CircuitRunner,
    Parametrization,
    build_ftvha,
    build_hea,
    build_qoca,
    build_sqoca,
    build_vha,
    compile_to_cnot,
    count_resources,
)
from qocavqe.fermions import (
    LatticeSpec,
    build_hubbard,
    fourier_unitary,
    jw_transform,
    onsite_fermion,
)
from qocavqe.statevector import Statevector, site_occupancy

from oracles import dense_expm_pauli, kron_string

S22 = LatticeSpec(2, 2, periodic=False, t=1.0, u=4.0, mu=2.0)
S23 = LatticeSpec(2, 3, periodic=False, t=1.0, u=4.0, mu=2.0)


def random_state(rng, n):
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return Statevector(n, amps / np.linalg.norm(amps))


class TestResourceCounts:
    @pytest.mark.parametrize(
        "circuit,n_params,n_cnot",
        [
            (build_hea(8, 1), 16, 7),
            (build_hea(12, 1), 24, 11),
            (build_vha(S22, 1), 8, 56),
            (build_vha(S23, 1), 13, 116),
            (build_ftvha(S22, 1), 8, 8),
            (build_qoca(S22, 1), 16, 88),
            (build_qoca(S23, 1), 25, 172),
            (build_qoca(S22, 1, Parametrization.SCALABLE), 5, 88),
            (build_qoca(S23, 1, Parametrization.SCALABLE), 6, 172),
            (build_sqoca(S22, 1), 12, 40),
            (build_sqoca(S23, 1), 18, 68),
        ],
    )
    def test_per_layer_counts(self, circuit, n_params, n_cnot):
        counts = count_resources(circuit)
        assert counts.n_params_per_layer == n_params
        assert counts.n_cnot_per_layer == n_cnot

    def test_counts_uniform_across_layers(self):
        circuit = compile_to_cnot(build_qoca(S22, 3))
        per_layer = [
            sum(1 for g in circuit.gates[a:b] if g.kind == "cnot")
            for a, b in circuit.layer_spans()
        ]
        assert per_layer == [88, 88, 88]

    def test_total_params_scale_with_depth(self):
        assert build_qoca(S22, 4).num_params == 64
        assert build_qoca(S22, 4, Parametrization.SCALABLE).num_params == 20
        assert build_hea(8, 9).num_params == 144

    def test_empty_circuit(self):
        counts = count_resources(build_hea(8, 0))
        assert (counts.n_params_per_layer, counts.n_cnot_per_layer) == (0, 0)

    def test_ftvha_reports_unlowered_blocks(self):
        counts = count_resources(build_ftvha(S22, 1))
        assert counts.unlowered_dense_tags == ("FT", "FTdag")

    @pytest.mark.parametrize("sites", [4, 6])
    def test_periodic_chain_parameter_formulas(self, sites):
        # Per-layer counts for one-dimensional periodic lattices.
        chain = LatticeSpec(1, sites, periodic=True, t=1.0, u=4.0, mu=2.0)
        full, scal = Parametrization.FULL, Parametrization.SCALABLE
        d = 3
        assert build_hea(2 * sites, d).num_params == 2 * (2 * sites) * d
        assert build_vha(chain, d, full).num_params == 2 * sites * d
        assert build_vha(chain, d, scal).num_params == 3 * d
        assert build_ftvha(chain, d, full).num_params == 2 * sites * d
        assert build_ftvha(chain, d, scal).num_params == 2 * d
        assert build_qoca(chain, d, full).num_params == 4 * sites * d
        assert build_qoca(chain, d, scal).num_params == 5 * d
        assert build_sqoca(chain, d, full).num_params == 3 * sites * d
        assert build_sqoca(chain, d, scal).num_params == 3 * d


class TestZeroBinding:
    @pytest.mark.parametrize(
        "builder", [build_vha, build_qoca, build_sqoca, build_ftvha]
    )
    def test_identity_at_zero(self, builder):
        rng = np.random.default_rng(1)
        circuit = builder(S22, 2)
        state = random_state(rng, 8)
        reference = state.amplitudes.copy()
        circuit.apply_to(state, np.zeros(circuit.num_params))
        assert np.abs(state.amplitudes - reference).max() <= 1e-10


class TestCompilation:
    def test_zz_lowering_structure(self):
        circuit = build_vha(LatticeSpec(1, 1, t=0.0, u=4.0, mu=2.0), 1)
        # single site: one onsite ZZ exponential
        compiled = compile_to_cnot(circuit)
        kinds = [g.kind for g in compiled.gates]
        assert kinds == ["cnot", "1q", "cnot"]
        assert compiled.gates[1].gate == "RZ"

    def test_zzx_lowering_structure(self):
        from qocavqe.circuits import Circuit, GateDescriptor
        from qocavqe.paulis import PauliString

        circuit = Circuit(3, num_params=1, layer_boundaries=[0])
        circuit.gates.append(
            GateDescriptor(
                "pauliexp",
                pauli=PauliString.from_label("ZZX"),
                param_slot=0,
                scale=1.0,
            )
        )
        compiled = compile_to_cnot(circuit)
        assert sum(1 for g in compiled.gates if g.kind == "cnot") == 4
        h_gates = [g for g in compiled.gates if g.kind == "1q" and g.gate == "H"]
        assert [g.qubit for g in h_gates] == [3, 3]
        rz = [g for g in compiled.gates if g.gate == "RZ"]
        assert len(rz) == 1 and rz[0].qubit == 3 and rz[0].scale == -2.0

    @pytest.mark.parametrize(
        "circuit",
        [
            build_vha(S22, 2),
            build_qoca(S22, 2),
            build_sqoca(S22, 2),
            build_qoca(S22, 2, Parametrization.SCALABLE),
            build_hea(8, 2),
        ],
    )
    def test_semantic_equivalence_on_random_states(self, circuit):
        rng = np.random.default_rng(5)
        compiled = compile_to_cnot(circuit)
        params = rng.uniform(-1.0, 1.0, circuit.num_params)
        for _ in range(20):
            state_a = random_state(rng, 8)
            state_b = state_a.copy()
            circuit.apply_to(state_a, params)
            compiled.apply_to(state_b, params)
            assert np.abs(state_a.amplitudes - state_b.amplitudes).max() <= 1e-10

    def test_single_pauli_exponential_against_dense_oracle(self):
        from qocavqe.circuits import Circuit, GateDescriptor
        from qocavqe.paulis import PauliString

        rng = np.random.default_rng(8)
        label = "ZYXI"
        circuit = Circuit(4, num_params=1, layer_boundaries=[0])
        circuit.gates.append(
            GateDescriptor(
                "pauliexp",
                pauli=PauliString.from_label(label),
                param_slot=0,
                scale=0.7,
            )
        )
        theta = 0.913
        state = random_state(rng, 4)
        expected = dense_expm_pauli(kron_string(label), 0.7 * theta) @ state.amplitudes
        compiled = compile_to_cnot(circuit)
        compiled.apply_to(state, np.array([theta]))
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)


class TestLayerSemantics:
    def test_ftvha_layer_equals_dense_factor_product(self):
        rng = np.random.default_rng(10)
        chain = S22.as_periodic_chain()
        circuit = build_ftvha(S22, 1)
        params = rng.uniform(-1.0, 1.0, circuit.num_params)
        ft = fourier_unitary(4)
        full_ft = np.kron(ft, ft)
        onsite = np.zeros((256, 256), dtype=complex)
        for site in range(1, 5):
            gen = jw_transform(onsite_fermion(chain, site), 8).without_identity()
            onsite = onsite + params[site - 1] * gen.to_dense()
        kinetic = np.zeros((256, 256), dtype=complex)
        for k in range(4):
            for qubit in (k + 1, 4 + k + 1):
                zmat = kron_string("I" * (qubit - 1) + "Z" + "I" * (8 - qubit))
                kinetic = kinetic + params[4 + k] * (-0.5) * zmat
        vals, vecs = np.linalg.eigh(onsite)
        exp_onsite = (vecs * np.exp(1j * vals)) @ vecs.conj().T
        vals, vecs = np.linalg.eigh(kinetic)
        exp_kinetic = (vecs * np.exp(1j * vals)) @ vecs.conj().T
        oracle = full_ft.conj().T @ exp_kinetic @ full_ft @ exp_onsite
        state = random_state(rng, 8)
        expected = oracle @ state.amplitudes
        circuit.apply_to(state, params)
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-10)

    def test_parameter_tying_spin_symmetry(self):
        # Perturbing one tied hopping slot moves both spin registers the
        # same way: the resulting state is symmetric under swapping the
        # two registers when starting from a register-symmetric state.
        circuit = build_vha(S22, 1)
        params = np.zeros(circuit.num_params)
        params[4] = 0.37  # first hopping bond (slots 0..3 are on-site)
        state = Statevector.plus_state(8)
        circuit.apply_to(state, params)
        swapped = state.amplitudes.reshape(16, 16).T.reshape(-1)
        np.testing.assert_allclose(state.amplitudes, swapped, atol=1e-12)

    def test_tied_slot_touches_multiple_gates(self):
        circuit = build_vha(S22, 1)
        slots = [g.param_slot for g in circuit.gates if g.kind == "pauliexp"]
        assert slots.count(4) == 4  # XX and YY on each spin register

    def test_vha_conserves_occupancy(self):
        rng = np.random.default_rng(13)
        for builder in (build_vha, build_ftvha):
            circuit = builder(S22, 2)
            params = rng.uniform(-1.0, 1.0, circuit.num_params)
            state = Statevector.plus_state(8)
            before = site_occupancy(state, S22)
            circuit.apply_to(state, params)
            after = site_occupancy(state, S22)
            assert abs(after - before) <= 1e-8

    def test_qoca_breaks_occupancy(self):
        circuit = build_qoca(S22, 1)
        params = np.zeros(circuit.num_params)
        params[8:] = 0.4  # drive slots only
        state = Statevector.plus_state(8)
        before = site_occupancy(state, S22)
        circuit.apply_to(state, params)
        after = site_occupancy(state, S22)
        assert abs(after - before) > 1e-3


class TestRunner:
    def test_matches_apply_to(self):
        rng = np.random.default_rng(17)
        for circuit in (build_qoca(S22, 2), build_hea(8, 2), build_ftvha(S22, 2)):
            runner = CircuitRunner(circuit)
            params = rng.uniform(-1.0, 1.0, circuit.num_params)
            state = random_state(rng, 8)
            amps = state.amplitudes.copy()
            circuit.apply_to(state, params)
            amps = runner.run(params, amps)
            np.testing.assert_allclose(amps, state.amplitudes, atol=1e-12)


class TestValidation:
    def test_wrong_parameter_count(self):
        circuit = build_hea(4, 1)
        with pytest.raises(ValueError):
            circuit.apply_to(Statevector.zero_state(4), np.zeros(3))

    def test_slots_below_num_params(self):
        for circuit in (build_qoca(S22, 3), build_sqoca(S23, 2)):
            slots = {g.param_slot for g in circuit.gates if g.param_slot is not None}
            assert max(slots) == circuit.num_params - 1
            assert slots == set(range(circuit.num_params))

    def test_ftvha_requires_chain_form(self):
        with pytest.raises(ValueError):
            build_ftvha(S23, 1)

    def test_dump_format(self):
        text = build_qoca(S22, 1).dump()
        assert "PAULIEXP" in text and "slot=" in text
        compiled_text = compile_to_cnot(build_hea(4, 1)).dump()
        assert "CNOT 1 2" in compiled_text and "1Q RY 1" in compiled_text
        ft_text = build_ftvha(S22, 1).dump()
        assert "DENSE FT q=1" in ft_text
