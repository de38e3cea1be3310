# Circuit structure of the five ansatz families and their per-layer
# resource footprint after compiling to CNOT + single-qubit gates.
#
# Run with:  python demos/03_ansatz_resources.py

from qocavqe import (
    LatticeSpec,
    Parametrization,
    build_ftvha,
    build_hea,
    build_qoca,
    build_sqoca,
    build_vha,
    compile_to_cnot,
    count_resources,
)

plaquette = LatticeSpec(2, 2, t=1.0, u=4.0, mu=2.0)
ladder = LatticeSpec(2, 3, t=1.0, u=4.0, mu=2.0)

rows = [
    ("HEA, 8 qubits", build_hea(8, 1)),
    ("VHA 2x2", build_vha(plaquette, 1)),
    ("FT-VHA 2x2", build_ftvha(plaquette, 1)),
    ("QOCA 2x2", build_qoca(plaquette, 1)),
    ("QOCA 2x2 scalable", build_qoca(plaquette, 1, Parametrization.SCALABLE)),
    ("short-QOCA 2x2", build_sqoca(plaquette, 1)),
    ("HEA, 12 qubits", build_hea(12, 1)),
    ("VHA 2x3", build_vha(ladder, 1)),
    ("QOCA 2x3", build_qoca(ladder, 1)),
    ("QOCA 2x3 scalable", build_qoca(ladder, 1, Parametrization.SCALABLE)),
    ("short-QOCA 2x3", build_sqoca(ladder, 1)),
]

print(f"{'ansatz':22s} {'params/layer':>12s} {'CNOTs/layer':>12s}")
for name, circuit in rows:
    counts = count_resources(circuit)
    note = " (+Fourier blocks)" if counts.unlowered_dense_tags else ""
    print(
        f"{name:22s} {counts.n_params_per_layer:12d} "
        f"{counts.n_cnot_per_layer:12d}{note}"
    )

# A peek at what compilation does to one drive-string exponential chain:
# shared ladders make consecutive Z...ZX / Z...ZY rotations cheap.
circuit = build_sqoca(plaquette, 1)
compiled = compile_to_cnot(circuit)
print(f"\nshort-QOCA layer: {len(circuit.gates)} exponentials")
print(f"compiled:         {len(compiled.gates)} elementary gates")
print("\nfirst few compiled gates:")
print("\n".join(compiled.dump().splitlines()[:12]))
