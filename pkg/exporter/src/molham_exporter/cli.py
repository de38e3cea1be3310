"""Command line wrapper: export-molham --preset h2o --out <path>."""

from __future__ import annotations

import argparse
import sys

from .export import PRESETS, export


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="export-molham",
        description="Write a molecular qubit Hamiltonian in the Pauli-sum "
        "interchange format",
    )
    parser.add_argument(
        "--preset",
        required=True,
        choices=sorted(PRESETS) + ["stub"],
        help="named molecule preset",
    )
    parser.add_argument("--out", required=True, help="output file path")
    args = parser.parse_args(argv)
    result = export(args.preset, args.out)
    print(f"wrote {args.out}: {result.num_qubits} qubits, {len(result.pauli)} terms")
    print(f"hf_energy={result.hf_energy:.10f}  fci_energy={result.fci_energy:.10f}")
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
