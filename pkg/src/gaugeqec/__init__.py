"""Gauss-law-aided stabilizer error correction for cutoff-1 lattice gauge theories.

The package bundles a bit-packed stabilizer tableau engine, a dense statevector
oracle for cross-validation, a small circuit IR with classical control, lattice
registries for the 1D and 2D correction schemes, the scheme circuits and lookup
decoders themselves, and an exhaustive verification / Monte Carlo harness.
"""

__version__ = "0.1.0"

from gaugeqec.pauli import PauliString, pauli_compose
from gaugeqec.tableau import StabilizerTableau
from gaugeqec.dense import DenseState, fidelity
from gaugeqec.circuit import Circuit, Gate, compose, run, emit_text, parse_text
from gaugeqec.lattice import SchemeId, Matter, Variant, build_1d, build_2d, resource_counts

__all__ = [
    "PauliString",
    "pauli_compose",
    "StabilizerTableau",
    "DenseState",
    "fidelity",
    "Circuit",
    "Gate",
    "compose",
    "run",
    "emit_text",
    "parse_text",
    "SchemeId",
    "Matter",
    "Variant",
    "build_1d",
    "build_2d",
    "resource_counts",
]
