"""Search for low-cost translation invariant fermion-to-qubit encodings on a given qubit lattice."""

from __future__ import annotations

from .catalog import CELLS, GOLDENS, SYSTEMS, worked_example
from .enumerator import SearchParams, enumerate_candidates
from .hardware import HardwareCell, Unreachable, pauli_cost, steiner_cost, tile
from .poly_f2 import LPoly, PolyMatrix, parse_poly
from .search import Encoding, Inconclusive, NoSolution, branch_and_bound, describe, search_error_detecting
from .stabilizer import Detect, InvariantError, analyze, distance2_check, fix_signs
from .symplectic import FermionicSystem, check_encoding, fermi_comm_matrix, qubit_comm_matrix

__all__ = [
    "CELLS",
    "GOLDENS",
    "SYSTEMS",
    "Detect",
    "Encoding",
    "FermionicSystem",
    "HardwareCell",
    "Inconclusive",
    "InvariantError",
    "LPoly",
    "NoSolution",
    "PolyMatrix",
    "SearchParams",
    "Unreachable",
    "analyze",
    "branch_and_bound",
    "check_encoding",
    "describe",
    "distance2_check",
    "enumerate_candidates",
    "fermi_comm_matrix",
    "fix_signs",
    "parse_poly",
    "pauli_cost",
    "qubit_comm_matrix",
    "search_error_detecting",
    "steiner_cost",
    "tile",
    "worked_example",
]
