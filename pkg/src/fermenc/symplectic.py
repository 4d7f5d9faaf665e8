"""Commutation forms for Majorana and Pauli columns and the encoding condition.

Column conventions: a fermionic column has ``2m`` entries (``gamma_0..gamma_{m-1}``
then ``gammabar_0..gammabar_{m-1}``); a Pauli column has ``2n`` entries (X part on
rows ``0..n-1``, Z part on rows ``n..2n-1``).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .poly_f2 import LPoly, PolyMatrix, PolyVec, vec_inner

PHASE_LABELS = {"+1": 0, "1": 0, "+i": 1, "i": 1, "-1": 2, "-i": 3}
PHASE_NAMES = {0: "+1", 1: "+i", 2: "-1", 3: "-i"}


class OddColumnError(ValueError):
    """A fermionic column is an odd Majorana monomial (unsupported)."""


def parse_phase(text: str) -> int:
    """Parse ``+1 | -1 | +i | -i`` into an exponent of ``i`` (mod 4)."""
    try:
        return PHASE_LABELS[text.strip()]
    except KeyError:
        raise ValueError(f"phase must be one of +1, -1, +i, -i; got {text!r}") from None


def column_parity(col: Sequence[LPoly]) -> int:
    return sum(len(p) for p in col) % 2


@dataclass(frozen=True)
class FermionicSystem:
    """Privileged fermionic operators on a lattice, given by the ``2m x J`` matrix ``tau``.

    ``op_phases[j]`` is the exponent ``k`` of the scalar ``i^k`` multiplying the
    Majorana monomial of column ``j`` (edge and vertex operators use ``-i``, i.e. 3).
    """

    modes: int
    tau: PolyMatrix
    op_names: tuple[str, ...]
    op_phases: tuple[int, ...]
    name: str = ""
    dims: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", self.tau.dims)
        rows, cols = self.tau.shape
        if rows != 2 * self.modes:
            raise ValueError(f"tau has {rows} rows, expected 2*modes = {2 * self.modes}")
        if len(self.op_names) != cols or len(self.op_phases) != cols:
            raise ValueError("op_names/op_phases must have one entry per tau column")
        if len(set(self.op_names)) != cols:
            raise ValueError("operator names must be distinct")
        for j, col in enumerate(self.tau.columns()):
            if column_parity(col):
                raise OddColumnError(f"column {j} ({self.op_names[j]}) is an odd Majorana monomial")
        object.__setattr__(self, "op_phases", tuple(k % 4 for k in self.op_phases))

    @property
    def num_ops(self) -> int:
        return self.tau.shape[1]


def n_qubits(sigma: PolyMatrix) -> int:
    rows = sigma.shape[0]
    if rows % 2:
        raise ValueError("a Pauli matrix needs an even number of rows")
    return rows // 2


def swap_xz(col: Sequence[LPoly]) -> PolyVec:
    """Apply the qubit symplectic matrix (X and Z halves exchanged)."""
    n = len(col) // 2
    return tuple(col[n:]) + tuple(col[:n])


def fermi_form(a: Sequence[LPoly], b: Sequence[LPoly]) -> LPoly:
    """``a^dagger Lambda_F b`` for even columns, where ``Lambda_F`` reduces to the identity."""
    if column_parity(a) or column_parity(b):
        raise OddColumnError("fermionic commutation form is only defined here for even columns")
    return vec_inner(a, b)


def qubit_form(a: Sequence[LPoly], b: Sequence[LPoly]) -> LPoly:
    """``a^dagger Lambda_Q b``; the coefficient at ``k`` is the commutation bit of ``a`` with ``b`` shifted by ``-k``."""
    return vec_inner(a, swap_xz(b))


def fermi_comm_matrix(sys: FermionicSystem) -> PolyMatrix:
    cols = sys.tau.columns()
    for j, c in enumerate(cols):
        if column_parity(c):
            raise OddColumnError(f"column {j} is odd")
    return PolyMatrix(tuple(tuple(vec_inner(a, b) for b in cols) for a in cols), sys.dims)


def qubit_comm_matrix(sigma: PolyMatrix) -> PolyMatrix:
    cols = sigma.columns()
    return PolyMatrix(tuple(tuple(qubit_form(a, b) for b in cols) for a in cols), sigma.dims)


def comm_mismatches(sys: FermionicSystem, sigma: PolyMatrix) -> list[tuple[int, int, tuple[int, ...]]]:
    """Every ``(i, j, k)`` with ``i <= j`` where the two commutation polynomials differ at ``x^k``."""
    if sigma.shape[1] != sys.num_ops:
        raise ValueError(f"sigma has {sigma.shape[1]} columns, system has {sys.num_ops}")
    fermi = fermi_comm_matrix(sys)
    qubit = qubit_comm_matrix(sigma)
    bad = []
    for i in range(sys.num_ops):
        for j in range(i, sys.num_ops):
            diff = fermi[i, j] + qubit[i, j]
            bad.extend((i, j, k) for k in diff.sorted_terms())
    return bad


def check_encoding(sys: FermionicSystem, sigma: PolyMatrix) -> bool:
    """True iff ``sigma`` reproduces every commutation relation of ``sys`` at every translation."""
    if sigma.shape[1] != sys.num_ops or sigma.dims != sys.dims:
        return False
    return fermi_comm_matrix(sys) == qubit_comm_matrix(sigma)


def partial_check(sys: FermionicSystem, columns: Sequence[Sequence[LPoly]], j: int) -> bool:
    """Check the pairs ``(i, j)`` for ``i <= j``, assuming earlier pairs were already validated."""
    tau = sys.tau.columns()
    for i in range(j + 1):
        if vec_inner(tau[i], tau[j]) != qubit_form(columns[i], columns[j]):
            return False
    return True


def support(col: Sequence[LPoly]) -> set[tuple[int, tuple[int, ...]]]:
    """Sites ``(qubit, cell offset)`` where a Pauli column acts non-trivially."""
    n = len(col) // 2
    sites = set()
    for q in range(n):
        for k in col[q].terms | col[q + n].terms:
            sites.add((q, k))
    return sites


def column_weight(col: Sequence[LPoly]) -> int:
    return len(support(col))


def unused_qubits(sigma: PolyMatrix) -> list[int]:
    n = n_qubits(sigma)
    return [q for q in range(n) if not any(sigma.entries[q]) and not any(sigma.entries[q + n])]


def hermitian_square(sys: FermionicSystem, j: int) -> int:
    """The scalar ``f_j^2`` (+1 or -1) for the phased column ``j``."""
    w = sum(len(p) for p in sys.tau.column(j))
    k = 2 * sys.op_phases[j] + 2 * ((w * (w - 1) // 2) % 2)
    return 1 if k % 4 == 0 else -1
