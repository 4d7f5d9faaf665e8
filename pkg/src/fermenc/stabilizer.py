"""Finite-patch stabilizer and superselection extraction, sign repair and the distance-2 check.

Conventions (fixed everywhere in this module):

* cells of a patch are ordered lexicographically by offset;
* a Pauli element ``i^k X^x Z^z`` takes X before Z on each qubit, qubit bit index
  ``cell_index * n + q``;
* a Majorana element ``i^k M(b)`` multiplies its Majoranas in slot order, slot
  ``cell_index * 2m + 2j`` for ``gamma_j`` and ``+1`` for ``gammabar_j``;
* the Pauli assigned to column ``j`` is ``delta_j * i^{|x & z|} X^x Z^z`` (Hermitian
  up to ``delta_j``) and the Majorana element is ``i^{op_phase_j} M(tau_j)``;
* ``Gamma(b)`` multiplies generators with cells outermost and column index innermost.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum

from . import gf2
from .poly_f2 import LPoly, PolyMatrix, PolyVec
from .symplectic import FermionicSystem, n_qubits, qubit_form, unused_qubits

Offset = tuple[int, ...]


class InvariantError(RuntimeError):
    """An internal consistency guarantee failed (reported by the CLI with exit status 3)."""


@dataclass(frozen=True)
class PhasedPauli:
    """``i^phase * prod_q X_q^{x_q} Z_q^{z_q}`` on ``n`` qubits, bit q of x/z is qubit q."""

    x: int
    z: int
    phase: int = 0
    n: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", self.phase % 4)

    def __mul__(self, other: PhasedPauli) -> PhasedPauli:
        # moving Z^{z1} past X^{x2} costs (-1)^{z1.x2}
        k = self.phase + other.phase + 2 * gf2.popcount(self.z & other.x)
        return PhasedPauli(self.x ^ other.x, self.z ^ other.z, k, max(self.n, other.n))

    def commutes(self, other: PhasedPauli) -> bool:
        return (gf2.popcount(self.x & other.z) + gf2.popcount(self.z & other.x)) % 2 == 0

    @property
    def is_scalar(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def weight(self) -> int:
        return gf2.popcount(self.x | self.z)

    def sign(self) -> int:
        """+1 or -1 if the element is Hermitian, i.e. ``+-`` a product of X, Y, Z letters."""
        k = (self.phase - gf2.popcount(self.x & self.z)) % 4
        if k % 2:
            raise InvariantError(f"Pauli element {self} is not Hermitian")
        return 1 if k == 0 else -1

    def letters(self) -> str:
        out = []
        for q in range(self.n):
            bx, bz = (self.x >> q) & 1, (self.z >> q) & 1
            out.append("IXZY"[bx + 2 * bz])
        return "".join(out)


def hermitian_pauli(x: int, z: int, n: int, delta: int = 0) -> PhasedPauli:
    """The Hermitian Pauli with the given bits, times ``i^delta``."""
    return PhasedPauli(x, z, delta + gf2.popcount(x & z), n)


@dataclass(frozen=True)
class PhasedMajorana:
    """``i^phase * M(bits)`` with Majoranas multiplied in increasing slot order."""

    bits: int
    phase: int = 0
    slots: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", self.phase % 4)

    def __mul__(self, other: PhasedMajorana) -> PhasedMajorana:
        # each Majorana of `other` moves left past the later Majoranas of `self`
        t = sum(gf2.popcount(self.bits >> (p + 1)) for p in gf2.bits(other.bits))
        return PhasedMajorana(self.bits ^ other.bits, self.phase + other.phase + 2 * t, max(self.slots, other.slots))

    @property
    def is_scalar(self) -> bool:
        return self.bits == 0

    @property
    def weight(self) -> int:
        return gf2.popcount(self.bits)


def box(radius: int, dims: int) -> list[Offset]:
    return list(itertools.product(range(-radius, radius + 1), repeat=dims))


def reach(m: PolyMatrix) -> int:
    """Largest absolute exponent appearing in ``m`` (how far a column reaches from its anchor)."""
    out = 0
    for row in m.entries:
        for p in row:
            for t in p.terms:
                out = max(out, max(abs(a) for a in t))
    return out


@dataclass(frozen=True)
class PatchBinMatrix:
    """Binary form of a polynomial matrix tiled over a region.

    ``columns[c]`` is a bitset over rows ``cell_index * rows_per_cell + row`` of ``cells``;
    ``labels[c] = (offset, j)``; ``truncated[c]`` marks columns whose support leaves ``cells``.
    """

    cells: tuple[Offset, ...]
    rows_per_cell: int
    columns: tuple[int, ...]
    labels: tuple[tuple[Offset, int], ...]
    truncated: tuple[bool, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.cells) * self.rows_per_cell, len(self.columns))

    def kept(self) -> list[int]:
        return [c for c, t in enumerate(self.truncated) if not t]

    def to_rows(self) -> list[list[int]]:
        nrows, ncols = self.shape
        return [[(self.columns[c] >> r) & 1 for c in range(ncols)] for r in range(nrows)]


def _column_bits(col: Sequence[LPoly], shift: Offset, index: dict[Offset, int], rows: int, slot) -> int | None:
    v = 0
    for r, p in enumerate(col):
        for t in p.terms:
            cell = tuple(a + b for a, b in zip(t, shift))
            ci = index.get(cell)
            if ci is None:
                return None
            v ^= 1 << slot(ci, r)
    return v


def instantiate(m: PolyMatrix, region: Sequence[Offset], cells: Sequence[Offset] | None = None, slot=None) -> PatchBinMatrix:
    """One binary column per ``(offset in region, input column)``, rows over ``cells``.

    ``cells`` defaults to ``region`` (open boundary). A column whose support does not fit
    is kept as zero and flagged truncated. ``slot(cell_index, row)`` overrides the row order.
    """
    cells = tuple(sorted(cells if cells is not None else region))
    index = {c: i for i, c in enumerate(cells)}
    rows = m.shape[0]
    if slot is None:
        def slot(ci: int, r: int) -> int:
            return ci * rows + r
    cols, labels, trunc = [], [], []
    mcols = m.columns()
    for r in sorted(region):
        for j, col in enumerate(mcols):
            v = _column_bits(col, r, index, rows, slot)
            cols.append(v or 0)
            labels.append((r, j))
            trunc.append(v is None)
    return PatchBinMatrix(cells, rows, tuple(cols), tuple(labels), tuple(trunc))


def kernel_f2(mat: PatchBinMatrix | Sequence[Sequence[int]]) -> list[list[int]]:
    """Kernel basis of a binary matrix (truncated patch columns are excluded) as 0/1 lists."""
    if isinstance(mat, PatchBinMatrix):
        keep = mat.kept()
        basis = gf2.column_kernel([mat.columns[c] for c in keep])
        ncols = len(mat.columns)
        out = []
        for v in basis:
            full = [0] * ncols
            for i in gf2.bits(v):
                full[keep[i]] = 1
            out.append(full)
        return out
    rows = [list(r) for r in mat]
    ncols = len(rows[0]) if rows else 0
    cols = [sum(rows[i][j] << i for i in range(len(rows))) for j in range(ncols)]
    return [[(v >> j) & 1 for j in range(ncols)] for v in gf2.column_kernel(cols)]


def solve_sign_system(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[int]:
    """Solve ``A delta = b`` over F2 and return signs ``(-1)^delta``; raise if inconsistent."""
    ncols = len(a[0]) if a else 0
    rows = [sum(bit << j for j, bit in enumerate(r)) for r in a]
    x = gf2.solve(rows, list(b))
    if x is None:
        raise InvariantError("sign system A delta = b has no solution")
    return [-1 if (x >> j) & 1 else 1 for j in range(ncols)]


def base_deltas(sys: FermionicSystem) -> list[int]:
    """Exponent of ``i`` in the unsigned phase of each encoded column: 0 if ``f_j^2 = 1``, 1 if ``-1``."""
    out = []
    for j in range(sys.num_ops):
        col = sys.tau.column(j)
        w = sum(len(p) for p in col)
        k = (2 * sys.op_phases[j] + 2 * (w * (w - 1) // 2)) % 4
        out.append(0 if k == 0 else 1)
    return out


class Patch:
    """All generator images ``tau(f_j T_r)`` and ``sigma(f_j T_r)`` for offsets ``r`` in a box.

    The Majorana and qubit layouts extend past the region by the reach of the columns, so
    every generator image is represented exactly; "fitting" refers to the region itself.
    """

    def __init__(self, sys: FermionicSystem, sigma: PolyMatrix, radius: int = 1, signs: Sequence[int] | None = None) -> None:
        if sigma.shape[1] != sys.num_ops:
            raise ValueError("sigma and tau have different column counts")
        if radius < 0:
            raise ValueError("region radius must be non-negative")
        self.sys, self.sigma, self.radius = sys, sigma, radius
        self.m, self.n, self.dims, self.J = sys.modes, n_qubits(sigma), sys.dims, sys.num_ops
        self.signs = tuple(signs) if signs is not None else (1,) * self.J
        self.region = box(radius, self.dims)
        self.maj_cells = box(radius + reach(sys.tau), self.dims)
        self.qubit_cells = box(radius + reach(sigma), self.dims)
        self.qubit_index = {c: i for i, c in enumerate(self.qubit_cells)}
        m, n = self.m, self.n

        def maj_slot(ci: int, r: int) -> int:
            return ci * 2 * m + (2 * r if r < m else 2 * (r - m) + 1)

        def x_slot(ci: int, r: int) -> int:
            return ci * n + r if r < n else -1

        self.tau_full = instantiate(sys.tau, self.region, self.maj_cells, maj_slot)
        self.tau_fit = instantiate(sys.tau, self.region, self.region, maj_slot)
        self.sigma_fit = instantiate(sigma, self.region, self.region)
        self.labels = self.tau_full.labels
        deltas = base_deltas(sys)
        self.majoranas = [
            PhasedMajorana(bits, sys.op_phases[j], 2 * m * len(self.maj_cells))
            for bits, (_, j) in zip(self.tau_full.columns, self.labels)
        ]
        nq = n * len(self.qubit_cells)
        self.paulis = []
        cols = sigma.columns()
        for r, j in self.labels:
            x = z = 0
            for q in range(2 * n):
                for t in cols[j][q].terms:
                    ci = self.qubit_index[tuple(a + b for a, b in zip(t, r))]
                    if q < n:
                        x ^= 1 << (ci * n + q)
                    else:
                        z ^= 1 << (ci * n + q - n)
            delta = deltas[j] + (0 if self.signs[j] == 1 else 2)
            self.paulis.append(hermitian_pauli(x, z, nq, delta))

    def gamma_images(self, b: Sequence[int]) -> tuple[PhasedMajorana, PhasedPauli]:
        """``(tau(Gamma(b)), sigma(Gamma(b)))`` with generators multiplied in label order."""
        t = PhasedMajorana(0, 0, 2 * self.m * len(self.maj_cells))
        s = PhasedPauli(0, 0, 0, self.n * len(self.qubit_cells))
        for c, bit in enumerate(b):
            if bit:
                t = t * self.majoranas[c]
                s = s * self.paulis[c]
        return t, s

    def tau_kernel(self) -> list[list[int]]:
        return kernel_f2(self.tau_fit)

    def sigma_kernel(self) -> list[list[int]]:
        return kernel_f2(self.sigma_fit)

    def joint_kernel(self) -> list[list[int]]:
        """Vectors over the fitting tau columns that vanish under both tau and sigma."""
        keep = self.tau_fit.kept()
        shift = 2 * self.m * len(self.maj_cells)
        stacked = [self.tau_full.columns[c] | ((self.paulis[c].x | (self.paulis[c].z << self.n * len(self.qubit_cells))) << shift) for c in keep]
        out = []
        for v in gf2.column_kernel(stacked):
            full = [0] * len(self.labels)
            for i in gf2.bits(v):
                full[keep[i]] = 1
            out.append(full)
        return out

    def stabilizer(self, b: Sequence[int]) -> PhasedPauli:
        t, s = self.gamma_images(b)
        if not t.is_scalar:
            raise InvariantError("kernel vector does not map to a scalar Majorana element")
        out = PhasedPauli(0, 0, -t.phase, s.n) * s
        out.sign()
        return out

    def pauli_to_column(self, p: PhasedPauli) -> PolyVec:
        n = self.n
        terms: list[list[Offset]] = [[] for _ in range(2 * n)]
        for ci, cell in enumerate(self.qubit_cells):
            for q in range(n):
                i = ci * n + q
                if (p.x >> i) & 1:
                    terms[q].append(cell)
                if (p.z >> i) & 1:
                    terms[q + n].append(cell)
        return tuple(LPoly.from_terms(t, self.dims) for t in terms)

    def majorana_to_column(self, g: PhasedMajorana) -> PolyVec:
        """Polynomial column (gamma rows, then gammabar rows) of a patch Majorana monomial."""
        m = self.m
        terms: list[list[Offset]] = [[] for _ in range(2 * m)]
        for slot in gf2.bits(g.bits):
            ci, r = divmod(slot, 2 * m)
            row = r // 2 if r % 2 == 0 else m + r // 2
            terms[row].append(self.maj_cells[ci])
        return tuple(LPoly.from_terms(t, self.dims) for t in terms)

    def column_to_pauli(self, col: Sequence[LPoly], shift: Offset | None = None) -> PhasedPauli | None:
        """Hermitian Pauli of a polynomial column placed at ``shift``; None if it leaves the layout."""
        n = self.n
        shift = shift or (0,) * self.dims
        x = z = 0
        for q in range(2 * n):
            for t in col[q].terms:
                ci = self.qubit_index.get(tuple(a + b for a, b in zip(t, shift)))
                if ci is None:
                    return None
                if q < n:
                    x ^= 1 << (ci * n + q)
                else:
                    z ^= 1 << (ci * n + q - n)
        return hermitian_pauli(x, z, n * len(self.qubit_cells))

    def single_qubit_errors(self) -> list[tuple[int, str, PhasedPauli]]:
        home = self.qubit_index[(0,) * self.dims]
        nq = self.n * len(self.qubit_cells)
        out = []
        for q in range(self.n):
            bit = 1 << (home * self.n + q)
            out.append((q, "X", hermitian_pauli(bit, 0, nq)))
            out.append((q, "Y", hermitian_pauli(bit, bit, nq)))
            out.append((q, "Z", hermitian_pauli(0, bit, nq)))
        return out


def fix_signs(sys: FermionicSystem, sigma: PolyMatrix, radius: int = 1) -> tuple[int, ...]:
    """Translation-invariant signs ``delta_j`` such that no product of stabilizers equals ``-1``.

    Only the patch elements lying in both kernels can produce ``+-1``; their column-type
    parities form the rows of ``A`` and their current signs form ``b``.
    """
    patch = Patch(sys, sigma, radius)
    rows, rhs = [], []
    for v in patch.joint_kernel():
        st = patch.stabilizer(v)
        if not st.is_scalar:
            raise InvariantError("joint kernel element maps to a non-scalar Pauli")
        parity = [0] * sys.num_ops
        for c, bit in enumerate(v):
            if bit:
                parity[patch.labels[c][1]] ^= 1
        rows.append(parity)
        rhs.append(0 if st.sign() == 1 else 1)
    if not rows:
        return (1,) * sys.num_ops
    return tuple(solve_sign_system(rows, rhs))


@dataclass
class StabilizerReport:
    """Patch stabilizer group data for one encoding."""

    signs: tuple[int, ...]
    generators: list[PhasedPauli]
    shapes: list[tuple[int, PolyVec]]
    superselection: list[PhasedMajorana]
    patch: Patch = field(repr=False)

    @property
    def columns(self) -> list[PolyVec]:
        return [c for _, c in self.shapes]


def stabilizer_generators(
    sys: FermionicSystem, sigma: PolyMatrix, radius: int = 1, signs: Sequence[int] | None = None
) -> list[PhasedPauli]:
    """Phase-correct ``sigma(ker tau)`` generators on the patch; identity elements are dropped."""
    patch = Patch(sys, sigma, radius, signs)
    return [g for g in (patch.stabilizer(v) for v in patch.tau_kernel()) if not g.is_scalar]


def superselection_generators(
    sys: FermionicSystem, sigma: PolyMatrix, radius: int = 1, signs: Sequence[int] | None = None
) -> list[PhasedMajorana]:
    """Independent non-scalar elements of ``tau(ker sigma)`` on the patch."""
    return _superselection(Patch(sys, sigma, radius, signs))


def _superselection(patch: Patch) -> list[PhasedMajorana]:
    out, span = [], []
    for v in patch.sigma_kernel():
        t, s = patch.gamma_images(v)
        if not s.is_scalar:
            raise InvariantError("sigma kernel vector does not map to a scalar Pauli")
        g = PhasedMajorana(0, -s.phase, t.slots) * t
        if g.is_scalar or gf2.in_span(g.bits, span):
            continue
        span.append(g.bits)
        out.append(g)
    return out


def _normalize(col: PolyVec) -> PolyVec:
    dims = col[0].dims
    terms = [t for p in col for t in p.terms]
    if not terms:
        return col
    low = tuple(-min(t[d] for t in terms) for d in range(dims))
    return tuple(p.translate(low) for p in col)


def _poly_weight(col: PolyVec) -> int:
    n = len(col) // 2
    return sum(len(col[q].terms | col[q + n].terms) for q in range(n))


def _sort_key(col: PolyVec) -> tuple:
    return (_poly_weight(col), tuple(sorted(t for p in col for t in p.terms)), tuple(str(p) for p in col))


def stabilizer_shapes(patch: Patch, generators: Sequence[PhasedPauli]) -> list[tuple[int, PolyVec]]:
    """A small set of translation classes ``(sign, column)`` whose in-patch translates span the patch group."""
    def key(p: PhasedPauli) -> int:
        return p.x | (p.z << p.n)

    target = gf2.rank([key(g) for g in generators])
    shapes: dict[PolyVec, int] = {}
    for g in generators:
        col = _normalize(patch.pauli_to_column(g))
        shapes.setdefault(col, g.sign())
    span: list[int] = []
    chosen = []
    for col in sorted(shapes, key=_sort_key):
        if gf2.rank(span) == target:
            break
        before = gf2.rank(span)
        for shift in patch.qubit_cells:
            p = patch.column_to_pauli(col, shift)
            if p is not None:
                span.append(key(p))
        if gf2.rank(span) > before:
            chosen.append((shapes[col], col))
    return chosen


def analyze(sys: FermionicSystem, sigma: PolyMatrix, radius: int = 1) -> StabilizerReport:
    """Fix signs, then extract stabilizers, their translation classes and superselection elements."""
    signs = fix_signs(sys, sigma, radius)
    patch = Patch(sys, sigma, radius, signs)
    gens = [g for g in (patch.stabilizer(v) for v in patch.tau_kernel()) if not g.is_scalar]
    return StabilizerReport(signs, gens, stabilizer_shapes(patch, gens), _superselection(patch), patch)


class Detect(str, Enum):
    YES = "Yes"
    YES_STAR = "Yes*"
    NO = "No"


def _classify(detected: dict[int, bool], unused: Iterable[int]) -> Detect:
    unused = set(unused)
    if all(detected.values()):
        return Detect.YES
    if unused and all(ok for q, ok in detected.items() if q not in unused):
        return Detect.YES_STAR
    return Detect.NO


def undetected_errors(patch: Patch, generators: Sequence[PhasedPauli]) -> list[tuple[int, str]]:
    out = []
    for q, letter, err in patch.single_qubit_errors():
        if all(err.commutes(g) for g in generators):
            out.append((q, letter))
    return out


def distance2_check(
    sys: FermionicSystem, sigma: PolyMatrix, radius: int = 1, generators: Sequence[PhasedPauli] | None = None
) -> Detect:
    """Whether every single-qubit error on the home cell anticommutes with some patch stabilizer."""
    patch = Patch(sys, sigma, radius)
    if generators is None:
        generators = [g for g in (patch.stabilizer(v) for v in patch.tau_kernel()) if not g.is_scalar]
    missed = {q for q, _ in undetected_errors(patch, generators)}
    return _classify({q: q not in missed for q in range(patch.n)}, unused_qubits(sigma))


def syndrome(stabilizers: Sequence[PolyVec], error: Sequence[LPoly]) -> list[LPoly]:
    """Polynomial syndrome of a Pauli column against stabilizer columns (all translations at once)."""
    return [qubit_form(s, error) for s in stabilizers]


def distance2_from_polynomials(stabilizers: Sequence[PolyVec], sigma: PolyMatrix) -> Detect:
    """The distance-2 flag computed from stabilizer polynomial columns instead of a patch."""
    n, dims = n_qubits(sigma), sigma.dims
    zero, one = LPoly.zero(dims), LPoly.one(dims)
    detected = {}
    for q in range(n):
        ok = True
        for bx, bz in ((1, 0), (1, 1), (0, 1)):
            col = [zero] * (2 * n)
            if bx:
                col[q] = one
            if bz:
                col[q + n] = one
            if not any(syndrome(stabilizers, tuple(col))):
                ok = False
        detected[q] = ok
    return _classify(detected, unused_qubits(sigma))


def has_minus_identity(generators: Sequence[PhasedPauli]) -> bool:
    """Exhaustively check every subset product whose Pauli part is trivial."""
    def key(p: PhasedPauli) -> int:
        return p.x | (p.z << p.n)

    for v in _span_vectors(gf2.column_kernel([key(g) for g in generators])):
        prod = PhasedPauli(0, 0, 0)
        for i in gf2.bits(v):
            prod = prod * generators[i]
        if prod.phase != 0:
            return True
    return False


def _span_vectors(basis: Sequence[int]) -> Iterable[int]:
    for mask in range(1, 1 << len(basis)):
        v = 0
        for i, b in enumerate(basis):
            if (mask >> i) & 1:
                v ^= b
        yield v

