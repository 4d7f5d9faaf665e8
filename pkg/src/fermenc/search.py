"""Branch-and-bound search for minimum-cost encodings of a fermionic system on hardware."""

from __future__ import annotations

import multiprocessing as mp
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .enumerator import CandidateList, SearchParams, enumerate_candidates
from .hardware import HardwareCell, Unreachable, pauli_cost
from .poly_f2 import PolyMatrix, PolyVec, vec_inner
from .stabilizer import Detect, PhasedMajorana, PhasedPauli, analyze, distance2_check
from .symplectic import FermionicSystem, check_encoding, column_weight

ProgressHook = Callable[[int, int, int | None], None]


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed: float = 0.0
    candidates: int = 0
    incumbents: list[int] = field(default_factory=list)
    rejected: int = 0


@dataclass
class Encoding:
    """A verified encoding with its costs and, once analysed, its stabilizer data."""

    system: FermionicSystem
    cell: HardwareCell
    sigma: PolyMatrix
    weights: tuple[int, ...]
    costs: tuple[int, ...]
    margin: int = 2
    region: int = 1
    signs: tuple[int, ...] = ()
    stabilizers: list[tuple[int, PolyVec]] = field(default_factory=list)
    generators: list[PhasedPauli] = field(default_factory=list)
    superselection: list[PhasedMajorana] = field(default_factory=list)
    distance: Detect | None = None
    params: SearchParams | None = None
    stats: SearchStats | None = None

    @property
    def max_cost(self) -> int:
        return max(self.costs, default=0)

    @property
    def max_weight(self) -> int:
        return max(self.weights, default=0)

    @property
    def avg_cost(self) -> Fraction:
        return Fraction(sum(self.costs), len(self.costs)) if self.costs else Fraction(0)


@dataclass
class NoSolution:
    """The whole candidate tree was exhausted without an encoding of cost <= max_cost."""

    params: SearchParams
    stats: SearchStats


@dataclass
class Inconclusive:
    """The search stopped early; ``best`` is the incumbent so far, if any."""

    params: SearchParams
    stats: SearchStats
    best: Encoding | None = None


SearchResult = Encoding | NoSolution | Inconclusive


def describe(
    sys: FermionicSystem, cell: HardwareCell, sigma: PolyMatrix, margin: int = 2, region: int = 1, analyse: bool = True
) -> Encoding:
    """Price the columns of a valid ``sigma`` and (optionally) extract its stabilizer data."""
    cols = sigma.columns()
    weights = tuple(column_weight(c) for c in cols)
    costs = []
    for c in cols:
        try:
            costs.append(pauli_cost(c, cell, margin))
        except Unreachable:
            raise Unreachable("a column cannot be connected on the hardware at this margin") from None
    enc = Encoding(sys, cell, sigma, weights, tuple(costs), margin, region)
    if analyse:
        rep = analyze(sys, sigma, region)
        enc.signs = rep.signs
        enc.generators = rep.generators
        enc.stabilizers = rep.shapes
        enc.superselection = rep.superselection
        enc.distance = distance2_check(sys, sigma, region, rep.generators)
    return enc


class _Problem:
    """Everything the depth-first search needs, shared read-only between branches."""

    def __init__(self, sys: FermionicSystem, cell: HardwareCell, params: SearchParams, order: Sequence[int]) -> None:
        if sys.dims != cell.dims:
            raise ValueError(f"system has dims={sys.dims}, hardware has dims={cell.dims}")
        self.sys, self.cell, self.params = sys, cell, params
        self.order = list(order)
        self.cands: CandidateList = enumerate_candidates(cell, params)
        tau = [sys.tau.column(j) for j in self.order]
        J = len(tau)
        self.J = J
        self.feasible = True
        self.targets: list[list[np.ndarray | None]] = [[None] * J for _ in range(J)]
        selfsig = self.cands.self_signature() if len(self.cands) else None
        self.diag: list[np.ndarray] = []
        for i in range(J):
            for l in range(i, J):
                t = self.cands.target_bits(vec_inner(tau[i], tau[l]))
                if t is None:
                    self.feasible = False
                self.targets[i][l] = t
        for l in range(J):
            t = self.targets[l][l]
            if t is None or selfsig is None:
                self.diag.append(np.zeros(len(self.cands), dtype=bool))
            else:
                self.diag.append(np.all(selfsig == t, axis=1))
        if J and params.clifford_dedup and len(self.cands):
            self.diag[0] = self.diag[0] & self.cands.canonical

    def child_masks(self, j: int, c: int, masks: list[np.ndarray], cut: int) -> list[np.ndarray] | None:
        """Constrain the masks of columns ``j+1..`` by choosing candidate ``c`` for column ``j``."""
        sig = self.cands.signature(c)[:cut]
        out = []
        for off, l in enumerate(range(j + 1, self.J), start=1):
            m = masks[off][:cut] & np.all(sig == self.targets[j][l], axis=1)
            if not m.any():
                return None
            out.append(m)
        return out

    def sigma_of(self, chosen: Sequence[int]) -> PolyMatrix:
        cols: list[PolyVec] = [()] * self.J
        for pos, c in zip(self.order, chosen):
            cols[pos] = self.cands.column(c)
        return PolyMatrix.from_columns(cols, self.sys.dims, 2 * self.cell.n)


class _Stop(Exception):
    pass


class _DFS:
    def __init__(
        self,
        prob: _Problem,
        detect: bool,
        region: int,
        deadline: float | None,
        progress: ProgressHook | None,
        shared=None,
    ) -> None:
        self.prob, self.detect, self.region = prob, detect, region
        self.deadline, self.progress, self.shared = deadline, progress, shared
        self.best = prob.params.max_cost + 1
        self.incumbent: list[int] | None = None
        self.stats = SearchStats(candidates=len(prob.cands))

    def bound(self) -> int:
        if self.shared is None:
            return self.best
        return min(self.best, self.shared.value + 1)

    def tick(self, depth: int) -> None:
        self.stats.nodes += 1
        if self.stats.nodes & 1023 == 0:
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise _Stop
            if self.progress is not None:
                self.progress(self.stats.nodes, depth, self.best if self.incumbent else None)

    def accept(self, chosen: list[int]) -> bool:
        if not self.detect:
            return True
        sigma = self.prob.sigma_of(chosen)
        if distance2_check(self.prob.sys, sigma, self.region) is Detect.NO:
            self.stats.rejected += 1
            return False
        return True

    def record(self, chosen: list[int]) -> None:
        cost = max(int(self.prob.cands.cost[c]) for c in chosen)
        self.best = cost
        self.incumbent = list(chosen)
        self.stats.incumbents.append(cost)
        if self.shared is not None:
            with self.shared.get_lock():
                if cost < self.shared.value:
                    self.shared.value = cost

    def run(self, j: int, masks: list[np.ndarray], chosen: list[int], prefix_cost: int = 0) -> None:
        cost = self.prob.cands.cost
        cut = self.prob.cands.cutoff(self.bound())
        for c in np.flatnonzero(masks[0][:cut]):
            c = int(c)
            # the bound may have tightened below a column already on the path
            if cost[c] >= self.bound() or prefix_cost >= self.bound():
                break
            self.tick(j)
            if j == self.prob.J - 1:
                if self.accept(chosen + [c]):
                    self.record(chosen + [c])
                continue
            sub = self.prob.child_masks(j, c, masks, self.prob.cands.cutoff(self.bound()))
            if sub is not None:
                self.run(j + 1, sub, chosen + [c], max(prefix_cost, int(cost[c])))


def _column_order(sys: FermionicSystem, most_constrained: bool) -> list[int]:
    J = sys.num_ops
    if not most_constrained:
        return list(range(J))
    tau = sys.tau.columns()
    count = [sum(len(vec_inner(tau[i], tau[l])) for l in range(J) if l != i) for i in range(J)]
    return sorted(range(J), key=lambda i: (-count[i], i))


def _finish(prob: _Problem, chosen: list[int] | None, stats: SearchStats, region: int, analyse: bool) -> Encoding | None:
    if chosen is None:
        return None
    sigma = prob.sigma_of(chosen)
    if not check_encoding(prob.sys, sigma):
        from .stabilizer import InvariantError

        raise InvariantError("search produced an invalid encoding")
    enc = describe(prob.sys, prob.cell, sigma, prob.params.margin, region, analyse)
    enc.params, enc.stats = prob.params, stats
    return enc


def branch_and_bound(
    sys: FermionicSystem,
    cell: HardwareCell,
    params: SearchParams,
    *,
    require_detection: bool = False,
    region: int = 1,
    jobs: int = 1,
    time_limit: float | None = None,
    progress: ProgressHook | None = None,
    most_constrained_first: bool = False,
    analyse: bool = True,
) -> SearchResult:
    """Minimise the maximum column cost over all encodings in the class fixed by ``params``.

    Returns the first optimum in candidate-stream order, ``NoSolution`` when the tree is
    exhausted, or ``Inconclusive`` when ``time_limit`` (seconds) runs out.
    """
    start = time.monotonic()
    deadline = start + time_limit if time_limit is not None else None
    prob = _Problem(sys, cell, params, _column_order(sys, most_constrained_first))
    if prob.J == 0:
        raise ValueError("the system has no operators")
    if not prob.feasible or not len(prob.cands):
        stats = SearchStats(candidates=len(prob.cands), elapsed=time.monotonic() - start)
        return NoSolution(params, stats)
    if jobs > 1:
        chosen, stats, stopped = _parallel(prob, require_detection, region, deadline, jobs, progress)
    else:
        dfs = _DFS(prob, require_detection, region, deadline, progress)
        stopped = False
        try:
            dfs.run(0, prob.diag, [])
        except _Stop:
            stopped = True
        chosen, stats = dfs.incumbent, dfs.stats
    stats.elapsed = time.monotonic() - start
    enc = _finish(prob, chosen, stats, region, analyse)
    if stopped:
        return Inconclusive(params, stats, enc)
    if enc is None:
        return NoSolution(params, stats)
    return enc


def search_error_detecting(sys: FermionicSystem, cell: HardwareCell, params: SearchParams, **kw) -> SearchResult:
    """Search with weight-1 columns excluded and non-detecting completions rejected."""
    if params.min_weight < 2:
        params = SearchParams(
            params.range, max(params.max_weight, 2), params.max_cost, 2, params.margin,
            params.clifford_dedup, params.candidate_limit,
        )
    return branch_and_bound(sys, cell, params, require_detection=True, **kw)


# parallel search over the first column

_WORKER: dict = {}


def _init_worker(prob: _Problem, shared, detect: bool, region: int, deadline: float | None) -> None:
    _WORKER.update(prob=prob, shared=shared, detect=detect, region=region, deadline=deadline)


def _run_root(c: int) -> tuple[int, list[int] | None, int | None, int, int, bool]:
    prob: _Problem = _WORKER["prob"]
    dfs = _DFS(prob, _WORKER["detect"], _WORKER["region"], _WORKER["deadline"], None, _WORKER["shared"])
    stopped = False
    try:
        if prob.cands.cost[c] < dfs.bound():
            dfs.tick(0)
            if prob.J == 1:
                if dfs.accept([c]):
                    dfs.record([c])
            else:
                sub = prob.child_masks(0, c, prob.diag, prob.cands.cutoff(dfs.bound()))
                if sub is not None:
                    dfs.run(1, sub, [c], int(prob.cands.cost[c]))
    except _Stop:
        stopped = True
    best = dfs.best if dfs.incumbent is not None else None
    return c, dfs.incumbent, best, dfs.stats.nodes, dfs.stats.rejected, stopped


def _parallel(
    prob: _Problem, detect: bool, region: int, deadline: float | None, jobs: int, progress: ProgressHook | None
) -> tuple[list[int] | None, SearchStats, bool]:
    roots = [int(c) for c in np.flatnonzero(prob.diag[0])]
    ctx = mp.get_context("fork")
    shared = ctx.Value("i", prob.params.max_cost + 1)
    stats = SearchStats(candidates=len(prob.cands))
    found: list[tuple[int, int, list[int]]] = []
    stopped = False
    with ctx.Pool(jobs, initializer=_init_worker, initargs=(prob, shared, detect, region, deadline)) as pool:
        for c, chosen, best, nodes, rejected, stop in pool.imap_unordered(_run_root, roots):
            stats.nodes += nodes
            stats.rejected += rejected
            stopped |= stop
            if chosen is not None:
                found.append((best, c, chosen))
            if progress is not None:
                progress(stats.nodes, 0, min((f[0] for f in found), default=None))
    if not found:
        return None, stats, stopped
    found.sort(key=lambda f: (f[0], f[1]))
    stats.incumbents = sorted({f[0] for f in found}, reverse=True)
    return found[0][2], stats, stopped
