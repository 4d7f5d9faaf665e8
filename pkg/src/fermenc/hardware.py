"""Hardware unit cells, tiling into finite graphs, and Steiner-tree pricing of Pauli columns."""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache

from .poly_f2 import LPoly

Offset = tuple[int, ...]
Site = tuple[int, Offset]
Edge = tuple[int, int, Offset]


class Unreachable(Exception):
    """Terminals lie in different connected components of the tiled graph."""


def _neg(k: Offset) -> Offset:
    return tuple(-a for a in k)


def canonical_edge(q1: int, q2: int, offset: Sequence[int]) -> Edge:
    """Edge between qubit ``q1`` of the home cell and qubit ``q2`` of the cell at ``offset``."""
    off = tuple(offset)
    if q1 == q2 and not any(off):
        raise ValueError(f"self-loop on qubit {q1}")
    return min((q1, q2, off), (q2, q1, _neg(off)))


@dataclass(frozen=True)
class HardwareCell:
    """Translationally invariant qubit connectivity: ``n`` qubits per cell plus edges."""

    n: int
    dims: int
    edges: frozenset[Edge]
    name: str = ""

    @classmethod
    def build(cls, n: int, edges: Iterable[tuple[int, int, Sequence[int]]], dims: int = 2, name: str = "") -> HardwareCell:
        canon = set()
        for q1, q2, off in edges:
            if not (0 <= q1 < n and 0 <= q2 < n):
                raise ValueError(f"edge ({q1}, {q2}) references a qubit outside 0..{n - 1}")
            if len(off) != dims:
                raise ValueError(f"edge offset {tuple(off)} does not have {dims} components")
            canon.add(canonical_edge(q1, q2, off))
        return cls(n, dims, frozenset(canon), name)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def degree(self, q: int) -> int:
        deg = 0
        for a, b, off in self.edges:
            deg += (a == q) + (b == q)
        return deg


Box = tuple[Offset, Offset]


def box_cells(box: Box) -> list[Offset]:
    lo, hi = box
    return list(itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))))


@dataclass(frozen=True)
class PatchGraph:
    """A finite piece of the hardware lattice; vertices are ``(qubit, cell)`` sites."""

    vertices: tuple[Site, ...]
    adjacency: dict[Site, tuple[Site, ...]]

    def __contains__(self, v: Site) -> bool:
        return v in self.adjacency

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency.values()) // 2


def tile(cell: HardwareCell, box: Box) -> PatchGraph:
    """Replicate ``cell`` over every cell offset in the inclusive ``box``."""
    cells = box_cells(box)
    if not cells:
        raise ValueError("empty region")
    inside = set(cells)
    vertices = tuple((q, c) for c in cells for q in range(cell.n))
    adj: dict[Site, set[Site]] = {v: set() for v in vertices}
    for c in cells:
        for q1, q2, off in cell.edges:
            c2 = tuple(a + b for a, b in zip(c, off))
            if c2 in inside:
                adj[(q1, c)].add((q2, c2))
                adj[(q2, c2)].add((q1, c))
    return PatchGraph(vertices, {v: tuple(sorted(a)) for v, a in adj.items()})


def _bfs(g: PatchGraph, sources: dict[Site, int]) -> dict[Site, int]:
    """Multi-source shortest distances with per-source initial costs (unit edge weights)."""
    buckets: defaultdict[int, list[Site]] = defaultdict(list)
    for v, d in sources.items():
        buckets[d].append(v)
    dist: dict[Site, int] = {}
    level = min(buckets, default=0)
    while buckets:
        for v in buckets.pop(level, ()):
            if v in dist:
                continue
            dist[v] = level
            for u in g.adjacency[v]:
                if u not in dist:
                    buckets[level + 1].append(u)
        level += 1
    return dist


def steiner_cost(g: PatchGraph, terminals: Iterable[Site]) -> int:
    """Edge count of a minimum Steiner tree (Dreyfus-Wagner over terminal subsets)."""
    terms = sorted(set(terminals))
    if not terms:
        raise ValueError("need at least one terminal")
    for t in terms:
        if t not in g:
            raise ValueError(f"terminal {t} is not in the graph")
    if len(terms) == 1:
        return 0
    root, rest = terms[-1], terms[:-1]
    k = len(rest)
    # best[mask][v]: cheapest tree spanning the terminals in mask plus v
    best: dict[int, dict[Site, int]] = {}
    for i, t in enumerate(rest):
        best[1 << i] = _bfs(g, {t: 0})
    full = (1 << k) - 1
    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            continue
        merged: dict[Site, int] = {}
        sub = (mask - 1) & mask
        while sub:
            other = mask ^ sub
            if sub < other:
                a, b = best[sub], best[other]
                for v, da in a.items():
                    db = b.get(v)
                    if db is not None:
                        s = da + db
                        if s < merged.get(v, s + 1):
                            merged[v] = s
            sub = (sub - 1) & mask
        best[mask] = _bfs(g, merged)
    d = best[full].get(root)
    if d is None:
        raise Unreachable(f"terminals {terms} are not connected")
    return d


def column_sites(col: Sequence[LPoly]) -> list[Site]:
    n = len(col) // 2
    sites = set()
    for q in range(n):
        for k in col[q].terms | col[q + n].terms:
            sites.add((q, k))
    return sorted(sites)


def normalize_sites(sites: Iterable[Site]) -> tuple[Site, ...]:
    """Translate a site set so its bounding box starts at the origin (translation-invariant key)."""
    sites = list(sites)
    if not sites:
        return ()
    dims = len(sites[0][1])
    low = tuple(min(s[1][d] for s in sites) for d in range(dims))
    return tuple(sorted((q, tuple(a - b for a, b in zip(k, low))) for q, k in sites))


@lru_cache(maxsize=None)
def _support_cost(shape: tuple[Site, ...], cell: HardwareCell, margin: int) -> int:
    dims = cell.dims
    lo = tuple(min(s[1][d] for s in shape) - margin for d in range(dims))
    hi = tuple(max(s[1][d] for s in shape) + margin for d in range(dims))
    return steiner_cost(tile(cell, (lo, hi)), shape)


def support_cost(sites: Iterable[Site], cell: HardwareCell, margin: int = 2) -> int:
    """Steiner cost of a set of sites; memoized on the translation class of the set."""
    shape = normalize_sites(sites)
    if len(shape) <= 1:
        return 0
    return _support_cost(shape, cell, margin)


def pauli_cost(col: Sequence[LPoly], cell: HardwareCell, margin: int = 2) -> int:
    """Steiner cost of a Pauli column on the tiled hardware; the identity costs 0."""
    if len(col) != 2 * cell.n:
        raise ValueError(f"column has {len(col)} entries, cell needs {2 * cell.n}")
    return support_cost(column_sites(col), cell, margin)


def _bfs_plain(g: PatchGraph, src: Site) -> dict[Site, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def distance(g: PatchGraph, a: Site, b: Site) -> int | None:
    return _bfs_plain(g, a).get(b)
