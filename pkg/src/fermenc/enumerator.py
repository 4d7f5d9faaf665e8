"""Candidate Pauli columns for the search, ordered by cost, with commutation signature tables.

A candidate is stored as up to ``max_weight`` (site, letter) pairs. Sites index the
``n * (2r+1)^D`` qubits within Chebyshev radius ``r`` of the home cell; letters are
2-bit codes ``x + 2z`` (1 = X, 2 = Z, 3 = Y).
"""

from __future__ import annotations

import itertools
from collections import OrderedDict
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .hardware import HardwareCell, Unreachable, support_cost
from .poly_f2 import LPoly, PolyVec

Offset = tuple[int, ...]

LETTERS = "IXZY"
# symplectic product of two 2-bit letters
_SYMP = np.array([[((a & 1) & (b >> 1)) ^ ((a >> 1) & (b & 1)) for b in range(4)] for a in range(4)], dtype=np.uint8)


@dataclass(frozen=True)
class SearchParams:
    """Bounds on the candidate stream and the search."""

    range: int = 1
    max_weight: int = 3
    max_cost: int = 2
    min_weight: int = 1
    margin: int = 2
    clifford_dedup: bool = True
    candidate_limit: int = 5_000_000

    def __post_init__(self) -> None:
        if self.range < 0:
            raise ValueError("range must be non-negative")
        if self.min_weight < 1 or self.max_weight < self.min_weight:
            raise ValueError("need max_weight >= min_weight >= 1")
        if self.max_cost < 0:
            raise ValueError("max_cost must be non-negative")
        if self.margin < 0:
            raise ValueError("margin must be non-negative")


@dataclass
class CandidateList:
    """Candidates sorted by (cost, weight, sites, letters).

    ``sites`` and ``letters`` are ``(N, max_weight)`` arrays padded with ``-1`` / ``0``.
    """

    n: int
    dims: int
    radius: int
    cells: list[Offset]
    sites: np.ndarray
    letters: np.ndarray
    cost: np.ndarray
    weight: np.ndarray
    canonical: np.ndarray
    min_slack: int | None = None
    priced: int = 0
    _cache: OrderedDict = field(default_factory=OrderedDict, repr=False)

    def __len__(self) -> int:
        return len(self.cost)

    @property
    def num_sites(self) -> int:
        return self.n * len(self.cells)

    def site(self, s: int) -> tuple[int, Offset]:
        return s % self.n, self.cells[s // self.n]

    def column(self, i: int) -> PolyVec:
        n = self.n
        terms: list[list[Offset]] = [[] for _ in range(2 * n)]
        for s, l in zip(self.sites[i], self.letters[i]):
            if s < 0:
                continue
            q, cell = self.site(int(s))
            if l & 1:
                terms[q].append(cell)
            if l & 2:
                terms[q + n].append(cell)
        return tuple(LPoly.from_terms(t, self.dims) for t in terms)

    def label(self, i: int) -> str:
        parts = []
        for s, l in zip(self.sites[i], self.letters[i]):
            if s >= 0:
                q, cell = self.site(int(s))
                parts.append(f"{LETTERS[l]}{q}@{cell}")
        return " ".join(parts) or "I"

    def cutoff(self, bound: int) -> int:
        """Number of leading candidates with cost strictly below ``bound``."""
        return int(np.searchsorted(self.cost, bound, side="left"))

    # commutation tables

    @property
    def window(self) -> list[Offset]:
        w = 2 * self.radius
        return list(itertools.product(range(-w, w + 1), repeat=self.dims))

    def window_index(self) -> dict[Offset, int]:
        return {k: i for i, k in enumerate(self.window)}

    def _letter_table(self, i: int) -> np.ndarray:
        """``T[u, k]``: letter of candidate ``i`` shifted by window offset ``k`` at site ``u``."""
        cell_index = {c: ci for ci, c in enumerate(self.cells)}
        win = self.window
        table = np.zeros((self.num_sites + 1, len(win)), dtype=np.uint8)
        for s, l in zip(self.sites[i], self.letters[i]):
            if s < 0:
                continue
            q, cell = self.site(int(s))
            for ki, k in enumerate(win):
                ci = cell_index.get(tuple(a + b for a, b in zip(cell, k)))
                if ci is not None:
                    table[ci * self.n + q, ki] = l
        return table

    def signature(self, anchor: int) -> np.ndarray:
        """Bit ``k`` of row ``c`` is the ``x^k`` coefficient of ``omega_Q(anchor, c)``, packed into uint64 words."""
        hit = self._cache.get(anchor)
        if hit is not None:
            self._cache.move_to_end(anchor)
            return hit
        table = self._letter_table(anchor)
        sites = np.where(self.sites < 0, self.num_sites, self.sites)
        acc = np.zeros((len(self), table.shape[1]), dtype=np.uint8)
        for t in range(self.sites.shape[1]):
            acc ^= _SYMP[table[sites[:, t]], self.letters[:, t][:, None]]
        packed = pack_bits(acc)
        self._cache[anchor] = packed
        limit = max(16, (256 << 20) // max(1, packed.nbytes))
        while len(self._cache) > limit:
            self._cache.popitem(last=False)
        return packed

    def self_signature(self) -> np.ndarray:
        """Packed window bits of ``omega_Q(c, c)`` for every candidate."""
        widx = self.window_index()
        nw = len(widx)
        acc = np.zeros((len(self), nw), dtype=np.uint8)
        w = self.sites.shape[1]
        cells = np.array(self.cells, dtype=np.int64).reshape(len(self.cells), self.dims)
        valid = self.sites >= 0
        safe = np.where(valid, self.sites, 0)
        q = safe % self.n
        cell = cells[safe // self.n]
        span = 4 * self.radius + 1
        for t in range(w):
            for u in range(w):
                if t == u:
                    continue
                ok = valid[:, t] & valid[:, u] & (q[:, t] == q[:, u])
                diff = cell[:, u] - cell[:, t] + 2 * self.radius
                flat = np.zeros(len(self), dtype=np.int64)
                for d in range(self.dims):
                    flat = flat * span + diff[:, d]
                bit = _SYMP[self.letters[:, t], self.letters[:, u]] & ok
                rows = np.nonzero(bit)[0]
                acc[rows, flat[rows]] ^= 1
        return pack_bits(acc)

    def target_bits(self, poly: LPoly) -> np.ndarray | None:
        """Packed window bits of a target polynomial, or None if it reaches outside the window."""
        widx = self.window_index()
        bits = np.zeros((1, len(widx)), dtype=np.uint8)
        for t in poly.terms:
            i = widx.get(t)
            if i is None:
                return None
            bits[0, i] = 1
        return pack_bits(bits)[0]


def pack_bits(a: np.ndarray) -> np.ndarray:
    """Pack an ``(N, W)`` 0/1 array into ``(N, ceil(W/64))`` uint64 words."""
    n, w = a.shape
    words = max(1, (w + 63) // 64)
    out = np.zeros((n, words), dtype=np.uint64)
    for j in range(w):
        out[:, j // 64] |= a[:, j].astype(np.uint64) << np.uint64(j % 64)
    return out


def _canonical_letters(sites: Sequence[int], letters: Sequence[int], n: int) -> bool:
    """Per qubit index: first letter is X, and the second distinct letter (if any) is Z."""
    seen: dict[int, list[int]] = {}
    for s, l in zip(sites, letters):
        seq = seen.setdefault(s % n, [])
        if l not in seq:
            seq.append(l)
    for seq in seen.values():
        if seq[0] != 1:
            return False
        if len(seq) > 1 and seq[1] != 2:
            return False
    return True


def enumerate_candidates(cell: HardwareCell, params: SearchParams) -> CandidateList:
    """All Paulis on sites within the range box with home-cell support, weight and cost in bounds."""
    n, dims, r = cell.n, cell.dims, params.range
    cells = sorted(itertools.product(range(-r, r + 1), repeat=dims))
    home = cells.index((0,) * dims)
    num_sites = n * len(cells)
    home_sites = set(range(home * n, home * n + n))
    w_hi = params.max_weight
    rows: list[tuple] = []
    min_slack = None
    priced = 0
    if params.max_cost >= params.min_weight - 1:
        for w in range(params.min_weight, w_hi + 1):
            for support in itertools.combinations(range(num_sites), w):
                if home_sites.isdisjoint(support):
                    continue
                try:
                    cost = support_cost([(s % n, cells[s // n]) for s in support], cell, params.margin)
                except Unreachable:
                    continue
                priced += 1
                slack = cost - (w - 1)
                min_slack = slack if min_slack is None else min(min_slack, slack)
                if cost > params.max_cost:
                    continue
                for letters in itertools.product((1, 2, 3), repeat=w):
                    rows.append((cost, w, support, letters))
                if len(rows) > params.candidate_limit:
                    raise ValueError(
                        f"more than {params.candidate_limit} candidates; lower range, max_weight or max_cost"
                    )
    rows.sort()
    size = len(rows)
    sites = np.full((size, max(1, w_hi)), -1, dtype=np.int64)
    letters = np.zeros((size, max(1, w_hi)), dtype=np.uint8)
    cost = np.zeros(size, dtype=np.int64)
    weight = np.zeros(size, dtype=np.int64)
    canonical = np.zeros(size, dtype=bool)
    for i, (c, w, support, lets) in enumerate(rows):
        sites[i, :w] = support
        letters[i, :w] = lets
        cost[i] = c
        weight[i] = w
        canonical[i] = _canonical_letters(support, lets, n)
    return CandidateList(n, dims, r, cells, sites, letters, cost, weight, canonical, min_slack, priced)


def commutation_partition(cands: CandidateList, anchor: int) -> dict[Offset, tuple[list[int], list[int]]]:
    """For every window offset ``k``: candidates commuting / anticommuting with ``anchor`` shifted by ``k``."""
    sig = cands.signature(anchor)
    out = {}
    for ki, k in enumerate(cands.window):
        word, bit = divmod(ki, 64)
        anti = ((sig[:, word] >> np.uint64(bit)) & np.uint64(1)).astype(bool)
        out[k] = (np.nonzero(~anti)[0].tolist(), np.nonzero(anti)[0].tolist())
    return out
