"""GF(2) linear algebra on int bitsets (bit i of an int is coordinate i)."""

from __future__ import annotations

from collections.abc import Sequence


def column_kernel(columns: Sequence[int]) -> list[int]:
    """Basis of ``{b : XOR of columns[j] over set bits j of b == 0}``.

    Each column is reduced against the pivots found so far while tracking which
    original columns were combined; a column that reduces to zero yields a kernel vector.
    """
    pivots: dict[int, tuple[int, int]] = {}
    basis = []
    for j, col in enumerate(columns):
        vec, tag = col, 1 << j
        while vec:
            lead = vec.bit_length() - 1
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = (vec, tag)
                break
            vec ^= hit[0]
            tag ^= hit[1]
        if not vec:
            basis.append(tag)
    return basis


def rank(rows: Sequence[int]) -> int:
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = r
                break
            r ^= pivots[lead]
    return len(pivots)


def in_span(vec: int, rows: Sequence[int]) -> bool:
    return rank(list(rows) + [vec]) == rank(rows)


def solve(rows: Sequence[int], rhs: Sequence[int]) -> int | None:
    """Find ``x`` with ``popcount(rows[k] & x) % 2 == rhs[k]`` for all k, or None if inconsistent."""
    # augmented bit 0 holds the right-hand side; variable i lives at bit i + 1
    pivots: dict[int, int] = {}
    for r, b in zip(rows, rhs):
        v = (r << 1) | (b & 1)
        while v >> 1:
            lead = v.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = v
                break
            v ^= pivots[lead]
        if v == 1:
            return None
    # back substitution with free variables set to zero
    x = 0
    for lead in sorted(pivots):
        v = pivots[lead]
        rest = (v >> 1) & ~(1 << (lead - 1))
        val = (v & 1) ^ (bin(rest & x).count("1") & 1)
        if val:
            x |= 1 << (lead - 1)
    return x


def bits(v: int) -> list[int]:
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def popcount(v: int) -> int:
    return bin(v).count("1")
