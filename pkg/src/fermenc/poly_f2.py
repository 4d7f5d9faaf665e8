"""Laurent polynomials over F2 in D lattice variables, plus matrices of them.

A monomial ``x^a y^b`` stands for the lattice translation by ``(a, b)``; a
polynomial is the set of translations at which some operator has support.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

VARIABLES = ("x", "y", "z", "w")

Exponent = tuple[int, ...]


class PolySyntaxError(ValueError):
    """Raised for malformed polynomial text; ``pos`` is the 0-based offset."""

    def __init__(self, message: str, text: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class LPoly:
    """Laurent polynomial over F2: a finite set of exponent vectors."""

    terms: frozenset[Exponent]
    dims: int

    def __post_init__(self) -> None:
        if self.dims < 1:
            raise ValueError("dims must be positive")
        for t in self.terms:
            if len(t) != self.dims:
                raise ValueError(f"exponent {t} does not have {self.dims} components")

    @classmethod
    def zero(cls, dims: int) -> LPoly:
        return cls(frozenset(), dims)

    @classmethod
    def one(cls, dims: int) -> LPoly:
        return cls(frozenset({(0,) * dims}), dims)

    @classmethod
    def monomial(cls, k: Sequence[int]) -> LPoly:
        return cls(frozenset({tuple(k)}), len(k))

    @classmethod
    def from_terms(cls, terms: Iterable[Sequence[int]], dims: int) -> LPoly:
        """Build from an iterable of exponents; repeated exponents cancel in pairs."""
        acc: set[Exponent] = set()
        for t in terms:
            acc ^= {tuple(t)}
        return cls(frozenset(acc), dims)

    def _check(self, other: LPoly) -> None:
        if self.dims != other.dims:
            raise ValueError(f"dims mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other: LPoly) -> LPoly:
        self._check(other)
        return LPoly(self.terms ^ other.terms, self.dims)

    __sub__ = __add__

    def __mul__(self, other: LPoly) -> LPoly:
        self._check(other)
        acc: set[Exponent] = set()
        for p in self.terms:
            for q in other.terms:
                acc ^= {tuple(a + b for a, b in zip(p, q))}
        return LPoly(frozenset(acc), self.dims)

    def dagger(self) -> LPoly:
        return LPoly(frozenset(tuple(-a for a in t) for t in self.terms), self.dims)

    def translate(self, k: Sequence[int]) -> LPoly:
        if len(k) != self.dims:
            raise ValueError(f"translation {tuple(k)} does not have {self.dims} components")
        return LPoly(frozenset(tuple(a + b for a, b in zip(t, k)) for t in self.terms), self.dims)

    def coefficient(self, k: Sequence[int]) -> int:
        return int(tuple(k) in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[Exponent]:
        return sorted(self.terms, key=lambda t: (sum(abs(a) for a in t), tuple(-abs(a) for a in t), t))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(_format_monomial(t) for t in self.sorted_terms())

    def __repr__(self) -> str:
        return f"LPoly({str(self)!r}, dims={self.dims})"


def _format_monomial(t: Exponent) -> str:
    parts = []
    for var, e in zip(VARIABLES, t):
        if e == 1:
            parts.append(var)
        elif e != 0:
            parts.append(f"{var}^{e}")
    return "".join(parts) or "1"


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_]*)|(?P<op>[-+*^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    return tokens


def parse_poly(text: str, dims: int) -> LPoly:
    """Parse text such as ``"1+x*y^-1"`` into an :class:`LPoly` over ``dims`` variables.

    Grammar: ``poly := term ('+' term)*``, ``term := '0' | '1' | factor ('*'? factor)*``,
    ``factor := var ('^' int)?`` where ``int`` may carry a sign.
    """
    allowed = VARIABLES[:dims]
    tokens = _tokenize(text)
    i = 0
    terms: list[Exponent] = []

    def peek() -> tuple[str, str, int] | None:
        return tokens[i] if i < len(tokens) else None

    def fail(msg: str) -> PolySyntaxError:
        tok = peek()
        return PolySyntaxError(msg, text, tok[2] if tok else len(text))

    def parse_term() -> Exponent | None:
        nonlocal i
        tok = peek()
        if tok is None:
            raise fail("expected a term")
        if tok[0] == "int":
            if tok[1] not in ("0", "1"):
                raise fail(f"coefficient {tok[1]!r} is not 0 or 1")
            i += 1
            return None if tok[1] == "0" else (0,) * dims
        exp = [0] * dims
        seen = False
        while True:
            tok = peek()
            if tok is None or tok[0] == "op" and tok[1] == "+":
                break
            if tok[0] == "op" and tok[1] == "*":
                if not seen:
                    raise fail("unexpected '*'")
                i += 1
                tok = peek()
                if tok is None or tok[0] != "name":
                    raise fail("expected a variable after '*'")
            if tok[0] != "name":
                raise fail(f"unexpected {tok[1]!r}")
            # "xy" is the product of x and y
            for off, var in enumerate(tok[1]):
                if var not in allowed:
                    raise PolySyntaxError(f"unknown variable {var!r} for dims={dims}", text, tok[2] + off)
            i += 1
            power = 1
            nxt = peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "^":
                i += 1
                sign = 1
                num = peek()
                if num is not None and num[0] == "op" and num[1] in "+-":
                    sign = -1 if num[1] == "-" else 1
                    i += 1
                    num = peek()
                if num is None or num[0] != "int":
                    raise fail("expected an integer exponent")
                power = sign * int(num[1])
                i += 1
            for var in tok[1][:-1]:
                exp[allowed.index(var)] += 1
            exp[allowed.index(tok[1][-1])] += power
            seen = True
        if not seen:
            raise fail("expected a term")
        return tuple(exp)

    while True:
        t = parse_term()
        if t is not None:
            terms.append(t)
        tok = peek()
        if tok is None:
            break
        if tok[0] == "op" and tok[1] == "+":
            i += 1
            continue
        raise fail(f"unexpected {tok[1]!r}")
    return LPoly.from_terms(terms, dims)


PolyVec = tuple[LPoly, ...]


@dataclass(frozen=True)
class PolyMatrix:
    """Dense matrix of :class:`LPoly`, stored row-major."""

    entries: tuple[tuple[LPoly, ...], ...]
    dims: int

    def __post_init__(self) -> None:
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        for row in self.entries:
            for e in row:
                if e.dims != self.dims:
                    raise ValueError("entries must share dims")

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], dims: int) -> PolyMatrix:
        return cls(tuple(tuple(parse_poly(s, dims) for s in row) for row in rows), dims)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[LPoly]], dims: int, nrows: int | None = None) -> PolyMatrix:
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        if any(len(c) != nrows for c in columns):
            raise ValueError("columns must have equal length")
        return cls(tuple(tuple(c[i] for c in columns) for i in range(nrows)), dims)

    @classmethod
    def zeros(cls, rows: int, cols: int, dims: int) -> PolyMatrix:
        z = LPoly.zero(dims)
        return cls(tuple(tuple(z for _ in range(cols)) for _ in range(rows)), dims)

    @classmethod
    def identity(cls, size: int, dims: int) -> PolyMatrix:
        z, o = LPoly.zero(dims), LPoly.one(dims)
        return cls(tuple(tuple(o if i == j else z for j in range(size)) for i in range(size)), dims)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def __getitem__(self, ij: tuple[int, int]) -> LPoly:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> PolyVec:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[PolyVec]:
        return [self.column(j) for j in range(self.shape[1])]

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)),
            self.dims,
        )

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        return matmul(self, other)

    def dagger(self) -> PolyMatrix:
        rows, cols = self.shape
        return PolyMatrix(tuple(tuple(self.entries[i][j].dagger() for i in range(rows)) for j in range(cols)), self.dims)

    def with_column(self, j: int, col: Sequence[LPoly]) -> PolyMatrix:
        rows = []
        for i, row in enumerate(self.entries):
            r = list(row)
            r[j] = col[i]
            rows.append(tuple(r))
        return PolyMatrix(tuple(rows), self.dims)

    def to_strings(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.entries]

    def __str__(self) -> str:
        cells = self.to_strings()
        if not cells:
            return "()"
        width = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))]
        return "\n".join("  ".join(s.ljust(w) for s, w in zip(r, width)) for r in cells)


def matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    (ar, ac), (br, bc) = a.shape, b.shape
    if ac != br:
        raise ValueError(f"inner dimensions differ: {a.shape} @ {b.shape}")
    if a.dims != b.dims:
        raise ValueError("dims mismatch")
    zero = LPoly.zero(a.dims)
    out = []
    for i in range(ar):
        row = []
        for j in range(bc):
            acc = zero
            for k in range(ac):
                if a.entries[i][k] and b.entries[k][j]:
                    acc = acc + a.entries[i][k] * b.entries[k][j]
            row.append(acc)
        out.append(tuple(row))
    return PolyMatrix(tuple(out), a.dims)


def dagger_matrix(a: PolyMatrix) -> PolyMatrix:
    return a.dagger()


def translate(a: LPoly, k: Sequence[int]) -> LPoly:
    return a.translate(k)


def translate_vec(v: Sequence[LPoly], k: Sequence[int]) -> PolyVec:
    return tuple(p.translate(k) for p in v)


def vec_inner(a: Sequence[LPoly], b: Sequence[LPoly]) -> LPoly:
    """``a^dagger b`` for two polynomial vectors."""
    if len(a) != len(b):
        raise ValueError("length mismatch")
    acc = LPoly.zero(a[0].dims)
    for p, q in zip(a, b):
        if p and q:
            acc = acc + p.dagger() * q
    return acc
