"""Built-in fermionic systems, hardware unit cells and reference encodings.

All systems and cells are two-dimensional. Offsets in edge lists give the cell
of the second qubit relative to the first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hardware import HardwareCell
from .poly_f2 import PolyMatrix
from .symplectic import FermionicSystem

MINUS_I = 3
MINUS_ONE = 2


def _system(name: str, modes: int, rows: list[tuple[str, ...]], names: list[str], phases: list[int] | None = None) -> FermionicSystem:
    tau = PolyMatrix.from_strings(rows, 2)
    if phases is None:
        phases = [MINUS_I] * len(names)
    return FermionicSystem(modes, tau, tuple(names), tuple(phases), name)


def _systems() -> dict[str, FermionicSystem]:
    out = [
        _system("square1", 1, [("1+y", "1+x", "1"), ("0", "0", "1")], ["Ey", "Ex", "V"]),
        _system(
            "square1-np", 1,
            [("y", "1", "x", "1", "1"), ("1", "y", "1", "x", "1")],
            ["Hy0", "Hy1", "Hx0", "Hx1", "V"],
        ),
        _system("triang1", 1, [("1+xy", "1+y", "1+x", "1"), ("0", "0", "0", "1")], ["Exy", "Ey", "Ex", "V"]),
        _system(
            "spinful-sq2", 2,
            [
                ("0", "0", "0", "1+y", "1+x", "1"),
                ("1+y", "1+x", "1", "0", "0", "0"),
                ("0", "0", "0", "0", "0", "1"),
                ("0", "0", "1", "0", "0", "0"),
            ],
            ["E1y", "E1x", "V1", "E0y", "E0x", "V0"],
        ),
        _system(
            "hex2-fermi", 2,
            [("y", "x", "1", "0", "1"), ("1", "1", "1", "1", "0"), ("0", "0", "0", "0", "1"), ("0", "0", "0", "1", "0")],
            ["Ey", "Ex", "E01", "V1", "V0"],
        ),
        _system(
            "tilted-sq2-fermi", 2,
            [
                ("1", "x", "1", "1", "0", "1"),
                ("x^-1y", "1", "y", "1", "1", "0"),
                ("0", "0", "0", "0", "0", "1"),
                ("0", "0", "0", "0", "1", "0"),
            ],
            ["E0", "E1", "E2", "E3", "V1", "V0"],
        ),
        _system(
            "kagome3-fermi", 3,
            [
                ("0", "0", "xy", "1", "y", "1", "0", "0", "1"),
                ("x", "1", "0", "0", "1", "1", "0", "1", "0"),
                ("1", "1", "1", "1", "0", "0", "1", "0", "0"),
                ("0", "0", "0", "0", "0", "0", "0", "0", "1"),
                ("0", "0", "0", "0", "0", "0", "0", "1", "0"),
                ("0", "0", "0", "0", "0", "0", "1", "0", "0"),
            ],
            ["E0", "E1", "E2", "E3", "E4", "E5", "V2", "V1", "V0"],
        ),
        _system(
            "kagome-alt3-fermi", 3,
            [
                ("1", "x", "0", "0", "x", "1", "0", "0", "1"),
                ("0", "0", "1", "1", "1", "1", "0", "1", "0"),
                ("y^-1", "1", "y^-1", "1", "0", "0", "1", "0", "0"),
                ("0", "0", "0", "0", "0", "0", "0", "0", "1"),
                ("0", "0", "0", "0", "0", "0", "0", "1", "0"),
                ("0", "0", "0", "0", "0", "0", "1", "0", "0"),
            ],
            ["E0", "E1", "E2", "E3", "E4", "E5", "V2", "V1", "V0"],
        ),
        _system(
            "hubbard-sq", 2,
            [
                ("1", "x", "1", "y", "1", "0", "0", "0", "0"),
                ("1", "0", "0", "0", "0", "x", "1", "y", "1"),
                ("1", "1", "x", "1", "y", "0", "0", "0", "0"),
                ("1", "0", "0", "0", "0", "1", "x", "1", "y"),
            ],
            ["U", "Hux0", "Hux1", "Huy0", "Huy1", "Hdx0", "Hdx1", "Hdy0", "Hdy1"],
            [MINUS_ONE] + [MINUS_I] * 8,
        ),
    ]
    return {s.name: s for s in out}


def _cells() -> dict[str, HardwareCell]:
    specs: list[tuple[str, int, list[tuple[int, int, tuple[int, int]]]]] = [
        ("square2", 2, [(0, 0, (0, -1)), (0, 1, (-1, 0)), (0, 1, (0, 0)), (1, 1, (0, -1))]),
        ("tilted-sq2", 2, [(0, 1, (-1, 0)), (0, 1, (-1, 1)), (0, 1, (0, 0)), (0, 1, (0, 1))]),
        ("sq-bilayer2", 2, [(0, 0, (1, 0)), (0, 0, (0, 1)), (1, 1, (1, 0)), (1, 1, (0, 1)), (0, 1, (0, 0))]),
        ("hex2", 2, [(0, 1, (-1, 0)), (0, 1, (0, -1)), (0, 1, (0, 0))]),
        (
            "triang2", 2,
            [(0, 0, (0, -1)), (0, 1, (-1, 0)), (0, 1, (0, 0)), (1, 1, (0, -1)), (0, 1, (-1, -1)), (0, 1, (0, 1))],
        ),
        ("lieb3", 3, [(0, 1, (0, 0)), (0, 1, (0, 1)), (1, 2, (-1, 0)), (1, 2, (0, 0))]),
        ("kagome3", 3, [(0, 1, (-1, -1)), (0, 1, (0, 0)), (0, 2, (0, -1)), (0, 2, (0, 0)), (1, 2, (0, 0)), (1, 2, (1, 0))]),
        (
            "rhombile3", 3,
            [(0, 2, (0, -1)), (0, 2, (0, 0)), (0, 2, (1, -1)), (1, 2, (0, 0)), (1, 2, (1, -1)), (1, 2, (1, 0))],
        ),
        ("trunc-sq4", 4, [(0, 1, (0, 0)), (0, 2, (0, 0)), (0, 3, (0, -1)), (1, 2, (1, 0)), (1, 3, (0, 0)), (2, 3, (0, 0))]),
        (
            "hex-bilayer4", 4,
            [
                (0, 1, (-1, 0)), (0, 1, (0, 0)), (0, 1, (0, -1)), (0, 2, (0, 0)),
                (1, 3, (0, 0)), (2, 3, (-1, 0)), (2, 3, (0, 0)), (2, 3, (0, -1)),
            ],
        ),
        (
            "sq-bilayer4", 4,
            [
                (0, 0, (0, -1)), (0, 1, (-1, 0)), (0, 1, (0, 0)), (0, 2, (0, 0)), (1, 1, (0, -1)),
                (1, 3, (0, 0)), (2, 2, (0, -1)), (2, 3, (-1, 0)), (2, 3, (0, 0)), (3, 3, (0, -1)),
            ],
        ),
        (
            "snub-sq4", 4,
            [
                (0, 1, (-1, 0)), (0, 1, (0, 0)), (0, 2, (0, -1)), (0, 2, (0, 0)), (0, 3, (0, -1)),
                (1, 2, (1, 0)), (1, 3, (0, -1)), (1, 3, (0, 0)), (2, 3, (-1, 0)), (2, 3, (0, 0)),
            ],
        ),
        ("heavy-hex5", 5, [(0, 1, (0, 0)), (0, 3, (-1, 0)), (1, 2, (0, 0)), (1, 4, (0, -1)), (2, 3, (0, 0)), (3, 4, (0, 0))]),
    ]
    return {name: HardwareCell.build(n, edges, 2, name) for name, n, edges in specs}


SYSTEMS = _systems()
CELLS = _cells()


@dataclass(frozen=True)
class Golden:
    """A reference encoding with the properties it is expected to have."""

    system: str
    cell: str
    sigma: PolyMatrix
    stabilizers: tuple[tuple[str, ...], ...]
    qubits_per_mode: str
    max_weight: int
    max_cost: int
    avg_cost_text: str
    error_detecting: str
    family: str

    @property
    def name(self) -> str:
        return f"{self.system}-on-{self.cell}"

    def avg_cost_matches(self, avg: Fraction) -> bool:
        """The listed average is rounded; accept the unique fraction with J as denominator that rounds to it."""
        j = self.sigma.shape[1]
        return avg == Fraction(round(float(self.avg_cost_text) * j), j)


def _golden(system, cell, sigma_rows, stabs, qpm, maxw, maxc, avg, ed, family) -> Golden:
    return Golden(
        system, cell, PolyMatrix.from_strings(sigma_rows, 2), tuple(stabs), qpm, maxw, maxc, avg, ed, family
    )


_GOLDEN_LIST = [
    _golden('square1', 'square2',
            [('y', 'x', '0'), ('0', '1', '1'), ('1', '1+x', '1'), ('1', '0', '1')],
            [('x+y', '1+y', 'y+xy', '1+x')],
            '2', 3, 2, '1.67', 'Yes', 'GSE family'),
    _golden('square1', 'hex2',
            [('y', 'x', '0'), ('0', '1', '1'), ('1', '1+x', '1'), ('1', '0', '1')],
            [('x+y', '1+y', 'y+xy', '1+x')],
            '2', 3, 2, '1.67', 'Yes', 'GSE family'),
    _golden('square1', 'tilted-sq2',
            [('0', 'x', '1'), ('y', '1', '0'), ('1', '0', '1'), ('1', '1+x', '1')],
            [('x+y', '1+y', '1+x', 'y+xy')],
            '2', 3, 2, '1.67', 'Yes', 'GSE family'),
    _golden('square1', 'triang2',
            [('y', 'x', '0'), ('0', '1', '1'), ('1', '1+x', '1'), ('1', '0', '1')],
            [('x+y', '1+y', 'y+xy', '1+x')],
            '2', 3, 2, '1.67', 'Yes', 'GSE family'),
    _golden('square1', 'sq-bilayer2',
            [('y', 'x', '0'), ('0', '1', '1'), ('1', '1+x', '1'), ('1', '0', '1')],
            [('x+y', '1+y', 'y+xy', '1+x')],
            '2', 3, 2, '1.67', 'Yes', 'GSE family'),
    _golden('square1', 'rhombile3',
            [('y', '1+x', '0'), ('0', '0', '0'), ('0', 'xy^-1', '1'), ('1', '1', '1'), ('0', '0', '0'), ('1', '0', '0')],
            [('1+x', '0', 'x+xy^-1', 'x+y', '0', '1+x')],
            '2*', 3, 2, '1.67', 'Yes*', 'New here'),
    _golden('square1', 'hex-bilayer4',
            [('y', 'x', '0'), ('0', '1', '1'), ('0', '0', '0'), ('0', '0', '0'), ('1', '1+x', '1'), ('1', '0', '1'), ('0', '0', '0'), ('0', '0', '0')],
            [('x+y', '1+y', '0', '0', 'y+xy', '1+x', '0', '0')],
            '2*', 3, 2, '1.67', 'Yes*', 'GSE family'),
    _golden('square1', 'sq-bilayer4',
            [('y', 'x', '0'), ('0', '1', '1'), ('0', '0', '0'), ('0', '0', '0'), ('1', '1+x', '1'), ('1', '0', '1'), ('0', '0', '0'), ('0', '0', '0')],
            [('x+y', '1+y', '0', '0', 'y+xy', '1+x', '0', '0')],
            '2*', 3, 2, '1.67', 'Yes*', 'GSE family'),
    _golden('square1-np', 'sq-bilayer2',
            [('0', '1+y', 'x', '1', '1'), ('0', '0', '1+x', '1+x', '0'), ('1+y', '0', 'x', '1', '1'), ('1', 'y', '0', '1+x', '1')],
            [('y+xy', '1+x+y+xy', '1+x', '1+y')],
            '2', 3, 2, '1.8', 'Yes', 'GSE family'),
    _golden('triang1', 'tilted-sq2',
            [('xy', 'y', '1+x', '1'), ('0', 'y', '1', '0'), ('1', '1+y', '1', '1'), ('y', '0', '1', '1')],
            [('1+x', '1+xy', 'x+xy', '1+y')],
            '2', 3, 2, '1.75', 'Yes', 'New here*'),
    _golden('triang1', 'triang2',
            [('xy', '1+y', 'x', '0'), ('0', 'x^-1', '1', '1'), ('1', '1', '1+x', '1'), ('1', '0', '1', '0')],
            [('1+y^-1', '1+x^-1y^-1', '1+x', '1+y^-1')],
            '2', 3, 2, '1.75', 'Yes', 'New here'),
    _golden('spinful-sq2', 'hex-bilayer4',
            [('y', 'x', '0', '0', '0', '0'), ('0', '1', '1', '0', '0', '0'), ('0', '0', '0', 'y', 'x', '0'), ('0', '0', '0', '0', '1', '1'), ('1', '1+x', '1', '0', '0', '0'), ('1', '0', '1', '0', '0', '0'), ('0', '0', '0', '1', '1+x', '1'), ('0', '0', '0', '1', '0', '1')],
            [('0', '0', 'x+y', '1+y', '0', '0', 'x+xy', '1+x'), ('x+y', '1+y', '0', '0', 'x+xy', '1+x', '0', '0')],
            '2', 3, 2, '1.67', 'Yes', 'GSE family'),
    _golden('spinful-sq2', 'sq-bilayer4',
            [('y', 'x', '0', '0', '0', '0'), ('0', '1', '1', '0', '0', '0'), ('0', '0', '0', 'y', 'x', '0'), ('0', '0', '0', '0', '1', '1'), ('1', '1+x', '1', '0', '0', '0'), ('1', '0', '1', '0', '0', '0'), ('0', '0', '0', '1', '1+x', '1'), ('0', '0', '0', '1', '0', '1')],
            [('0', '0', 'x+y', '1+y', '0', '0', 'x+xy', '1+x'), ('x+y', '1+y', '0', '0', 'x+xy', '1+x', '0', '0')],
            '2', 3, 2, '1.67', 'Yes', 'GSE family'),
    _golden('hex2-fermi', 'lieb3',
            [('0', 'xy^-1', 'y^-1', '0', 'y^-1'), ('0', '0', '0', '1', '1'), ('0', '1', '1', '1', '0'), ('1', '0', 'y^-1', '0', 'y^-1'), ('0', '0', '1', '0', '0'), ('1', '0', '1', '1', '0')],
            [('1+x', '0', '1+x', 'x+xy^-1', 'x+y', '1+y')],
            '1.5', 3, 2, '1.6', 'No', 'New here'),
    _golden('hex2-fermi', 'kagome3',
            [('0', '1', '1', '1', '0'), ('0', 'y^-1', 'x^-1y^-1', '0', 'x^-1y^-1'), ('0', '0', '0', '1', '1'), ('1', '0', '1', '1', '0'), ('x^-1', '0', 'x^-1y^-1', '0', 'x^-1y^-1'), ('0', '0', '1', '0', '0')],
            [('1+x', '1+x^-1', '0', '1+y', '1+y^-1', 'x+y')],
            '1.5', 3, 2, '1.8', 'No', 'New here'),
    _golden('hex2-fermi', 'rhombile3',
            [('0', '1', '1', '1', '0'), ('0', '0', '0', 'y^-1', 'y^-1'), ('0', 'xy^-1', 'y^-1', '0', 'y^-1'), ('1', '0', '1', '0', '1'), ('0', 'y^-1', '0', '0', 'y^-1'), ('1', '0', 'y^-1', '0', 'y^-1')],
            [('1+x', '0', '1+x', '1+y', '1+y^-1', 'x+xy^-1')],
            '1.5', 3, 2, '1.6', 'No', 'New here'),
    _golden('hex2-fermi', 'trunc-sq4',
            [('0', 'x', '1', '0', '1'), ('0', '1', '1', '1', '0'), ('0', '0', '0', '1', '1'), ('0', '0', '0', '0', '0'), ('y', '0', '1', '0', '1'), ('1', '0', '1', '1', '0'), ('0', '0', '1', '0', '0'), ('0', '0', '0', '0', '0')],
            [('y+xy', '1+x', '0', '0', 'x+xy', '1+y', 'x+y', '0')],
            '1.5*', 3, 2, '1.8', 'No', 'New here'),
    _golden('hex2-fermi', 'hex-bilayer4',
            [('0', 'x', '1', '0', '1'), ('0', '1', '1', '1', '0'), ('0', '0', '0', '1', '1'), ('0', '0', '0', '0', '0'), ('y', '0', '1', '0', '1'), ('1', '0', '1', '1', '0'), ('0', '0', '1', '0', '0'), ('0', '0', '0', '0', '0')],
            [('y+xy', '1+x', '0', '0', 'x+xy', '1+y', 'x+y', '0')],
            '1.5*', 3, 2, '1.4', 'No', 'New here'),
    _golden('hex2-fermi', 'sq-bilayer4',
            [('0', '1', '1', '1', '0'), ('0', '1', 'x^-1', '0', 'x^-1'), ('0', '0', '0', '1', '1'), ('0', '0', '0', '0', '0'), ('1', '0', '1', '1', '0'), ('x^-1y', '0', 'x^-1', '0', 'x^-1'), ('0', '0', '1', '0', '0'), ('0', '0', '0', '0', '0')],
            [('1+x', 'y+x^-1y', '0', '0', '1+y', '1+y', 'x+y', '0')],
            '1.5*', 3, 2, '1.6', 'No', 'New here'),
    _golden('hex2-fermi', 'snub-sq4',
            [('0', 'x', '1', '0', '0'), ('0', '1', '1', '0', '0'), ('0', '0', '0', '0', '0'), ('0', '0', '0', '1', 'y^-1'), ('y', '0', '1', '0', '1'), ('1', '0', '1', '1', '0'), ('0', '0', '0', '0', '0'), ('1', '0', '0', '0', '0')],
            [('y+xy', '1+x', '0', '0', 'x+xy', '1+y', '0', '1+x')],
            '1.5*', 3, 2, '1.2', 'No', 'New here'),
    _golden('hex2-fermi', 'heavy-hex5',
            [('0', '0', '0', '0', '0'), ('0', 'x', '1', '0', '1'), ('0', '0', '0', '1', '1'), ('0', '1', '1', '1', '0'), ('0', '0', '0', '0', '0'), ('0', '0', '0', '0', '0'), ('y', '0', '1', '0', '1'), ('0', '0', '1', '0', '0'), ('1', '0', '1', '1', '0'), ('0', '0', '0', '0', '0')],
            [('0', 'y+xy', '0', '1+x', '0', '0', 'x+xy', 'x+y', '1+y', '0')],
            '1.5*', 3, 2, '1.6', 'No', 'New here'),
    _golden('tilted-sq2-fermi', 'lieb3',
            [('0', 'x', '0', '1', '0', '1'), ('0', 'x', 'y', '0', '0', '0'), ('0', '0', 'y', '1', '1', '0'), ('1', '0', '1', '0', '0', '1'), ('y', '0', '0', '1', '0', '0'), ('x^-1y', '1', '0', '0', '1', '0')],
            [('1+x', 'x+y', '1+y', '1+x', '1+xy', '1+y')],
            '1.5', 3, 2, '1.33', 'No', ''),
    _golden('kagome3-fermi', 'trunc-sq4',
            [('0', '0', '0', '1', '0', '1', '1', '1', '1'), ('0', '1', '1', '1', 'x^-1', '0', '1', '0', '0'), ('0', '1', '0', '0', '0', '1', '0', '1', '0'), ('0', '0', '0', 'y^-1', '0', 'y^-1', '0', '0', 'y^-1'), ('0', '1', '0', '0', '0', '1', '1', '1', '1'), ('1', '0', '1', '0', '0', '0', '0', '0', '0'), ('x', '0', '0', '0', '1', '0', '0', '0', '1'), ('0', '0', 'x', '0', '1', '0', '0', 'y^-1', '0')],
            [('1+x', '1+x^-1y^-1', 'x+y^-1', 'y^-1+xy^-1', 'x+y^-1', '1+y^-1', 'x+y^-1', 'y^-1+xy^-1')],
            '1.33', 3, 2, '1.78', 'No', 'New here'),
    _golden('kagome-alt3-fermi', 'trunc-sq4',
            [('0', 'y', '1', 'y', '0', '1', 'y', '1', '1'), ('0', '1', '0', '0', '1', '0', '0', 'x^-1', '0'), ('0', '0', '0', '1', '1', '0', '0', '0', '1'), ('0', '0', '0', '1', '1', '0', '1', '0', '0'), ('1', '0', '1', '0', '0', '0', '0', '0', '0'), ('x^-1', '0', '0', '0', '0', 'x^-1', '0', '0', 'x^-1'), ('0', '0', '1', '0', '0', '1', '0', '1', '0'), ('0', '1', '0', '0', '1', '0', '1', '0', '0')],
            [('x+xy', '1+y', 'x+y', 'x+y', 'x+xy', '1+y', 'x+y', '1+y')],
            '1.33', 3, 2, '1.78', 'No', 'New here'),
    _golden('kagome-alt3-fermi', 'heavy-hex5',
            [('0', 'x', '0', '0', 'x', '1', '0', '0', '1'), ('0', '0', '0', '0', '0', '0', '0', '1', '1'), ('0', '0', '0', '1', '1', '1', '0', '1', '0'), ('0', '0', '0', '1', '1', '0', '1', '0', '0'), ('0', '1', 'y^-1', '1', '0', '0', '1', '0', '0'), ('1', '0', '0', '0', '0', '1', '0', '0', '1'), ('0', '0', '0', '0', '0', '1', '0', '0', '0'), ('0', '0', '1', '0', '0', '1', '0', '1', '0'), ('0', '1', '0', '0', '1', '0', '1', '0', '0'), ('y^-1', '0', 'y^-1', '0', '0', '0', '0', '0', '0')],
            [('1', '0', '1', '0', 'y^-1', '0', '1', '0', '0', '0'), ('xy', '0', 'y', 'x+y', 'x', 'x+xy', 'x', 'x+y', '1+y', '1+x')],
            '1.67', 3, 2, '1.67', 'No', 'New here'),
]

GOLDENS = {g.name: g for g in _GOLDEN_LIST}


def worked_example() -> tuple[FermionicSystem, PolyMatrix]:
    """Square lattice, one mode per cell, vertex plus x and y edges, on two qubits per cell."""
    sys = _system("square1-vxy", 1, [("1", "1+x", "1+y"), ("1", "0", "0")], ["V1", "E1x", "E1y"])
    sigma = PolyMatrix.from_strings([("0", "x", "y"), ("0", "1", "1"), ("1", "1", "1+y"), ("1", "1", "0")], 2)
    return sys, sigma
