"""The ``fermenc/1`` line-oriented problem and report format.

::

    fermenc/1
    [system]
    name = square1
    dims = 2
    modes = 1
    op Ey -i = 1+y, 0
    [hardware]
    name = square2
    qubits = 2
    edge = 0 1 -1,0
    [params]
    range = 1
    [sigma]
    col Ey = y, 0, 1, 1
    [claims]
    max_cost = 2

Blank lines and ``#`` comments are ignored. Polynomial entries of a column are
comma separated, rows in the usual order (gamma then gammabar; X then Z).
Unknown sections are kept verbatim so reports round-trip.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .enumerator import SearchParams
from .hardware import HardwareCell
from .poly_f2 import LPoly, PolyMatrix, PolySyntaxError, parse_poly
from .symplectic import PHASE_NAMES, FermionicSystem, parse_phase

HEADER = "fermenc/1"
SECTIONS = ("system", "hardware", "params", "sigma", "claims", "result")

PARAM_KEYS = {
    "range": int,
    "max_weight": int,
    "max_cost": int,
    "min_weight": int,
    "margin": int,
    "region": int,
    "clifford_dedup": bool,
    "require_error_detection": bool,
}


class FormatError(ValueError):
    """Malformed problem text; ``line`` is 1-based."""

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class ProblemFile:
    system: FermionicSystem | None = None
    hardware: HardwareCell | None = None
    params: dict[str, int | bool] = field(default_factory=dict)
    sigma: PolyMatrix | None = None
    claims: dict[str, str] = field(default_factory=dict)
    result: list[str] = field(default_factory=list)
    dims: int = 2

    def search_params(self, **overrides: int | bool | None) -> SearchParams:
        merged = {**self.params, **{k: v for k, v in overrides.items() if v is not None}}
        keys = ("range", "max_weight", "max_cost", "min_weight", "margin", "clifford_dedup")
        return SearchParams(**{k: merged[k] for k in keys if k in merged})

    def region(self, default: int = 1) -> int:
        return int(self.params.get("region", default))


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "1", "on"):
        return True
    if t in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"expected true/false, got {text!r}")


def _split_kv(line: str, lineno: int) -> tuple[str, str]:
    if "=" not in line:
        raise FormatError("expected 'key = value'", lineno)
    key, value = line.split("=", 1)
    return key.strip(), value.strip()


def _parse_entries(text: str, dims: int, lineno: int, offset: int) -> list[LPoly]:
    out = []
    pos = 0
    for part in text.split(","):
        try:
            out.append(parse_poly(part, dims))
        except PolySyntaxError as e:
            raise FormatError(str(e), lineno, offset + pos + e.pos + 1) from None
        pos += len(part) + 1
    return out


def parse_problem(text: str) -> ProblemFile:
    """Parse ``fermenc/1`` text; every error carries its line (and column where known)."""
    lines = text.splitlines()
    first = next((i for i, l in enumerate(lines) if l.strip() and not l.strip().startswith("#")), None)
    if first is None or lines[first].strip() != HEADER:
        raise FormatError(f"missing '{HEADER}' header", (first or 0) + 1)
    prob = ProblemFile()
    section = None
    sysdata: dict[str, str] = {}
    ops: list[tuple[str, int, str, int, int]] = []
    hw: dict[str, str] = {}
    edges: list[tuple[int, int, tuple[int, ...]]] = []
    cols: list[tuple[str, str, int, int]] = []
    for idx in range(first + 1, len(lines)):
        lineno = idx + 1
        raw = lines[idx]
        line = raw.split("#", 1)[0].strip()
        if section == "result":
            if raw.strip().startswith("[") and raw.strip().endswith("]"):
                pass
            else:
                if raw.strip():
                    prob.result.append(raw.rstrip())
                continue
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in SECTIONS:
                raise FormatError(f"unknown section [{section}]", lineno)
            continue
        if section is None:
            raise FormatError("content before the first section", lineno)
        if section == "system":
            if line.startswith("op ") or line.startswith("op\t"):
                head, _, body = line.partition("=")
                parts = head.split()
                if len(parts) != 3 or not body.strip():
                    raise FormatError("expected 'op <name> <phase> = p0, p1, ...'", lineno)
                try:
                    phase = parse_phase(parts[2])
                except ValueError as e:
                    raise FormatError(str(e), lineno) from None
                ops.append((parts[1], phase, body, lineno, raw.index("=") + 2))
            else:
                k, v = _split_kv(line, lineno)
                sysdata[k] = v
        elif section == "hardware":
            k, v = _split_kv(line, lineno)
            if k == "edge":
                parts = v.split()
                try:
                    q1, q2 = int(parts[0]), int(parts[1])
                    off = tuple(int(a) for a in parts[2].split(","))
                    if len(parts) != 3:
                        raise ValueError
                except (ValueError, IndexError):
                    raise FormatError("expected 'edge = q1 q2 dx,dy'", lineno) from None
                edges.append((q1, q2, off))
            else:
                hw[k] = v
        elif section == "params":
            k, v = _split_kv(line, lineno)
            if k not in PARAM_KEYS:
                raise FormatError(f"unknown parameter {k!r}", lineno)
            try:
                prob.params[k] = _parse_bool(v) if PARAM_KEYS[k] is bool else int(v)
            except ValueError as e:
                raise FormatError(str(e), lineno) from None
        elif section == "sigma":
            head, _, body = line.partition("=")
            parts = head.split()
            if len(parts) != 2 or parts[0] != "col" or not body.strip():
                raise FormatError("expected 'col <name> = p0, p1, ...'", lineno)
            cols.append((parts[1], body, lineno, raw.index("=") + 2))
        elif section == "claims":
            k, v = _split_kv(line, lineno)
            prob.claims[k] = v
    try:
        dims = int(sysdata.get("dims", hw.get("dims", "2")))
    except ValueError:
        raise FormatError("dims must be an integer", 1) from None
    prob.dims = dims
    if sysdata or ops:
        prob.system = _build_system(sysdata, ops, dims)
    if hw or edges:
        try:
            n = int(hw["qubits"])
            prob.hardware = HardwareCell.build(n, edges, dims, hw.get("name", ""))
        except KeyError:
            raise FormatError("[hardware] needs 'qubits'", 1) from None
        except ValueError as e:
            raise FormatError(str(e), 1) from None
    if cols:
        prob.sigma = _build_sigma(cols, prob, dims)
    return prob


def _build_system(sysdata: dict[str, str], ops, dims: int) -> FermionicSystem:
    if "modes" not in sysdata:
        raise FormatError("[system] needs 'modes'", 1)
    try:
        modes = int(sysdata["modes"])
    except ValueError:
        raise FormatError("modes must be an integer", 1) from None
    if not ops:
        raise FormatError("[system] has no 'op' lines", 1)
    columns = []
    for name, _, body, lineno, col in ops:
        entries = _parse_entries(body, dims, lineno, col - 1)
        if len(entries) != 2 * modes:
            raise FormatError(f"operator {name} has {len(entries)} entries, expected {2 * modes}", lineno)
        columns.append(entries)
    tau = PolyMatrix.from_columns(columns, dims, 2 * modes)
    try:
        return FermionicSystem(modes, tau, tuple(o[0] for o in ops), tuple(o[1] for o in ops), sysdata.get("name", ""))
    except ValueError as e:
        raise FormatError(str(e), ops[0][3]) from None


def _build_sigma(cols, prob: ProblemFile, dims: int) -> PolyMatrix:
    columns = []
    names = []
    for name, body, lineno, col in cols:
        entries = _parse_entries(body, dims, lineno, col - 1)
        if prob.hardware is not None and len(entries) != 2 * prob.hardware.n:
            raise FormatError(f"column {name} has {len(entries)} entries, expected {2 * prob.hardware.n}", lineno)
        if columns and len(entries) != len(columns[0]):
            raise FormatError(f"column {name} has a different length from the first column", lineno)
        columns.append(entries)
        names.append((name, lineno))
    if prob.system is not None:
        expected = list(prob.system.op_names)
        got = [n for n, _ in names]
        if got != expected:
            raise FormatError(f"[sigma] columns {got} do not match system operators {expected}", names[0][1])
    return PolyMatrix.from_columns(columns, dims, len(columns[0]))


def _poly_list(col: Sequence[LPoly]) -> str:
    return ", ".join(str(p) for p in col)


def emit_system(sys: FermionicSystem) -> list[str]:
    out = ["[system]"]
    if sys.name:
        out.append(f"name = {sys.name}")
    out += [f"dims = {sys.dims}", f"modes = {sys.modes}"]
    for j, name in enumerate(sys.op_names):
        out.append(f"op {name} {PHASE_NAMES[sys.op_phases[j]]} = {_poly_list(sys.tau.column(j))}")
    return out


def emit_hardware(cell: HardwareCell) -> list[str]:
    out = ["[hardware]"]
    if cell.name:
        out.append(f"name = {cell.name}")
    out += [f"dims = {cell.dims}", f"qubits = {cell.n}"]
    for q1, q2, off in cell.sorted_edges():
        out.append(f"edge = {q1} {q2} {','.join(str(a) for a in off)}")
    return out


def emit_params(params: dict[str, int | bool]) -> list[str]:
    out = ["[params]"]
    for k in PARAM_KEYS:
        if k in params:
            v = params[k]
            out.append(f"{k} = {str(v).lower() if isinstance(v, bool) else v}")
    return out


def emit_sigma(sigma: PolyMatrix, names: Sequence[str]) -> list[str]:
    return ["[sigma]"] + [f"col {name} = {_poly_list(sigma.column(j))}" for j, name in enumerate(names)]


def emit_problem(prob: ProblemFile) -> str:
    out = [HEADER]
    if prob.system is not None:
        out += [""] + emit_system(prob.system)
    if prob.hardware is not None:
        out += [""] + emit_hardware(prob.hardware)
    if prob.params:
        out += [""] + emit_params(prob.params)
    if prob.sigma is not None:
        names = prob.system.op_names if prob.system is not None else [f"c{j}" for j in range(prob.sigma.shape[1])]
        out += [""] + emit_sigma(prob.sigma, names)
    if prob.claims:
        out += ["", "[claims]"] + [f"{k} = {v}" for k, v in prob.claims.items()]
    if prob.result:
        out += ["", "[result]"] + list(prob.result)
    return "\n".join(out) + "\n"


def format_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator} ({float(x):.2f})"


def parse_avg(text: str) -> Fraction | tuple[float, int]:
    """``"5/3"`` or ``"5/3 (1.67)"`` is exact; a bare decimal is returned with its number of digits."""
    t = text.split("(")[0].strip()
    if "/" in t:
        return Fraction(t)
    if "." in t:
        return (float(t), len(t.split(".")[1]))
    return Fraction(int(t))
