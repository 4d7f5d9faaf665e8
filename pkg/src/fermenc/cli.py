"""Command line: ``fermenc search | verify | distance | catalog``.

Exit codes: 0 found / verified, 1 no solution / verification failed, 2 usage error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

from .catalog import CELLS, GOLDENS, SYSTEMS, Golden, worked_example
from .enumerator import SearchParams
from .formats import (
    HEADER,
    FormatError,
    ProblemFile,
    emit_hardware,
    emit_problem,
    emit_system,
    format_fraction,
    parse_avg,
    parse_problem,
)
from .hardware import HardwareCell, Unreachable
from .poly_f2 import PolyVec
from .search import Encoding, Inconclusive, NoSolution, branch_and_bound, describe, search_error_detecting
from .stabilizer import InvariantError, Patch
from .symplectic import PHASE_NAMES, FermionicSystem, comm_mismatches

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3
WORKED_EXAMPLE = "worked-example"


class UsageError(Exception):
    pass


# catalog objects as problem files


def golden_problem(g: Golden) -> ProblemFile:
    claims = {
        "max_weight": str(g.max_weight),
        "max_cost": str(g.max_cost),
        "avg_cost": g.avg_cost_text,
        "error_detecting": g.error_detecting,
        "qubits_per_mode": g.qubits_per_mode,
        "family": g.family,
    }
    return ProblemFile(SYSTEMS[g.system], CELLS[g.cell], {}, g.sigma, claims)


def worked_problem() -> ProblemFile:
    sys_, sigma = worked_example()
    return ProblemFile(sys_, CELLS["square2"], {}, sigma, {})


def catalog_names() -> list[str]:
    return [*SYSTEMS, *CELLS, *GOLDENS, WORKED_EXAMPLE]


def emit_catalog(name: str) -> str:
    if name in SYSTEMS:
        return "\n".join([HEADER, "", *emit_system(SYSTEMS[name])]) + "\n"
    if name in CELLS:
        return "\n".join([HEADER, "", *emit_hardware(CELLS[name])]) + "\n"
    if name in GOLDENS:
        return emit_problem(golden_problem(GOLDENS[name]))
    if name == WORKED_EXAMPLE:
        return emit_problem(worked_problem())
    raise UsageError(f"unknown catalog entry {name!r}")


def _read_problem(path: str) -> ProblemFile:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_problem(text)
    except FormatError as e:
        raise UsageError(f"{path}: {e}") from None


def load_problem(ref: str | None) -> ProblemFile:
    """A problem from a file path or a catalog golden / worked-example name."""
    if ref is None:
        return ProblemFile()
    if os.path.exists(ref):
        return _read_problem(ref)
    if ref in GOLDENS:
        return golden_problem(GOLDENS[ref])
    if ref == WORKED_EXAMPLE:
        return worked_problem()
    raise UsageError(f"{ref!r} is neither a file nor a catalog encoding")


def load_system(ref: str) -> FermionicSystem:
    if ref in SYSTEMS:
        return SYSTEMS[ref]
    if os.path.exists(ref):
        prob = _read_problem(ref)
        if prob.system is not None:
            return prob.system
        raise UsageError(f"{ref} has no [system] section")
    raise UsageError(f"unknown system {ref!r}")


def load_hardware(ref: str) -> HardwareCell:
    if ref in CELLS:
        return CELLS[ref]
    if os.path.exists(ref):
        prob = _read_problem(ref)
        if prob.hardware is not None:
            return prob.hardware
        raise UsageError(f"{ref} has no [hardware] section")
    raise UsageError(f"unknown hardware cell {ref!r}")


def _assemble(args: argparse.Namespace, need_sigma: bool) -> ProblemFile:
    prob = load_problem(args.problem)
    if args.system:
        prob.system = load_system(args.system)
    if args.hardware:
        prob.hardware = load_hardware(args.hardware)
    if prob.system is None:
        raise UsageError("no fermionic system given (problem file or --system)")
    if prob.hardware is None:
        raise UsageError("no hardware cell given (problem file or --hardware)")
    if prob.system.dims != prob.hardware.dims:
        raise UsageError("system and hardware have different lattice dimensions")
    if need_sigma:
        if prob.sigma is None:
            raise UsageError("no [sigma] section to check")
        if prob.sigma.shape != (2 * prob.hardware.n, prob.system.num_ops):
            raise UsageError(
                f"sigma is {prob.sigma.shape[0]}x{prob.sigma.shape[1]}, "
                f"expected {2 * prob.hardware.n}x{prob.system.num_ops}"
            )
    for key in ("range", "max_weight", "max_cost", "min_weight", "margin", "region"):
        value = getattr(args, key, None)
        if value is not None:
            prob.params[key] = value
    if getattr(args, "require_error_detection", False):
        prob.params["require_error_detection"] = True
    return prob


# report sections


def _col_text(col: PolyVec) -> str:
    return ", ".join(str(p) for p in col)


def _sign_text(s: int) -> str:
    return "+1" if s == 1 else "-1"


def result_lines(enc: Encoding) -> list[str]:
    sys_ = enc.system
    out = [
        f"max_weight = {enc.max_weight}",
        f"max_cost = {enc.max_cost}",
        f"avg_cost = {format_fraction(enc.avg_cost)}",
    ]
    if enc.distance is not None:
        out.append(f"error_detecting = {enc.distance.value}")
    out.append(f"margin = {enc.margin}")
    for name, w, c in zip(sys_.op_names, enc.weights, enc.costs):
        out.append(f"column {name} = weight {w}, cost {c}")
    if enc.signs:
        out.append(f"signs = {' '.join(_sign_text(s) for s in enc.signs)}")
    if enc.distance is not None:
        side = 2 * enc.region + 1
        out.append(
            f"region = {enc.region} ({side}^{sys_.dims} cells, open boundary; "
            "the generating set found on a finite patch may be incomplete)"
        )
        for sign, col in enc.stabilizers:
            out.append(f"stabilizer {_sign_text(sign)} = {_col_text(col)}")
        if enc.superselection:
            patch = Patch(sys_, enc.sigma, enc.region, enc.signs)
            for g in enc.superselection:
                out.append(f"superselection {PHASE_NAMES[g.phase]} = {_col_text(patch.majorana_to_column(g))}")
        else:
            out.append("superselection = trivial")
    return out


def _optimality(params: SearchParams, detect: bool) -> str:
    text = (
        f"minimal max column cost among encodings with columns of weight {params.min_weight}..{params.max_weight}"
        f" supported within {params.range} cell(s) of the home cell, cost bound {params.max_cost},"
        f" margin {params.margin}"
    )
    if detect:
        text += ", error detecting only"
    return text


def _stats_lines(stats, timing: bool) -> list[str]:
    out = [f"nodes = {stats.nodes}", f"candidates = {stats.candidates}"]
    if stats.rejected:
        out.append(f"rejected = {stats.rejected}")
    if timing:
        out.append(f"time = {stats.elapsed:.3f}s")
    return out


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# commands


def cmd_search(args: argparse.Namespace) -> int:
    prob = _assemble(args, need_sigma=False)
    prob.sigma = None
    prob.claims = {}
    try:
        params = prob.search_params()
    except ValueError as e:
        raise UsageError(str(e)) from None
    prob.params = {
        "range": params.range, "max_weight": params.max_weight, "max_cost": params.max_cost,
        "min_weight": params.min_weight, "margin": params.margin, "region": prob.region(),
        "clifford_dedup": params.clifford_dedup,
        "require_error_detection": bool(prob.params.get("require_error_detection", False)),
    }
    detect = bool(prob.params["require_error_detection"])
    jobs = 1 if args.single_thread else max(1, args.jobs)
    progress = None
    if args.progress:
        def progress(nodes: int, depth: int, best: int | None) -> None:
            print(f"nodes {nodes} depth {depth} incumbent {best}", file=sys.stderr)

    kw = dict(region=prob.region(), jobs=jobs, time_limit=args.time_limit, progress=progress)
    try:
        if detect:
            res = search_error_detecting(prob.system, prob.hardware, params, **kw)
        else:
            res = branch_and_bound(prob.system, prob.hardware, params, **kw)
    except Unreachable as e:
        raise UsageError(str(e)) from None
    if isinstance(res, Encoding):
        prob.sigma = res.sigma
        prob.result = ["status = found", *result_lines(res), f"optimality = {_optimality(res.params, detect)}"]
        prob.result += _stats_lines(res.stats, args.timing)
        code = EXIT_OK
    elif isinstance(res, NoSolution):
        prob.result = [
            "status = no-solution",
            f"certificate = search tree exhausted after {res.stats.nodes} nodes",
            f"optimality = no encoding exists in the class: {_optimality(res.params, detect)}",
            *_stats_lines(res.stats, args.timing),
        ]
        code = EXIT_FAIL
    else:
        assert isinstance(res, Inconclusive)
        prob.result = ["status = inconclusive (time limit reached; best is not proven optimal)"]
        if res.best is not None:
            prob.sigma = res.best.sigma
            prob.result += result_lines(res.best)
        prob.result += _stats_lines(res.stats, args.timing)
        code = EXIT_FAIL
    print(f"search: {prob.result[0].split('= ', 1)[1]} in {res.stats.elapsed:.2f}s", file=sys.stderr)
    _write(emit_problem(prob), args.output)
    return code


def _claims(prob: ProblemFile) -> list[tuple[str, str, str]]:
    """``(source, key, value)`` for every checkable claim in [claims] and [result]."""
    keys = ("max_weight", "max_cost", "avg_cost", "error_detecting")
    out = [("claims", k, v) for k, v in prob.claims.items() if k in keys]
    for line in prob.result:
        k, sep, v = line.partition("=")
        if sep and k.strip() in keys:
            out.append(("result", k.strip(), v.strip()))
    return out


def _avg_ok(claim: str, avg: Fraction, j: int) -> bool:
    want = parse_avg(claim)
    if isinstance(want, Fraction):
        return want == avg
    value, digits = want
    return avg == Fraction(round(value * j), j) and round(float(avg), digits) == value


def cmd_verify(args: argparse.Namespace) -> int:
    prob = _assemble(args, need_sigma=True)
    sys_, cell, sigma = prob.system, prob.hardware, prob.sigma
    lines: list[str] = []
    ok = True
    bad = comm_mismatches(sys_, sigma)
    if bad:
        ok = False
        lines.append(f"commutation: FAIL ({len(bad)} violated coefficients)")
        for i, j, k in bad:
            lines.append(f"  violated (i, j, k) = ({sys_.op_names[i]}, {sys_.op_names[j]}, {k})")
    else:
        lines.append("commutation: pass")
    enc = None
    if ok:
        try:
            enc = describe(sys_, cell, sigma, int(prob.params.get("margin", 2)), prob.region(), analyse=True)
        except Unreachable as e:
            ok = False
            lines.append(f"cost: FAIL ({e})")
    if enc is not None:
        lines += result_lines(enc)
        actual = {
            "max_weight": str(enc.max_weight),
            "max_cost": str(enc.max_cost),
            "error_detecting": enc.distance.value if enc.distance else "",
        }
        for source, key, value in _claims(prob):
            if key == "avg_cost":
                good = _avg_ok(value, enc.avg_cost, sys_.num_ops)
                got = format_fraction(enc.avg_cost)
            else:
                got = actual[key]
                good = value == got
            ok &= good
            lines.append(f"claim {source}.{key} = {value}: {'pass' if good else 'FAIL (got ' + got + ')'}")
    lines.append("PASS" if ok else "FAIL")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_distance(args: argparse.Namespace) -> int:
    prob = _assemble(args, need_sigma=True)
    bad = comm_mismatches(prob.system, prob.sigma)
    if bad:
        print(f"sigma violates {len(bad)} commutation coefficients; run verify for details", file=sys.stderr)
        return EXIT_FAIL
    enc = describe(prob.system, prob.hardware, prob.sigma, int(prob.params.get("margin", 2)), prob.region())
    lines = [f"error_detecting = {enc.distance.value}"]
    lines += [l for l in result_lines(enc) if l.startswith(("signs", "region", "stabilizer", "superselection"))]
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.action == "list":
        lines = [f"systems ({len(SYSTEMS)}):"]
        for name, s in SYSTEMS.items():
            lines.append(f"  {name}  modes={s.modes} ops={s.num_ops}")
        lines.append(f"cells ({len(CELLS)}):")
        for name, c in CELLS.items():
            lines.append(f"  {name}  qubits={c.n} edges={len(c.edges)}")
        lines.append(f"goldens ({len(GOLDENS)}):")
        for name, g in GOLDENS.items():
            lines.append(
                f"  {name}  max_weight={g.max_weight} max_cost={g.max_cost} avg={g.avg_cost_text}"
                f" detecting={g.error_detecting}"
            )
        lines.append(f"other: {WORKED_EXAMPLE}")
        _write("\n".join(lines) + "\n", args.output)
        return EXIT_OK
    if not args.name:
        raise UsageError("catalog emit needs a name")
    _write(emit_catalog(args.name), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fermenc", description="Search and check translation invariant fermion-to-qubit encodings.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("problem", nargs="?", help="problem file, or a catalog encoding name")
        sp.add_argument("--system", help="catalog system name or file with a [system] section")
        sp.add_argument("--hardware", help="catalog cell name or file with a [hardware] section")
        sp.add_argument("--margin", type=int, help="extra cells around a support when pricing (default 2)")
        sp.add_argument("--region", type=int, help="patch radius for stabilizer extraction (default 1, i.e. 3x3)")
        sp.add_argument("--output", help="write the report here instead of stdout")

    s = sub.add_parser("search", help="find a minimum cost encoding")
    common(s)
    s.add_argument("--range", type=int, help="column support radius in cells (default 1)")
    s.add_argument("--max-weight", type=int, dest="max_weight", help="default 3")
    s.add_argument("--max-cost", type=int, dest="max_cost", help="default 2")
    s.add_argument("--min-weight", type=int, dest="min_weight", help="default 1")
    s.add_argument("--require-error-detection", action="store_true", dest="require_error_detection")
    s.add_argument("--single-thread", action="store_true", dest="single_thread")
    s.add_argument("--jobs", type=int, default=1, help="worker processes for the search (default 1)")
    s.add_argument("--time-limit", type=float, dest="time_limit", help="seconds before giving up")
    s.add_argument("--progress", action="store_true", help="print search progress to stderr")
    s.add_argument("--timing", action="store_true", help="include wall time in the report")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="check a sigma against its system and any claims")
    common(v)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("distance", help="stabilizers and the distance-2 check for a sigma")
    common(d)
    d.set_defaults(func=cmd_distance)

    c = sub.add_parser("catalog", help="list or emit built-in systems, cells and encodings")
    c.add_argument("action", choices=("list", "emit"))
    c.add_argument("name", nargs="?")
    c.add_argument("--output")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"fermenc: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as e:
        print(f"fermenc: internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
