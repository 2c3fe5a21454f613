"""Command-line interface: ``diho <command> ...``.

Exit codes: 0 success, 1 validation or self-check failure, 2 bad flags or
input, 3 truncation overflow.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Sequence

from .dihomology import DimensionMatrix, QuotientMode, class_equal, ha1, multiply_classes
from .exactalg import AlgebraError, Element, TruncationError
from .precubical import BUILDERS, PrecubicalError, PrecubicalSet, enumerate_paths, validate
from .simplicial import disjoint_union_les_report
from .tracealg import PathAlgebra, r0_algebra, two_path_algebra


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------------
# output


def emit(obj, fmt: str) -> str:
    """Render a dimension matrix or a report as ``json`` or ``pretty`` text."""
    if fmt not in ("json", "pretty"):
        raise UsageError(f"unknown format {fmt!r}")
    if isinstance(obj, DimensionMatrix):
        return obj.to_json() if fmt == "json" else obj.pretty()
    if hasattr(obj, "to_dict"):
        obj = obj.to_dict()
    if fmt == "json":
        return json.dumps(obj, sort_keys=True) + "\n"
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load(target: str) -> PrecubicalSet:
    if os.path.exists(target):
        try:
            return PrecubicalSet.load(target)
        except OSError as exc:
            raise UsageError(str(exc)) from None
    if target in BUILDERS:
        return BUILDERS[target]()
    raise UsageError(f"{target!r} is neither a file nor a built-in complex ({', '.join(sorted(BUILDERS))})")


def _checked(target: str) -> PrecubicalSet:
    C = _load(target)
    bad = validate(C)
    if bad:
        raise PrecubicalError("invalid precubical set: " + "; ".join(map(str, bad[:5])))
    return C


def _parse_path(C: PrecubicalSet, text: str) -> tuple:
    """``a,c`` or ``ac`` (one-letter ids) or a single edge id; ``e_v`` is the constant path."""
    if text.startswith("e_") and text[2:] in C.vertices:
        return ((), text[2:])
    if "," in text:
        edges = tuple(e.strip() for e in text.split(",") if e.strip())
    elif text in C.edges:
        edges = (text,)
    else:
        edges = tuple(text)
    for e in edges:
        if e not in C.edges:
            raise UsageError(f"unknown edge {e!r} in path {text!r}")
    return edges, None


def _restrict(M: DimensionMatrix, target: str | None) -> DimensionMatrix:
    if not target:
        return M
    try:
        return M.restrict([v.strip() for v in target.split(",") if v.strip()])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ----------------------------------------------------------------------------
# embedded expectations for the built-in examples


_EMPTY_SQUARE_PATHS = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [2, 1, 1, 1]]
_FILLED_SQUARE_HA1 = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]]
_TWO_HOLES_PATHS = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 0, 0, 0],
    [2, 1, 0, 1, 1, 0, 0, 0, 0],
    [3, 2, 1, 1, 1, 1, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 1, 0, 0],
    [3, 1, 0, 2, 1, 0, 1, 1, 0],
    [6, 3, 1, 3, 2, 1, 1, 1, 1],
]


def _with(base, changes):
    m = [row[:] for row in base]
    for (a, b), v in changes.items():
        m[a - 1][b - 1] = v
    return m


_TWO_HOLES_LEFT_LOCAL = _with(_TWO_HOLES_PATHS, {(5, 1): 1, (9, 5): 1})
_TWO_HOLES_RIGHT_LOCAL = _with(_TWO_HOLES_PATHS, {(8, 4): 1, (6, 2): 1})
_TWO_HOLES_LEFT_IDEAL = {(9, 5): 1, (5, 1): 1, (9, 4): 2, (9, 2): 2, (6, 1): 2, (8, 1): 2, (9, 1): 3}

EXPECTED = {
    "empty_square": {"paths": _EMPTY_SQUARE_PATHS, "ha1": {m: _EMPTY_SQUARE_PATHS for m in QuotientMode}},
    "filled_square": {"paths": _EMPTY_SQUARE_PATHS, "ha1": {m: _FILLED_SQUARE_HA1 for m in QuotientMode}},
    "two_holes_left": {
        "paths": _TWO_HOLES_PATHS,
        "ha1": {QuotientMode.LOCAL: _TWO_HOLES_LEFT_LOCAL, QuotientMode.IDEAL: _with(_TWO_HOLES_PATHS, _TWO_HOLES_LEFT_IDEAL)},
    },
    "two_holes_right": {"paths": _TWO_HOLES_PATHS, "ha1": {QuotientMode.LOCAL: _TWO_HOLES_RIGHT_LOCAL}},
    "kronecker": {"paths": [[1, 2], [0, 1]]},
    "hollow_cube": {"entries": {("8", "1"): {"paths": 6, QuotientMode.IDEAL: 1}}},
}


def _kronecker_check(seed: int, pairs: int = 20) -> list[str]:
    """Compare products in the two-arrow path algebra with the matrix formula.

    The matrix ``[[a, 0], [(b, c), d]]`` stands for ``a e_2 + b alpha +
    c beta + d e_1``: the display lists targets before sources.
    """
    P = PathAlgebra(BUILDERS["kronecker"]())
    e1, e2 = P.path((), "1"), P.path((), "2")
    al, be = P.path(("alpha",)), P.path(("beta",))
    rng = random.Random(seed)

    def rnd():
        return [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)]

    def elem(a, b, c, d):
        return Element({e2: a, al: b, be: c, e1: d})

    bad = []
    for _ in range(pairs):
        (a, b, c, d), (a2, b2, c2, d2) = rnd(), rnd()
        got = P.multiply(elem(a, b, c, d), elem(a2, b2, c2, d2))
        want = elem(a2 * a, a2 * b + b2 * d, a2 * c + c2 * d, d2 * d)
        if got != want:
            bad.append(f"kronecker product mismatch for {(a, b, c, d)} x {(a2, b2, c2, d2)}")
    return bad


def run_example(name: str, mode: QuotientMode, fmt: str, seed: int, out) -> bool:
    C = BUILDERS[name]()
    exp = EXPECTED.get(name, {})
    problems = [str(v) for v in validate(C)]
    cap = 5 if name in ("loop_graph", "two_half_circles") else None
    P = PathAlgebra(C, cap)
    paths = DimensionMatrix.of_algebra(P)
    H = ha1(C, mode, cap)
    M = H.dimension_matrix()
    if "paths" in exp and paths.ranks() != exp["paths"]:
        problems.append("path algebra matrix differs from the expected one")
    want = exp.get("ha1", {}).get(mode)
    if want is not None and M.ranks() != want:
        problems.append(f"{mode.value} matrix differs from the expected one")
    for (a, b), vals in exp.get("entries", {}).items():
        if "paths" in vals and paths.rank(a, b) != vals["paths"]:
            problems.append(f"path count at ({a},{b}) differs")
        if mode in vals and M.rank(a, b) != vals[mode]:
            problems.append(f"{mode.value} rank at ({a},{b}) differs")
    if name == "loop_graph" and M.rank("u", "u") != cap + 1:
        problems.append("loop graph rank differs from cap + 1")
    if name == "kronecker":
        problems.extend(_kronecker_check(seed))
    out.write(f"== {name} ({mode.value}{'' if cap is None else f', cap {cap}'})\n")
    out.write("path algebra:\n" + emit(paths, fmt))
    out.write(f"HA1 ({mode.value}):\n" + emit(M, fmt))
    if mode is not QuotientMode.IDEAL and C.squares:
        ideal = ha1(C, QuotientMode.IDEAL, cap).dimension_matrix()
        diffs = [
            (a, b)
            for a in M.order
            for b in M.order
            if M.rank(a, b) != ideal.rank(a, b)
        ]
        if diffs:
            cells = ", ".join(f"({a},{b}) {M.rank(a, b)} vs {ideal.rank(a, b)}" for a, b in diffs)
            out.write(f"note: padded relations make the ideal quotient smaller at {cells}\n")
    if not H.torsion_free():
        out.write("note: torsion present\n")
    for p in problems:
        out.write(f"FAIL: {p}\n")
    out.write("self-check: " + ("ok" if not problems else "FAILED") + "\n")
    return not problems


# ----------------------------------------------------------------------------
# commands


def _cmd_validate(args, out) -> int:
    C = _load(args.complex)
    bad = validate(C)
    if bad:
        for v in bad:
            sys.stderr.write(f"violation: {v}\n")
        return 1
    out.write(f"ok: {len(C.vertices)} vertices, {len(C.edges)} edges, {len(C.squares)} squares\n")
    return 0


def _cmd_paths(args, out) -> int:
    C = _checked(args.complex)
    for v in (args.source, args.target):
        if v not in C.vertices:
            raise UsageError(f"unknown vertex {v!r}")
    ps = enumerate_paths(C, args.source, args.target, args.max_len)
    if args.format == "json":
        out.write(json.dumps([list(p.edges) for p in ps]) + "\n")
    else:
        for p in ps:
            out.write(f"{p}\n")
    return 0


def _cmd_algebra(args, out) -> int:
    C = _checked(args.complex)
    if args.which == "r1":
        A = PathAlgebra(C, args.max_len)
    elif args.which == "r0":
        A = r0_algebra(C)
    else:
        A = two_path_algebra(C, args.max_len)
    out.write(emit(_restrict(DimensionMatrix.of_algebra(A, C.vertices), args.restrict), args.format))
    return 0


def _cmd_ha0(args, out) -> int:
    C = _checked(args.complex)
    out.write(emit(_restrict(DimensionMatrix.of_algebra(r0_algebra(C)), args.restrict), args.format))
    return 0


def _cmd_ha1(args, out) -> int:
    C = _checked(args.complex)
    H = ha1(C, args.mode, args.max_len, jobs=args.jobs)
    M = _restrict(H.dimension_matrix(), args.restrict)
    if args.format == "json":
        doc = M.to_dict()
        doc["mode"] = H.mode.value
        doc["max_len"] = H.max_len
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write(f"HA1 ({H.mode.value}, paths of length <= {H.max_len})\n")
        out.write(M.pretty())
    return 0


def _cmd_classes(args, out) -> int:
    C = _checked(args.complex)
    H = ha1(C, args.mode, args.max_len, jobs=args.jobs)
    (pe, ps), (qe, qs) = _parse_path(C, args.p), _parse_path(C, args.q)
    p, q = H.base.path(pe, ps), H.base.path(qe, qs)
    if args.multiply:
        prod = multiply_classes(H, p, q)
        text = " + ".join(f"{c}*{w}" for w, c in sorted(prod.items(), key=lambda t: t[0].edges)) or "0"
        out.write(text + "\n")
    else:
        out.write(("equal" if class_equal(H, p, q) else "different") + "\n")
    return 0


def _cmd_les(args, out) -> int:
    C1, C2 = _checked(args.first), _checked(args.second)
    R = disjoint_union_les_report(C1, C2, args.mode, args.cap, args.max_len)
    out.write(emit(R, args.format))
    return 0 if R.ok else 1


def _cmd_examples(args, out) -> int:
    names = [args.name] if args.name else sorted(BUILDERS)
    if args.name and args.name not in BUILDERS:
        raise UsageError(f"unknown example {args.name!r}")
    ok = True
    for name in names:
        ok &= run_example(name, args.mode, args.format, args.seed, out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diho", description="Directed homology algebras of precubical sets.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, mode=False):
        sp.add_argument("--format", choices=("json", "pretty"), default="pretty")
        sp.add_argument("--max-len", type=int, default=None, help="path length cap (required for cyclic complexes)")
        sp.add_argument("--restrict", default=None, help="comma-separated vertex subset")
        sp.add_argument("--jobs", type=int, default=None, help="worker threads (default: $DIHO_JOBS or 1)")
        if mode:
            sp.add_argument("--mode", type=QuotientMode.parse, default=QuotientMode.IDEAL, help="ideal, image or local")

    sp = sub.add_parser("validate", help="check the precubical identities")
    sp.add_argument("complex")
    sp = sub.add_parser("paths", help="list edge paths between two vertices")
    sp.add_argument("complex")
    sp.add_argument("source")
    sp.add_argument("target")
    common(sp)
    sp = sub.add_parser("algebra", help="dimension matrix of a trace algebra")
    sp.add_argument("complex")
    sp.add_argument("--which", choices=("r0", "r1", "r2"), default="r1")
    common(sp)
    sp = sub.add_parser("ha0", help="reachability algebra")
    sp.add_argument("complex")
    common(sp)
    sp = sub.add_parser("ha1", help="first directed homology algebra")
    sp.add_argument("complex")
    common(sp, mode=True)
    sp = sub.add_parser("classes", help="compare or multiply path classes")
    sp.add_argument("complex")
    sp.add_argument("p")
    sp.add_argument("q")
    sp.add_argument("--multiply", action="store_true")
    common(sp, mode=True)
    sp = sub.add_parser("les", help="disjoint-union exact sequence report")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--cap", type=int, default=2, help="coproduct word cap")
    common(sp, mode=True)
    sp = sub.add_parser("examples", help="recompute the built-in examples with self-checks")
    sp.add_argument("--name", default=None)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, mode=True)
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if getattr(args, "max_len", None) is not None and args.max_len < 0:
        sys.stderr.write("error: --max-len must be >= 0\n")
        return 2
    if getattr(args, "cap", None) is not None and args.cap < 1:
        sys.stderr.write("error: --cap must be >= 1\n")
        return 2
    handler = {
        "validate": _cmd_validate,
        "paths": _cmd_paths,
        "algebra": _cmd_algebra,
        "ha0": _cmd_ha0,
        "ha1": _cmd_ha1,
        "classes": _cmd_classes,
        "les": _cmd_les,
        "examples": _cmd_examples,
    }[args.command]
    try:
        return handler(args, out)
    except TruncationError as exc:
        sys.stderr.write(f"truncation overflow: {exc}\n")
        return 3
    except (UsageError, AlgebraError, ValueError) as exc:
        # PrecubicalError is a ValueError; invalid complexes are validation failures
        code = 1 if isinstance(exc, PrecubicalError) and "invalid precubical" in str(exc) else 2
        sys.stderr.write(f"error: {exc}\n")
        return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
