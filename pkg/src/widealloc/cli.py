"""``widealloc`` command-line front end.

Exit status: 0 success or a positive verdict, 1 a negative verdict, 2 bad
usage or input, 3 an internal invariant failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Sequence

import numpy as np

from .allocation import allocate, allocation_from_json, residuals, verify_allocation
from .diagram import YoungDiagram, parse_diagram
from .errors import InternalInvariantError, NotWideError, WideallocError
from .harness import search
from .latin_fill import (
    LatinFilling,
    fill_exact,
    fill_via_allocation,
    filling_from_json,
    render_ascii,
    render_svg,
    verify_filling,
)
from .outline import (
    ReductionPartition,
    embed_allocation,
    latin_from_text,
    outline_from_json,
    outline_to_latin,
    random_latin_square,
    random_partition,
    reduce_latin,
    verify_outline,
)
from .wideness import METHODS, WidenessReport

OK, NEGATIVE, USAGE, INTERNAL = 0, 1, 2, 3
SEED_ENV = "WIDEALLOC_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse's own exit code is already 2
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _read(source: str) -> str:
    """``-`` is stdin, an existing path is read, anything else is taken literally."""
    if source == "-":
        return sys.stdin.read()
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    return source


def _diagram(source: str) -> YoungDiagram:
    return parse_diagram(_read(source))


def _env_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError as exc:
        raise WideallocError(f"${SEED_ENV} must be an integer, got {raw!r}") from exc


def _emit(payload: object) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _witness_json(report: WidenessReport) -> dict | None:
    w = report.witness
    if w is None:
        return None
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(w).items()}


# --- commands -------------------------------------------------------------------


def cmd_check_wide(args: argparse.Namespace) -> int:
    Y = _diagram(args.diagram)
    names = list(METHODS) if args.method == "all" else [args.method]
    reports = {name: METHODS[name](Y) for name in names}
    verdicts = {name: r.wide for name, r in reports.items()}
    if len(set(verdicts.values())) > 1:
        raise InternalInvariantError(f"wideness deciders disagree on {Y}: {verdicts}")
    wide = next(iter(verdicts.values()))
    if args.json:
        _emit(
            {
                "diagram": list(Y.rows_top_down()),
                "wide": wide,
                "methods": {
                    name: {"wide": r.wide, "checks": r.checks, "skipped": list(r.skipped), "witness": _witness_json(r)}
                    for name, r in reports.items()
                },
            }
        )
    else:
        print("wide" if wide else "not wide")
        for name, r in reports.items():
            if r.witness is not None:
                print(f"  {name}: {r.witness}")
    return OK if wide else NEGATIVE


def cmd_allocate(args: argparse.Namespace) -> int:
    Y = _diagram(args.diagram)
    try:
        Z = allocate(Y)
    except NotWideError as exc:
        print(f"not wide: {exc}")
        return NEGATIVE
    verdict = verify_allocation(Y, Z)
    if not verdict:
        raise InternalInvariantError(f"constructed allocation fails verification: {verdict.violation}")
    payload: dict = Z.to_json()
    if args.residuals:
        R = residuals(Y, Z)
        payload["residuals"] = {"rho": list(R.rho), "rho_closed": list(R.rho_closed)}
    if args.json:
        _emit(payload)
    else:
        for (i, j, k), v in sorted(Z.z.items()):
            print(f"z[{i},{j},{k}] = {v}")
        if args.residuals:
            print(f"rho = {payload['residuals']['rho']}")
    return OK


def cmd_fill(args: argparse.Namespace) -> int:
    Y = _diagram(args.diagram)
    if args.method == "exact":
        F = fill_exact(Y)
        if F is None:
            print("no Latin filling")
            return NEGATIVE
    else:
        try:
            F = fill_via_allocation(Y)
        except NotWideError:
            print("not wide: no Latin filling")
            return NEGATIVE
    if args.json:
        _emit(F.to_json())
    elif args.render == "svg":
        sys.stdout.write(render_svg(F))
    else:
        sys.stdout.write(render_ascii(F))
    return OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.diagram is None:
        raise WideallocError("verify needs --diagram")
    Y = _diagram(args.diagram)
    if (args.filling is None) == (args.allocation is None):
        raise WideallocError("verify needs exactly one of --filling or --allocation")
    if args.filling is not None:
        verdict = verify_filling(Y, filling_from_json(_read(args.filling), Y))
    else:
        verdict = verify_allocation(Y, allocation_from_json(_read(args.allocation)))
    print("valid" if verdict else f"invalid: {verdict.violation}")
    return OK if verdict else NEGATIVE


def _partition(args: argparse.Namespace) -> ReductionPartition:
    def parse(text: str) -> tuple[int, ...]:
        try:
            return tuple(int(t) for t in text.replace(",", " ").split())
        except ValueError as exc:
            raise WideallocError(f"bad partition {text!r}") from exc

    return ReductionPartition(parse(args.P), parse(args.Q), parse(args.S))


def cmd_outline(args: argparse.Namespace) -> int:
    if args.action == "verify":
        verdict = verify_outline(outline_from_json(_read(args.source)))
        print("valid" if verdict else f"invalid: {verdict.violation}")
        return OK if verdict else NEGATIVE
    if args.action == "reduce":
        L = latin_from_text(_read(args.source))
        _emit(reduce_latin(L, _partition(args)).to_json())
        return OK
    if args.action == "reconstruct":
        C = outline_from_json(_read(args.source))
        L, part = outline_to_latin(C)
        if args.json:
            _emit({"P": list(part.P), "Q": list(part.Q), "S": list(part.S), "grid": L.grid.tolist()})
        else:
            sys.stdout.write(L.to_text())
        return OK
    if args.action == "embed":
        Y = _diagram(args.source)
        C, part = embed_allocation(Y, allocate(Y))
        _emit({"outline": C.to_json(), "P": list(part.P), "Q": list(part.Q), "S": list(part.S)})
        return OK
    # roundtrip: random squares, random partitions, reduce -> reconstruct -> reduce
    seed = args.seed if args.seed is not None else _env_seed()
    rng = np.random.default_rng(seed)
    for _ in range(args.count):
        n = int(rng.integers(2, args.max_order + 1))
        L = random_latin_square(n, rng)
        part = random_partition(n, rng)
        C = reduce_latin(L, part)
        L2, part2 = outline_to_latin(C)
        if reduce_latin(L2, part2) != C:
            raise InternalInvariantError(f"round trip changed the outline (seed {seed})")
    print(f"{args.count} round trips ok (seed {seed})")
    return OK


def cmd_search(args: argparse.Namespace) -> int:
    report = search(args.max_cells, args.max_p, jobs=args.jobs)
    text = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK if report.ok else NEGATIVE


def cmd_render(args: argparse.Namespace) -> int:
    F: LatinFilling = filling_from_json(_read(args.filling))
    verdict = verify_filling(F.diagram, F)
    if not verdict:
        print(f"invalid: {verdict.violation}", file=sys.stderr)
        return NEGATIVE
    sys.stdout.write(render_svg(F) if args.format == "svg" else render_ascii(F))
    return OK


# --- wiring --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="widealloc", description="Wideness, allocations and Latin fillings of Young diagrams.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-wide", help="decide wideness")
    p.add_argument("diagram", help='row lengths ("5 4 3 3"), JSON, a file, or - for stdin')
    p.add_argument("--method", choices=[*METHODS, "all"], default="fast")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_wide)

    p = sub.add_parser("allocate", help="construct an allocation (at most three row lengths)")
    p.add_argument("diagram")
    p.add_argument("--json", action="store_true")
    p.add_argument("--residuals", action="store_true")
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("fill", help="find a Latin filling")
    p.add_argument("diagram")
    p.add_argument("--method", choices=["pipeline", "exact"], default="pipeline")
    p.add_argument("--render", choices=["ascii", "svg"], default="ascii")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("verify", help="check a filling or an allocation against a diagram")
    p.add_argument("--diagram")
    p.add_argument("--filling")
    p.add_argument("--allocation")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("outline", help="outline rectangles")
    p.add_argument("action", choices=["verify", "reduce", "reconstruct", "embed", "roundtrip"])
    p.add_argument("source", nargs="?", default="-", help="outline JSON, Latin square text, or a diagram")
    p.add_argument("--P", default="")
    p.add_argument("--Q", default="")
    p.add_argument("--S", default="")
    p.add_argument("--json", action="store_true")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV} or 0")
    p.set_defaults(func=cmd_outline)

    p = sub.add_parser("search", help="exhaustive cross-check harness")
    p.add_argument("--max-cells", type=int, required=True)
    p.add_argument("--max-p", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("render", help="draw a filling")
    p.add_argument("filling")
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable[[argparse.Namespace], int] = args.func
    try:
        return handler(args)
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL
    except NotWideError as exc:
        print(f"not wide: {exc}")
        return NEGATIVE
    except (WideallocError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
