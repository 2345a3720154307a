"""Exhaustive cross-checking over every diagram up to a size bound.

For each diagram the three wideness deciders must agree, the exact filler
must succeed exactly on the wide ones, and (for ``p <= 3``) the allocation
pipeline must produce a verified allocation and a valid filling whenever the
exact filler does. Anything else is recorded as a disagreement.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .allocation import allocate, verify_allocation
from .corpus import diagrams_up_to
from .diagram import YoungDiagram
from .errors import ScaleLimitError
from .latin_fill import EXACT_MAX_CELLS, fill_exact, fill_via_allocation, verify_filling
from .wideness import ORACLE_MAX_ROWS, is_wide_fast, is_wide_oracle, is_wide_tails

SEARCH_MAX_CELLS = EXACT_MAX_CELLS


@dataclass(frozen=True)
class Disagreement:
    diagram: tuple[int, ...]
    check: str
    details: str


@dataclass(frozen=True)
class DiagramResult:
    rows: tuple[int, ...]
    wide: bool
    latin: bool
    allocated: bool
    disagreements: tuple[Disagreement, ...] = ()


@dataclass(frozen=True)
class HarnessReport:
    max_cells: int
    max_p: int | None
    diagrams: int
    wide: int
    latin: int
    allocated: int
    disagreements: tuple[Disagreement, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json(self) -> str:
        body = {
            "corpus": {"max_cells": self.max_cells, "max_p": self.max_p},
            "counts": {
                "diagrams": self.diagrams,
                "wide": self.wide,
                "latin": self.latin,
                "allocated": self.allocated,
            },
            "disagreements": [
                {"diagram": list(d.diagram), "check": d.check, "details": d.details} for d in self.disagreements
            ],
        }
        return json.dumps(body, indent=2, sort_keys=True) + "\n"


def check_diagram(rows: tuple[int, ...]) -> DiagramResult:
    """Run every cross-check on one diagram (given as descending row lengths)."""
    Y = YoungDiagram.from_row_lengths(rows)
    found: list[Disagreement] = []

    def note(check: str, details: str) -> None:
        found.append(Disagreement(rows, check, details))

    verdicts = {"tails": bool(is_wide_tails(Y)), "fast": bool(is_wide_fast(Y))}
    if Y.m <= ORACLE_MAX_ROWS:
        verdicts["oracle"] = bool(is_wide_oracle(Y))
    wide = verdicts["fast"]
    if len(set(verdicts.values())) > 1:
        note("wideness", json.dumps(verdicts, sort_keys=True))

    F = fill_exact(Y)
    latin = F is not None
    if latin != wide:
        note("wide-iff-latin", f"wide={wide} latin={latin}")

    allocated = False
    if Y.p <= 3:
        piped = False
        if wide:
            try:
                Z = allocate(Y)
                verdict = verify_allocation(Y, Z)
                allocated = bool(verdict)
                if not verdict:
                    note("allocation", verdict.violation or "")
                G = fill_via_allocation(Y)
                piped = bool(verify_filling(Y, G))
                if not piped:
                    note("pipeline", "filling from the pipeline does not verify")
            except Exception as exc:  # a failure here is a finding, not a crash
                note("pipeline", f"{type(exc).__name__}: {exc}")
        if piped != latin:
            note("pipeline-vs-exact", f"pipeline={piped} exact={latin}")
    return DiagramResult(rows, wide, latin, allocated, tuple(found))


def search(max_cells: int, max_p: int | None = None, jobs: int = 1) -> HarnessReport:
    """Cross-check every diagram with ``|Y| <= max_cells`` (and ``p <= max_p``)."""
    if max_cells > SEARCH_MAX_CELLS:
        raise ScaleLimitError(f"search is gated to max_cells <= {SEARCH_MAX_CELLS}")
    corpus = [Y.rows_top_down() for Y in diagrams_up_to(max(max_cells, 0), max_p)]
    if jobs > 1 and len(corpus) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check_diagram, corpus, chunksize=max(1, len(corpus) // (8 * jobs))))
    else:
        results = [check_diagram(rows) for rows in corpus]
    results.sort(key=lambda r: (sum(r.rows), r.rows))
    disagreements = tuple(d for r in results for d in r.disagreements)
    return HarnessReport(
        max_cells=max_cells,
        max_p=max_p,
        diagrams=len(results),
        wide=sum(r.wide for r in results),
        latin=sum(r.latin for r in results),
        allocated=sum(r.allocated for r in results),
        disagreements=disagreements,
    )

