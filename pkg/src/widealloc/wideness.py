"""Three independent wideness deciders.

``is_wide_oracle`` walks every row subset (the definition), ``is_wide_tails``
checks tail subdiagrams at block boundaries only, and ``is_wide_fast`` runs
the closed-form battery of at most ``p + p(p-1)/2`` inequalities.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import accumulate
from typing import Literal

from .diagram import YoungDiagram, conjugate_rows, lower_blocks, sc, se, split_block, sr
from .errors import ScaleLimitError

ORACLE_MAX_ROWS = 18


@dataclass(frozen=True)
class Witness:
    """A failing domination check; ``lhs < rhs`` is the violation.

    ``kind`` is ``"subset"`` (``rows`` and prefix length ``t``), ``"tail"``
    (block ``k`` and width ``w``), ``"rows"`` (``a_k >= e_1+...+e_k`` for
    block ``k``) or ``"pair"`` (blocks ``k, j`` with split index ``i``).
    """

    kind: Literal["subset", "tail", "rows", "pair"]
    lhs: int
    rhs: int
    rows: tuple[int, ...] = ()
    t: int = 0
    k: int = 0
    j: int = 0
    w: int = 0
    i: int = 0


@dataclass(frozen=True)
class WidenessReport:
    wide: bool
    witness: Witness | None = None
    checks: int = 0
    skipped: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.wide


# --- definition -----------------------------------------------------------------


def _prefix_violation(rows: tuple[int, ...]) -> tuple[int, int, int] | None:
    """First ``t`` where the top ``t`` rows sum to less than the leftmost ``t`` columns."""
    cols = conjugate_rows(rows)
    length = max(len(rows), len(cols))
    r = list(accumulate(rows + (0,) * (length - len(rows))))
    c = list(accumulate(cols + [0] * (length - len(cols))))
    for t, (x, y) in enumerate(zip(r, c), start=1):
        if x < y:
            return t, x, y
    return None


@lru_cache(maxsize=1 << 20)
def _failing_subset(rows: tuple[int, ...]) -> tuple[tuple[int, ...], int, int, int] | None:
    # Every subset of ``rows`` is either ``rows`` itself or a subset of ``rows``
    # minus one row, so the sub-multisets are shared between calls through the cache.
    bad = _prefix_violation(rows)
    if bad is not None:
        return (rows,) + bad
    seen = set()
    for idx, value in enumerate(rows):
        if value in seen:
            continue
        seen.add(value)
        found = _failing_subset(rows[:idx] + rows[idx + 1:])
        if found is not None:
            return found
    return None


def is_wide_oracle(Y: YoungDiagram) -> WidenessReport:
    """Check that every row subset dominates its own conjugate."""
    if Y.m > ORACLE_MAX_ROWS:
        raise ScaleLimitError(f"oracle enumerates 2^m subsets; m={Y.m} > {ORACLE_MAX_ROWS}")
    found = _failing_subset(Y.rows_top_down())
    if found is None:
        return WidenessReport(True)
    rows, t, lhs, rhs = found
    return WidenessReport(False, Witness("subset", lhs, rhs, rows=rows, t=t))


# --- tails ----------------------------------------------------------------------


def is_wide_tails(Y: YoungDiagram) -> WidenessReport:
    """Check only tails ``Y_k`` against widths ``w`` in ``{a_1, ..., a_k}``."""
    checks = 0
    for k in range(1, Y.p + 1):
        rows = lower_blocks(Y, k).rows_top_down()
        cols = conjugate_rows(rows)
        for w in Y.a[:k]:
            checks += 1
            top = sum(rows[:w])
            left = sum(cols[:w])
            if top < left:
                return WidenessReport(False, Witness("tail", top, left, k=k, w=w), checks)
    return WidenessReport(True, checks=checks)


# --- inequality battery ---------------------------------------------------------


def is_wide_fast(Y: YoungDiagram) -> WidenessReport:
    """Evaluate the row-count and pair inequalities; ``checks`` counts evaluations."""
    checks = 0
    skipped: list[str] = []
    for k in range(1, Y.p + 1):
        checks += 1
        rows_k = se(Y, 1, k)
        if Y.a_(k) < rows_k:
            return WidenessReport(False, Witness("rows", Y.a_(k), rows_k, k=k), checks, tuple(skipped))
        for j in range(1, k):
            a_j = Y.a_(j)
            if a_j <= Y.e_(k):
                skipped.append(f"k={k},j={j}: a_j <= e_k, implied by row-count check")
                continue
            if rows_k <= a_j:
                skipped.append(f"k={k},j={j}: se_1k <= a_j, trivial")
                continue
            i = split_block(Y, j, k)
            checks += 1
            lhs = sum(Y.e_(t) * Y.a_(t) for t in range(i, k + 1)) + (a_j - se(Y, i, k)) * Y.a_(i - 1)
            rhs = sum(Y.a_(t) * Y.e_(t) for t in range(1, j)) + a_j * se(Y, j, k)
            if lhs < rhs:
                return WidenessReport(False, Witness("pair", lhs, rhs, k=k, j=j, i=i), checks, tuple(skipped))
    return WidenessReport(True, checks=checks, skipped=tuple(skipped))


def is_wide(Y: YoungDiagram) -> bool:
    return is_wide_fast(Y).wide


def recheck_witness(Y: YoungDiagram, witness: Witness) -> bool:
    """Recompute ``witness`` from scratch; True iff it is a strict violation."""
    if witness.kind == "subset":
        if Counter(witness.rows) - Counter(Y.rows_top_down()):
            return False
        rows = tuple(sorted(witness.rows, reverse=True))
        cols = conjugate_rows(rows)
        top = sum(rows[: witness.t])
        left = sum(cols[: witness.t])
        return top < left and (top, left) == (witness.lhs, witness.rhs)
    if witness.kind == "tail":
        rows = lower_blocks(Y, witness.k).rows_top_down()
        cols = conjugate_rows(rows)
        top, left = sum(rows[: witness.w]), sum(cols[: witness.w])
        return top < left and (top, left) == (witness.lhs, witness.rhs)
    if witness.kind == "rows":
        return Y.a_(witness.k) < se(Y, 1, witness.k)
    return sr(Y, witness.j, witness.k) < sc(Y, witness.j, witness.k)


METHODS = {"oracle": is_wide_oracle, "tails": is_wide_tails, "fast": is_wide_fast}
