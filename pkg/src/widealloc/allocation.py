"""Allocations: coarse block-level Latin fillings.

An allocation for a diagram with blocks ``(a_i, e_i)`` is a table of
nonnegative integers ``z[i, j, k]`` for ``1 <= j, k <= i <= p``: how many
symbols of symbol block ``k`` sit where row block ``i`` meets column block
``j``. It must satisfy

* row sums      ``sum_k z[i, j, k] = e_i * b_j``,
* column sums   ``sum_j z[i, j, k] = e_i * b_k``,
* capacities    ``sum_{i >= max(j, k)} z[i, j, k] <= b_j * b_k``.

:func:`allocate` constructs one for every wide diagram with at most three
distinct row lengths. For three blocks the free variables are
``x = z211``, ``u = z311``, ``v = z312``, ``y = z321`` and ``w = z322``; the
construction keeps ``v == y`` and walks ``(u, y, w)`` through a small
exchange search when the first interval split leaves ``u`` outside its box.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping

from .diagram import YoungDiagram, lower_blocks
from .errors import (
    InfeasibleExtension,
    InternalInvariantError,
    InvalidInputError,
    NotWideError,
    ScaleLimitError,
    UnsupportedError,
)
from .verdict import Verdict
from .wideness import is_wide_fast

Index = tuple[int, int, int]

EXHAUSTIVE_MAX_CELLS = 24
EXTENSION_SEARCH_MAX_ROW = 8


# --- integer intervals --------------------------------------------------------


@dataclass(frozen=True)
class IntInterval:
    """Closed integer interval ``[lo, hi]``; empty when ``lo > hi``."""

    lo: int
    hi: int

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def __add__(self, other: "IntInterval") -> "IntInterval":
        """Minkowski sum."""
        return IntInterval(self.lo + other.lo, self.hi + other.hi)

    def __and__(self, other: "IntInterval") -> "IntInterval":
        return IntInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def clamp(self, v: int) -> int:
        if self.empty:
            raise ValueError(f"cannot clamp into empty interval {self}")
        return min(max(v, self.lo), self.hi)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


# --- the allocation table ------------------------------------------------------


@dataclass(frozen=True, eq=True)
class Allocation:
    """Entries ``z[(i, j, k)]`` for ``1 <= j, k <= i <= p``; missing keys are 0."""

    p: int
    z: Mapping[Index, int] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        if self.p < 1:
            raise InvalidInputError(f"allocation needs p >= 1, got {self.p}")
        clean = {}
        for key, value in self.z.items():
            i, j, k = key
            if not (1 <= j <= i <= self.p and 1 <= k <= i):
                raise InvalidInputError(f"index {key} outside 1 <= j,k <= i <= {self.p}")
            if value:
                clean[(int(i), int(j), int(k))] = int(value)
        object.__setattr__(self, "z", clean)

    def __getitem__(self, key: Index) -> int:
        return self.z.get(key, 0)

    def indices(self) -> Iterator[Index]:
        for i in range(1, self.p + 1):
            for j in range(1, i + 1):
                for k in range(1, i + 1):
                    yield (i, j, k)

    def restrict(self, q: int) -> "Allocation":
        """The entries of the lowest ``q`` row blocks."""
        return Allocation(q, {key: v for key, v in self.z.items() if key[0] <= q})

    def to_json(self) -> dict:
        return {"p": self.p, "z": {f"{i},{j},{k}": v for (i, j, k), v in sorted(self.z.items())}}


def allocation_from_json(obj: dict | str) -> Allocation:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"bad allocation JSON: {exc}") from exc
    try:
        p = int(obj["p"])
        z = {}
        for key, value in obj.get("z", {}).items():
            i, j, k = (int(t) for t in key.split(","))
            z[(i, j, k)] = int(value)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InvalidInputError(f"bad allocation JSON: {exc}") from exc
    return Allocation(p, z)


def verify_allocation(Y: YoungDiagram, Z: Allocation) -> Verdict:
    if Z.p != Y.p:
        raise InvalidInputError(f"allocation has p={Z.p} but diagram has p={Y.p}")
    p, e, b = Y.p, Y.e, Y.b
    for key in Z.indices():
        if Z[key] < 0:
            return Verdict.failed(f"negative entry z{key} = {Z[key]}")
    for i in range(1, p + 1):
        for j in range(1, i + 1):
            got = sum(Z[i, j, k] for k in range(1, i + 1))
            if got != e[i - 1] * b[j - 1]:
                return Verdict.failed(f"row sum: sum_k z[{i},{j},k] = {got} != e_{i}*b_{j} = {e[i - 1] * b[j - 1]}")
        for k in range(1, i + 1):
            got = sum(Z[i, j, k] for j in range(1, i + 1))
            if got != e[i - 1] * b[k - 1]:
                return Verdict.failed(f"column sum: sum_j z[{i},j,{k}] = {got} != e_{i}*b_{k} = {e[i - 1] * b[k - 1]}")
    for j in range(1, p + 1):
        for k in range(1, p + 1):
            got = sum(Z[i, j, k] for i in range(max(j, k), p + 1))
            if got > b[j - 1] * b[k - 1]:
                return Verdict.failed(f"capacity: sum_i z[i,{j},{k}] = {got} > b_{j}*b_{k} = {b[j - 1] * b[k - 1]}")
    return Verdict.passed()


def allocation_from_filling(Y: YoungDiagram, F) -> Allocation:
    """Count symbols of block ``k`` in each (row block ``i``, column block ``j``) region."""
    from .latin_fill import verify_filling

    verdict = verify_filling(Y, F)
    if not verdict:
        raise InvalidInputError(f"not a Latin filling: {verdict.violation}")
    a = Y.a
    z: dict[Index, int] = {}
    for r, row in enumerate(F.rows):
        i = Y.block_of_top_row_index(r)
        for c, symbol in enumerate(row):
            j = bisect_left(a, c + 1) + 1
            k = bisect_left(a, symbol) + 1
            z[(i, j, k)] = z.get((i, j, k), 0) + 1
    return Allocation(Y.p, z)


# --- two blocks ---------------------------------------------------------------------


def x_interval(Y: YoungDiagram) -> IntInterval:
    """Admissible values of ``x = z211`` given the lowest two blocks."""
    a1, e1 = Y.blocks[0]
    e2, b2 = Y.e_(2), Y.b_(2)
    lo = max(0, e2 * (a1 - b2), a1 * (e2 - b2))
    hi = min(a1 * e2, a1 * (a1 - e1), a1 * e2 - b2 * (e2 - b2))
    return IntInterval(lo, hi)


def choose_x(Y: YoungDiagram) -> tuple[int, IntInterval]:
    """Smallest admissible ``x``, picked by which of ``a_1, e_2, b_2`` is largest."""
    if Y.p < 2:
        raise InvalidInputError("choose_x needs at least two blocks")
    if not is_wide_fast(Y):
        raise NotWideError(f"{Y} is not wide")
    a1, e2, b2 = Y.a_(1), Y.e_(2), Y.b_(2)
    top = max(a1, e2, b2)
    if top == b2:
        x = 0
    elif top == a1:
        x = e2 * (a1 - b2)
    else:
        x = a1 * (e2 - b2)
    I_x = x_interval(Y)
    if I_x.empty or x != I_x.lo:
        raise InternalInvariantError(f"x-interval {I_x} empty or x={x} is not its left end for {Y}")
    return x, I_x


def _two_block_entries(Y: YoungDiagram, x: int) -> dict[Index, int]:
    a1, e1 = Y.blocks[0]
    e2, b2 = Y.e_(2), Y.b_(2)
    return {
        (1, 1, 1): a1 * e1,
        (2, 1, 1): x,
        (2, 1, 2): a1 * e2 - x,
        (2, 2, 1): a1 * e2 - x,
        (2, 2, 2): b2 * e2 - a1 * e2 + x,
    }


def two_block_allocation(Y: YoungDiagram, x: int) -> Allocation:
    """The allocation of the lowest two blocks with ``z211 = x`` (any ``x`` in the interval)."""
    if Y.p < 2:
        raise InvalidInputError("two_block_allocation needs at least two blocks")
    I_x = x_interval(Y)
    if x not in I_x:
        raise InvalidInputError(f"x={x} is outside the admissible interval {I_x}")
    return Allocation(2, _two_block_entries(Y, x))


# --- three blocks -------------------------------------------------------------------


@dataclass(frozen=True)
class ThreeBlockIntervals:
    """Boxes for ``u``, ``y (= v)``, ``w`` and for the sums ``u+y``, ``y+w``, ``u+2y+w``."""

    x: int
    u: IntInterval
    y: IntInterval
    w: IntInterval
    uy: IntInterval
    yw: IntInterval
    J1: IntInterval
    J2: IntInterval
    total: IntInterval

    def nonempty(self) -> bool:
        return not any(I.empty for I in (self.u, self.y, self.w, self.uy, self.yw, self.total))


def three_block_intervals(Y: YoungDiagram, x: int) -> ThreeBlockIntervals:
    a1, a2 = Y.a_(1), Y.a_(2)
    e1, e2, e3 = Y.e
    b2, b3 = Y.b_(2), Y.b_(3)
    I_u = IntInterval(0, a1 * (a1 - e1) - x)
    I_y = IntInterval(0, x - a1 * (e2 - b2))
    I_w = IntInterval(0, a1 * e2 - b2 * (e2 - b2) - x)
    uy = IntInterval(a1 * (e3 - b3), a1 * e3) & (I_u + I_y)
    yw = IntInterval(b2 * (e3 - b3), b2 * e3) & (I_y + I_w)
    J1 = uy + yw
    J2 = IntInterval((a2 - b3) * e3, (a2 - b3) * e3 + b3 * b3)
    return ThreeBlockIntervals(x, I_u, I_y, I_w, uy, yw, J1, J2, J1 & J2)


@dataclass(frozen=True)
class ExchangeStep:
    move: str
    u: int
    y: int
    w: int


@dataclass(frozen=True)
class ThreeBlockTrace:
    """How ``(u, v = y, w)`` were found: the interval split and every exchange move."""

    intervals: ThreeBlockIntervals
    s: int
    s1: int
    s2: int
    start: tuple[int, int, int]
    steps: tuple[ExchangeStep, ...]
    final: tuple[int, int, int]


# Each move shifts (u, y, w); ``keeps`` lists the sums it must leave unchanged.
_RAISE_U = (
    ("trade", (1, -1, 1), ("s", "s1", "s2")),
    ("drop-y", (1, -1, 0), ("s1",)),
    ("raise-u", (1, 0, 0), ("s2",)),
)
_LOWER_U = (
    ("trade", (-1, 1, -1), ("s", "s1", "s2")),
    ("lower-u", (-1, 0, 0), ("s2",)),
    ("lift-y", (-1, 1, 0), ("s1",)),
)


def _sums(u: int, y: int, w: int) -> dict[str, int]:
    return {"s": u + 2 * y + w, "s1": u + y, "s2": y + w}


def _admissible(I: ThreeBlockIntervals, u: int, y: int, w: int) -> bool:
    # Everything except u's own box, which the search is trying to reach.
    return y in I.y and w in I.w and (u + y) in I.uy and (y + w) in I.yw and (u + 2 * y + w) in I.total


def allocate_three_blocks(Y: YoungDiagram) -> tuple[Allocation, ThreeBlockTrace]:
    """Allocation for a wide three-block diagram, with the search trace."""
    if Y.p != 3:
        raise InvalidInputError("allocate_three_blocks needs exactly three blocks")
    x, _ = choose_x(Y)
    I = three_block_intervals(Y, x)
    if not I.nonempty():
        raise InternalInvariantError(f"empty interval for wide diagram {Y}: {I}")

    s = I.total.lo
    s1 = I.uy.clamp(s - I.yw.lo)
    s2 = s - s1
    if s2 not in I.yw:
        raise InternalInvariantError(f"split of s={s} failed: s1={s1}, s2={s2}")
    y = I.y.clamp(s2 - I.w.lo)
    w = s2 - y
    u = s1 - y
    if w not in I.w:
        raise InternalInvariantError(f"split of s2={s2} failed: y={y}, w={w}")
    start = (u, y, w)

    steps: list[ExchangeStep] = []
    budget = 4 * Y.a_(3) ** 2
    while u not in I.u:
        if len(steps) >= budget:
            raise InternalInvariantError(f"exchange search exceeded {budget} steps on {Y}")
        moves = _RAISE_U if u < I.u.lo else _LOWER_U
        for name, (du, dy, dw), keeps in moves:
            nu, ny, nw = u + du, y + dy, w + dw
            if not _admissible(I, nu, ny, nw):
                continue
            before, after = _sums(u, y, w), _sums(nu, ny, nw)
            if any(before[key] != after[key] for key in keeps):
                raise InternalInvariantError(f"move {name} changed a preserved sum")
            u, y, w = nu, ny, nw
            steps.append(ExchangeStep(name, u, y, w))
            break
        else:
            raise InternalInvariantError(f"exchange search stuck at u={u}, y={y}, w={w} on {Y}")

    z = _two_block_entries(Y, x)
    z.update(_top_entries(Y, u, y, y, w))
    Z = Allocation(3, z)
    verdict = verify_allocation(Y, Z)
    if not verdict:
        raise InternalInvariantError(f"constructed allocation invalid for {Y}: {verdict.violation}")
    sums = _sums(u, y, w)
    trace = ThreeBlockTrace(I, sums["s"], sums["s1"], sums["s2"], start, tuple(steps), (u, y, w))
    return Z, trace


def _top_entries(Y: YoungDiagram, u: int, v: int, y: int, w: int) -> dict[Index, int]:
    a1, a2 = Y.a_(1), Y.a_(2)
    e3 = Y.e_(3)
    b2, b3 = Y.b_(2), Y.b_(3)
    return {
        (3, 1, 1): u,
        (3, 1, 2): v,
        (3, 2, 1): y,
        (3, 2, 2): w,
        (3, 1, 3): a1 * e3 - u - v,
        (3, 2, 3): b2 * e3 - y - w,
        (3, 3, 1): a1 * e3 - u - y,
        (3, 3, 2): b2 * e3 - v - w,
        (3, 3, 3): (b3 - a2) * e3 + u + v + y + w,
    }


def allocate(Y: YoungDiagram) -> Allocation:
    """Construct an allocation for a wide diagram with at most three blocks."""
    if Y.p > 3:
        raise UnsupportedError(f"allocate handles p <= 3, got p={Y.p}; see complete_top_block")
    if not is_wide_fast(Y):
        raise NotWideError(f"{Y} is not wide")
    if Y.p == 1:
        a1, e1 = Y.blocks[0]
        return Allocation(1, {(1, 1, 1): a1 * e1})
    if Y.p == 2:
        x, _ = choose_x(Y)
        Z = Allocation(2, _two_block_entries(Y, x))
        if not verify_allocation(Y, Z):
            raise InternalInvariantError(f"two-block allocation invalid for {Y}")
        return Z
    return allocate_three_blocks(Y)[0]


# --- completing the top block -------------------------------------------------------


def complete_top_block(Y: YoungDiagram, lower: Allocation, core: Mapping[tuple[int, int], int]) -> Allocation:
    """Extend ``lower`` (blocks ``1..p-1``) by a chosen core ``z[p, j, k]``, ``j, k < p``.

    The border ``z[p, j, p]``, ``z[p, p, k]`` and ``z[p, p, p]`` is forced by the
    row and column sums. No search happens here: the first violated constraint
    is reported through :class:`InfeasibleExtension`.
    """
    p = Y.p
    if p < 2:
        raise InvalidInputError("complete_top_block needs p >= 2")
    if lower.p != p - 1:
        raise InvalidInputError(f"lower allocation has p={lower.p}, expected {p - 1}")
    base = verify_allocation(lower_blocks(Y, p - 1), lower)
    if not base:
        raise InvalidInputError(f"lower allocation invalid: {base.violation}")
    for (j, k) in core:
        if not (1 <= j < p and 1 <= k < p):
            raise InvalidInputError(f"core index {(j, k)} outside [1, {p - 1}]^2")

    b, e_p = Y.b, Y.e_(p)
    z = dict(lower.z)
    for j in range(1, p):
        for k in range(1, p):
            z[(p, j, k)] = int(core.get((j, k), 0))
    for j in range(1, p):
        z[(p, j, p)] = b[j - 1] * e_p - sum(z[(p, j, k)] for k in range(1, p))
    for k in range(1, p):
        z[(p, p, k)] = b[k - 1] * e_p - sum(z[(p, j, k)] for j in range(1, p))
    core_total = sum(z[(p, j, k)] for j in range(1, p) for k in range(1, p))
    z[(p, p, p)] = (b[p - 1] - Y.a_(p - 1)) * e_p + core_total

    for key in sorted(k for k in z if k[0] == p):
        if z[key] < 0:
            raise InfeasibleExtension(f"z{key} = {z[key]} < 0")
    Z = Allocation(p, z)
    verdict = verify_allocation(Y, Z)
    if not verdict:
        raise InfeasibleExtension(verdict.violation)
    return Z


def search_top_block(Y: YoungDiagram, lower: Allocation) -> Allocation | None:
    """Try every core for the top block; the first feasible extension, or None."""
    if Y.a_(Y.p) > EXTENSION_SEARCH_MAX_ROW:
        raise ScaleLimitError(f"extension search is gated to a_p <= {EXTENSION_SEARCH_MAX_ROW}")
    p, b = Y.p, Y.b
    e_p = Y.e_(p)
    cells = [(j, k) for j in range(1, p) for k in range(1, p)]
    ranges = [range(min(b[j - 1], b[k - 1]) * e_p + 1) for j, k in cells]
    for values in product(*ranges):
        try:
            return complete_top_block(Y, lower, dict(zip(cells, values)))
        except InfeasibleExtension:
            continue
    return None


# --- exhaustive search ----------------------------------------------------------------


def find_allocation_exhaustive(Y: YoungDiagram) -> Allocation | None:
    """Depth-first search over every allocation table; None proves there is none."""
    if Y.size > EXHAUSTIVE_MAX_CELLS:
        raise ScaleLimitError(f"exhaustive allocation search is gated to |Y| <= {EXHAUSTIVE_MAX_CELLS}")
    p, e, b = Y.p, Y.e, Y.b
    cap = [[b[j] * b[k] for k in range(p)] for j in range(p)]
    z: dict[Index, int] = {}

    def tables(i: int) -> Iterator[None]:
        # Enumerate the i x i block with row sums e_i*b_j and column sums e_i*b_k.
        rows = [e[i - 1] * b[j] for j in range(i)]
        cols = [e[i - 1] * b[k] for k in range(i)]

        def cell(j: int, k: int) -> Iterator[None]:
            if j == i:
                if any(cols):
                    return
                yield
                return
            nj, nk = (j, k + 1) if k + 1 < i else (j + 1, 0)
            if k == i - 1:
                choices = [rows[j]]
            else:
                choices = range(min(rows[j], cols[k]), -1, -1)
            for v in choices:
                if v > cols[k] or v > cap[j][k]:
                    continue
                rows[j] -= v
                cols[k] -= v
                cap[j][k] -= v
                z[(i, j + 1, k + 1)] = v
                yield from cell(nj, nk)
                rows[j] += v
                cols[k] += v
                cap[j][k] += v
            z.pop((i, j + 1, k + 1), None)

        yield from cell(0, 0)

    def blocks_from(i: int) -> bool:
        if i > p:
            return True
        for _ in tables(i):
            if blocks_from(i + 1):
                return True
        return False

    if not blocks_from(1):
        return None
    Z = Allocation(p, z)
    if not verify_allocation(Y, Z):
        raise InternalInvariantError(f"exhaustive search returned an invalid table for {Y}")
    return Z


# --- residual capacities ----------------------------------------------------------------


@dataclass(frozen=True)
class ResidualTable:
    """``x_resid[i, j, k]``: capacity of cell ``(j, k)`` left after blocks ``1..i``.

    ``rho[j - 1]`` sums the top-block residuals of column block ``j``;
    ``rho_closed`` is the same quantity from the block profile alone.
    """

    x_resid: Mapping[Index, int]
    rho: tuple[int, ...]
    rho_closed: tuple[int, ...]


def residuals(Y: YoungDiagram, Z: Allocation) -> ResidualTable:
    verdict = verify_allocation(Y, Z)
    if not verdict:
        raise InvalidInputError(f"invalid allocation: {verdict.violation}")
    p, b, e, a_p = Y.p, Y.b, Y.e, Y.a_(Y.p)
    x: dict[Index, int] = {}
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            for k in range(1, p + 1):
                used = sum(Z[l, j, k] for l in range(max(j, k), i + 1))
                x[(i, j, k)] = b[j - 1] * b[k - 1] - used
    rho = tuple(sum(x[(p, j, k)] for k in range(1, p + 1)) for j in range(1, p + 1))
    closed = tuple(b[j - 1] * (a_p - sum(e[j - 1:])) for j in range(1, p + 1))
    return ResidualTable(x, rho, closed)
