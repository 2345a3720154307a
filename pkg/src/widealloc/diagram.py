"""Young diagrams stored as ascending block profiles.

Rows are grouped into blocks of equal length. Block ``i`` (1-based) holds
``e_i`` rows of length ``a_i`` with ``a_1 < a_2 < ... < a_p``, so blocks are
numbered bottom-to-top, short to long. Fillings and renderings list rows
top-to-bottom (longest first); :meth:`YoungDiagram.rows_top_down` is the one
place that converts between the two orders.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import accumulate
from typing import Iterable, Sequence

from .errors import InvalidInputError

MAX_ROW_LENGTH = 10**6
MAX_ROWS = 10**6

Block = tuple[int, int]


@dataclass(frozen=True)
class YoungDiagram:
    """A Young diagram as blocks ``((a_1, e_1), ..., (a_p, e_p))``, ``a`` ascending."""

    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        blocks = tuple((int(a), int(e)) for a, e in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise InvalidInputError("a diagram needs at least one row")
        prev = 0
        for a, e in blocks:
            if a <= prev:
                raise InvalidInputError(f"row lengths must be positive and strictly ascending, got {blocks}")
            if e < 1:
                raise InvalidInputError(f"block multiplicities must be >= 1, got {blocks}")
            prev = a
        if blocks[-1][0] > MAX_ROW_LENGTH:
            raise InvalidInputError(f"row length {blocks[-1][0]} exceeds {MAX_ROW_LENGTH}")
        if sum(e for _, e in blocks) > MAX_ROWS:
            raise InvalidInputError(f"more than {MAX_ROWS} rows")

    @classmethod
    def from_row_lengths(cls, lengths: Iterable[int]) -> "YoungDiagram":
        lengths = list(lengths)
        if not lengths:
            raise InvalidInputError("empty list of row lengths")
        for length in lengths:
            if isinstance(length, bool) or int(length) != length or length <= 0:
                raise InvalidInputError(f"row lengths must be positive integers, got {length!r}")
        counts = Counter(int(x) for x in lengths)
        return cls(tuple(sorted(counts.items())))

    # --- block profile -------------------------------------------------

    @property
    def p(self) -> int:
        return len(self.blocks)

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.blocks)

    @property
    def e(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.blocks)

    @cached_property
    def b(self) -> tuple[int, ...]:
        """Column block widths ``b_i = a_i - a_{i-1}`` with ``a_0 = 0``."""
        a = self.a
        return tuple(x - y for x, y in zip(a, (0,) + a[:-1]))

    @property
    def m(self) -> int:
        return sum(self.e)

    @property
    def size(self) -> int:
        return sum(a * e for a, e in self.blocks)

    def a_(self, i: int) -> int:
        """``a_i`` with 1-based ``i`` and ``a_0 = 0``."""
        return 0 if i == 0 else self.blocks[i - 1][0]

    def e_(self, i: int) -> int:
        return self.blocks[i - 1][1]

    def b_(self, i: int) -> int:
        return self.b[i - 1]

    # --- row views ------------------------------------------------------

    def rows_top_down(self) -> tuple[int, ...]:
        """Row lengths top-to-bottom, longest first (rendering order)."""
        return tuple(a for a, e in reversed(self.blocks) for _ in range(e))

    def rows_bottom_up(self) -> tuple[int, ...]:
        return tuple(a for a, e in self.blocks for _ in range(e))

    def block_of_top_row_index(self, r: int) -> int:
        """Block number (1-based) of the ``r``-th row counted from the top (0-based ``r``)."""
        seen = 0
        for i in range(self.p, 0, -1):
            seen += self.e_(i)
            if r < seen:
                return i
        raise InvalidInputError(f"row index {r} out of range for {self.m} rows")

    def block_top_row(self, k: int) -> int:
        """1-based row number, counted from the top, of the top row of block ``k``."""
        self._check_block(k)
        return sum(self.e[k:]) + 1

    def _check_block(self, k: int) -> None:
        if not 1 <= k <= self.p:
            raise InvalidInputError(f"block index {k} outside [1, {self.p}]")

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.rows_top_down())) + ")"

    # --- formats --------------------------------------------------------

    def to_json(self) -> dict:
        return {"rows": list(self.rows_top_down())}


def from_row_lengths(lengths: Iterable[int]) -> YoungDiagram:
    return YoungDiagram.from_row_lengths(lengths)


def from_blocks(blocks: Iterable[Sequence[int]]) -> YoungDiagram:
    try:
        return YoungDiagram(tuple((a, e) for a, e in blocks))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"bad block list: {exc}") from exc


def parse_diagram(text: str) -> YoungDiagram:
    """Parse ``"5 4 3 3"`` or JSON ``{"rows": [...]}`` / ``{"blocks": [[a, e], ...]}``."""
    text = text.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"bad diagram JSON: {exc}") from exc
        return diagram_from_json(obj)
    try:
        lengths = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InvalidInputError(f"bad row-length list: {text!r}") from exc
    return from_row_lengths(lengths)


def diagram_from_json(obj: dict) -> YoungDiagram:
    if not isinstance(obj, dict):
        raise InvalidInputError("diagram JSON must be an object")
    if "rows" in obj:
        rows = obj["rows"]
        if not isinstance(rows, list) or not all(isinstance(x, int) for x in rows):
            raise InvalidInputError("'rows' must be a list of integers")
        return from_row_lengths(rows)
    if "blocks" in obj:
        blocks = obj["blocks"]
        if not isinstance(blocks, list) or not all(isinstance(x, list) and len(x) == 2 for x in blocks):
            raise InvalidInputError("'blocks' must be a list of [a, e] pairs")
        return from_blocks(blocks)
    raise InvalidInputError("diagram JSON needs 'rows' or 'blocks'")


# --- shape operations -------------------------------------------------------


def conjugate(Y: YoungDiagram) -> YoungDiagram:
    # Columns in column block j all have length e_j + ... + e_p; there are b_j of them.
    tail_counts = list(accumulate(reversed(Y.e)))[::-1]
    return YoungDiagram(tuple((length, width) for length, width in reversed(list(zip(tail_counts, Y.b)))))


def conjugate_rows(rows: Sequence[int]) -> list[int]:
    """Column lengths of a descending row list (cells are never materialised)."""
    if not rows:
        return []
    cols = []
    r = len(rows)
    for c in range(1, rows[0] + 1):
        while r and rows[r - 1] < c:
            r -= 1
        cols.append(r)
    return cols


def dominates(lam: YoungDiagram | Sequence[int], mu: YoungDiagram | Sequence[int]) -> bool:
    """True iff every descending prefix sum of ``lam`` is at least that of ``mu``."""
    x = _desc(lam)
    y = _desc(mu)
    length = max(len(x), len(y))
    x += [0] * (length - len(x))
    y += [0] * (length - len(y))
    sx = sy = 0
    for u, v in zip(x, y):
        sx += u
        sy += v
        if sx < sy:
            return False
    return True


def _desc(d: YoungDiagram | Sequence[int]) -> list[int]:
    if isinstance(d, YoungDiagram):
        return list(d.rows_top_down())
    return sorted(d, reverse=True)


def tail(Y: YoungDiagram, r: int) -> YoungDiagram:
    """``Y[r]``: rows ``r`` through ``m`` counted from the top (1-based)."""
    if not 1 <= r <= Y.m:
        raise InvalidInputError(f"row {r} outside [1, {Y.m}]")
    return from_row_lengths(Y.rows_top_down()[r - 1:])


def lower_blocks(Y: YoungDiagram, k: int) -> YoungDiagram:
    """``Y_k``: the tail starting at the top row of block ``k`` (blocks ``1..k``)."""
    Y._check_block(k)
    return YoungDiagram(Y.blocks[:k])


# --- tail statistics ---------------------------------------------------------


@dataclass(frozen=True)
class TailStats:
    k: int
    j: int
    sc: int
    sr: int
    se: int


def se(Y: YoungDiagram, m: int, k: int) -> int:
    """Number of rows in blocks ``m..k``."""
    if not 1 <= m <= k <= Y.p:
        raise InvalidInputError(f"se needs 1 <= m <= k <= p, got m={m}, k={k}, p={Y.p}")
    return sum(Y.e[m - 1:k])


def sc(Y: YoungDiagram, j: int, k: int) -> int:
    """Cells in the leftmost ``a_j`` columns of ``Y_k``, by horizontal strips."""
    _check_jk(Y, j, k)
    a, e = Y.a, Y.e
    return sum(a[t] * e[t] for t in range(j - 1)) + a[j - 1] * sum(e[j - 1:k])


def sc_by_columns(Y: YoungDiagram, j: int, k: int) -> int:
    """Same count as :func:`sc`, summed over vertical strips of width ``b_u``."""
    _check_jk(Y, j, k)
    return sum(Y.b_(u) * sum(Y.e[u - 1:k]) for u in range(1, j + 1))


def sr(Y: YoungDiagram, j: int, k: int) -> int:
    """Cells in the top ``a_j`` rows of ``Y_k``."""
    _check_jk(Y, j, k)
    a_j = Y.a_(j)
    if a_j <= Y.e_(k):
        return a_j * Y.a_(k)
    if se(Y, 1, k) <= a_j:
        return sum(Y.a_(t) * Y.e_(t) for t in range(1, k + 1))
    i = split_block(Y, j, k)
    return sum(Y.e_(t) * Y.a_(t) for t in range(i, k + 1)) + (a_j - se(Y, i, k)) * Y.a_(i - 1)


def split_block(Y: YoungDiagram, j: int, k: int) -> int | None:
    """The ``i`` in ``[2, k]`` with ``se(i, k) < a_j <= se(i-1, k)``, or None."""
    a_j = Y.a_(j)
    for i in range(2, k + 1):
        if se(Y, i, k) < a_j <= se(Y, i - 1, k):
            return i
    return None


def tail_stats(Y: YoungDiagram, j: int, k: int) -> TailStats:
    return TailStats(k=k, j=j, sc=sc(Y, j, k), sr=sr(Y, j, k), se=se(Y, 1, k))


def _check_jk(Y: YoungDiagram, j: int, k: int) -> None:
    if not 1 <= j <= k <= Y.p:
        raise InvalidInputError(f"need 1 <= j <= k <= p, got j={j}, k={k}, p={Y.p}")
