"""Latin fillings of Young diagrams.

Row ``r`` of length ``l`` must hold ``1..l`` exactly once and no column may
repeat a symbol. Rows are listed top-to-bottom (longest first).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .diagram import YoungDiagram, from_row_lengths
from .errors import InvalidInputError, NotWideError, ScaleLimitError, UnsupportedError
from .verdict import Verdict
from .wideness import is_wide_fast

EXACT_MAX_CELLS = 64


@dataclass(frozen=True)
class LatinFilling:
    diagram: YoungDiagram
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(tuple(int(v) for v in row) for row in self.rows))

    def to_json(self) -> dict:
        return {"rows": [list(row) for row in self.rows]}


def filling_from_json(obj: dict | str, Y: YoungDiagram | None = None) -> LatinFilling:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"bad filling JSON: {exc}") from exc
    rows = obj.get("rows") if isinstance(obj, dict) else None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) and r for r in rows):
        raise InvalidInputError("filling JSON needs a nonempty 'rows' list of nonempty lists")
    if Y is None:
        Y = from_row_lengths([len(r) for r in rows])
    return LatinFilling(Y, tuple(tuple(r) for r in rows))


def verify_filling(Y: YoungDiagram, F: LatinFilling) -> Verdict:
    shape = Y.rows_top_down()
    if tuple(len(row) for row in F.rows) != shape:
        raise InvalidInputError(f"filling rows {[len(r) for r in F.rows]} do not match diagram {list(shape)}")
    for r, row in enumerate(F.rows):
        if sorted(row) != list(range(1, len(row) + 1)):
            return Verdict.failed(f"row {r + 1} is {list(row)}, not a permutation of 1..{len(row)}")
    for c in range(shape[0]):
        column = [row[c] for row in F.rows if len(row) > c]
        if len(set(column)) != len(column):
            return Verdict.failed(f"column {c + 1} repeats a symbol: {column}")
    return Verdict.passed()


# --- exact search ---------------------------------------------------------------


def fill_exact(Y: YoungDiagram) -> LatinFilling | None:
    """Backtracking search; None means the whole space was exhausted.

    Cells are picked by fewest candidates, then topmost row, then leftmost
    column. A branch is cut as soon as some row has a missing symbol with no
    cell left that can take it, or some column has fewer candidate symbols
    than empty cells.
    """
    if Y.size > EXACT_MAX_CELLS:
        raise ScaleLimitError(f"exact filler is gated to |Y| <= {EXACT_MAX_CELLS}")
    lengths = Y.rows_top_down()
    heights = [sum(1 for l in lengths if l > c) for c in range(lengths[0])]
    need = [((1 << l) - 1) << 1 for l in lengths]
    used = [0] * len(heights)
    grid = [[0] * l for l in lengths]
    empty = [(r, c) for r, l in enumerate(lengths) for c in range(l)]
    row_cells = [[(r, c) for c in range(l)] for r, l in enumerate(lengths)]
    col_cells = [[(r, c) for r in range(h)] for c, h in enumerate(heights)]

    def consistent() -> bool:
        for r, cells in enumerate(row_cells):
            if not need[r]:
                continue
            reach = 0
            for rr, c in cells:
                if not grid[rr][c]:
                    reach |= need[r] & ~used[c]
            if reach != need[r]:
                return False
        for c, cells in enumerate(col_cells):
            reach = 0
            free = 0
            for r, cc in cells:
                if not grid[r][cc]:
                    free += 1
                    reach |= need[r] & ~used[c]
            if free and bin(reach).count("1") < free:
                return False
        return True

    def search() -> bool:
        if not empty:
            return True
        best = None
        best_count = 1 << 30
        for idx, (r, c) in enumerate(empty):
            count = bin(need[r] & ~used[c]).count("1")
            if count < best_count:
                best, best_count = idx, count
                if count <= 1:
                    break
        if best_count == 0:
            return False
        r, c = empty.pop(best)
        options = need[r] & ~used[c]
        while options:
            bit = options & -options
            options ^= bit
            grid[r][c] = bit.bit_length() - 1
            need[r] ^= bit
            used[c] ^= bit
            if consistent() and search():
                return True
            need[r] ^= bit
            used[c] ^= bit
            grid[r][c] = 0
        empty.insert(best, (r, c))
        return False

    if not search():
        return None
    F = LatinFilling(Y, tuple(tuple(row) for row in grid))
    if not verify_filling(Y, F):
        raise AssertionError("exact filler produced an invalid filling")
    return F


# --- the allocation pipeline ----------------------------------------------------


def fill_via_allocation(Y: YoungDiagram) -> LatinFilling:
    """Allocation, then outline rectangle, then Latin square, then cut out the shape."""
    from .allocation import allocate
    from .outline import embed_allocation, extract_filling, outline_to_latin

    if Y.p > 3:
        raise UnsupportedError(f"the pipeline constructs allocations for p <= 3, got p={Y.p}")
    if not is_wide_fast(Y):
        raise NotWideError(f"{Y} is not wide")
    Z = allocate(Y)
    C, part = embed_allocation(Y, Z)
    L, found = outline_to_latin(C)
    if found != part:
        raise AssertionError("reconstruction returned a different partition than the embedding")
    return extract_filling(L, part, Y)


# --- rendering --------------------------------------------------------------------


def render_ascii(F: LatinFilling) -> str:
    width = max(len(str(v)) for row in F.rows for v in row)
    return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in F.rows) + "\n"


def render_svg(F: LatinFilling, cell: int = 28) -> str:
    cols = max(len(row) for row in F.rows)
    w, h = cols * cell + 2, len(F.rows) * cell + 2
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="monospace">']
    for r, row in enumerate(F.rows):
        for c, v in enumerate(row):
            x, y = 1 + c * cell, 1 + r * cell
            parts.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="white" stroke="black"/>')
            parts.append(
                f'<text x="{x + cell / 2}" y="{y + cell * 0.68}" text-anchor="middle" '
                f'font-size="{cell // 2}">{v}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
