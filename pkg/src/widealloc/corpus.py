"""Deterministic enumerations of Young diagrams for exhaustive checks."""

from __future__ import annotations

from typing import Iterator

from .diagram import YoungDiagram


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` as descending tuples, in lexicographic order."""
    if max_part is None:
        max_part = n

    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for x in range(1, min(rest, cap) + 1):
            for tail in rec(rest - x, x):
                yield (x,) + tail

    if n == 0:
        return
    # rec yields descending tuples with the first part ascending; sort within n for strict lex order.
    yield from sorted(rec(n, max_part))


def diagrams_up_to(max_cells: int, max_p: int | None = None) -> Iterator[YoungDiagram]:
    """Every diagram with ``1 <= |Y| <= max_cells``, by size then lexicographically."""
    for n in range(1, max_cells + 1):
        for parts in partitions(n):
            Y = YoungDiagram.from_row_lengths(parts)
            if max_p is None or Y.p <= max_p:
                yield Y


def diagrams_in_box(max_rows: int, max_part: int) -> Iterator[YoungDiagram]:
    """Every nonempty diagram with at most ``max_rows`` rows and parts at most ``max_part``."""

    def rec(rows_left: int, cap: int) -> Iterator[tuple[int, ...]]:
        yield ()
        if rows_left == 0:
            return
        for x in range(1, cap + 1):
            for tail in rec(rows_left - 1, x):
                yield (x,) + tail

    for parts in rec(max_rows, max_part):
        if parts:
            yield YoungDiagram.from_row_lengths(parts)


def block_profiles(max_cells: int, p_values: tuple[int, ...] = (1, 2, 3)) -> Iterator[YoungDiagram]:
    """Diagrams with ``|Y| <= max_cells`` whose number of blocks lies in ``p_values``."""
    top = max(p_values)

    def rec(blocks: tuple[tuple[int, int], ...], last_a: int, cells: int) -> Iterator[YoungDiagram]:
        if blocks and len(blocks) in p_values:
            yield YoungDiagram(blocks)
        if len(blocks) == top:
            return
        for a in range(last_a + 1, max_cells - cells + 1):
            for e in range(1, (max_cells - cells) // a + 1):
                yield from rec(blocks + ((a, e),), a, cells + a * e)

    yield from rec((), 0, 0)
