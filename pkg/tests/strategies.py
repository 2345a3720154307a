"""Hypothesis strategies shared by the unit tests."""

from __future__ import annotations

from hypothesis import strategies as st

from widealloc import YoungDiagram


@st.composite
def diagrams(draw, max_rows: int = 8, max_len: int = 10, max_blocks: int | None = None):
    rows = draw(st.lists(st.integers(1, max_len), min_size=1, max_size=max_rows))
    if max_blocks is not None:
        keep = sorted(set(rows))[:max_blocks]
        rows = [r for r in rows if r in keep]
    return YoungDiagram.from_row_lengths(rows)
