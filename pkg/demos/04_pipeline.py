"""From a wide diagram to a Latin filling through an allocation.

The allocation is embedded into a (p+1) x (p+1) outline rectangle of order
2 a_p, the outline is turned into a Latin square, and the diagram is cut
out of its corner. The exact backtracking filler is run alongside as a check.
"""

from __future__ import annotations

import time

from widealloc import (
    YoungDiagram,
    allocate,
    embed_allocation,
    fill_exact,
    fill_via_allocation,
    outline_to_latin,
    render_ascii,
    verify_filling,
)
from widealloc.corpus import block_profiles
from widealloc.wideness import is_wide_fast

Y = YoungDiagram.from_row_lengths([5, 4, 3, 3])
C, part = embed_allocation(Y, allocate(Y))
L, _ = outline_to_latin(C)
print(f"embedded with P = {part.P}, Q = S = {part.Q}; the {L.n} x {L.n} square:")
print(L.to_text())
F = fill_via_allocation(Y)
print("filling cut from the corner:")
print(render_ascii(F))
print(f"verified: {bool(verify_filling(Y, F))}")
print(f"exact filler agrees that a filling exists: {fill_exact(Y) is not None}")

# A sweep: every wide diagram with three row lengths and at most 24 cells.
start = time.perf_counter()
count = 0
for Z in block_profiles(24, (3,)):
    if is_wide_fast(Z):
        assert verify_filling(Z, fill_via_allocation(Z))
        count += 1
print(f"\nfilled and verified {count} wide three-length diagrams in {time.perf_counter() - start:.1f}s")
