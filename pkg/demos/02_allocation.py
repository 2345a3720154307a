"""Allocations for three row lengths, on the diagram (5,4,3,3).

An allocation says how many symbols of each symbol block land in each
(row block, column block) rectangle. For two blocks one number ``x`` fixes
everything; a third block adds ``u, v = y, w``, chosen from intervals and
nudged into place by unit exchange moves.
"""

from __future__ import annotations

from widealloc import YoungDiagram, allocate_three_blocks, residuals, search_top_block, two_block_allocation
from widealloc.diagram import lower_blocks

Y = YoungDiagram.from_row_lengths([5, 4, 3, 3])
Z, trace = allocate_three_blocks(Y)
I = trace.intervals
print(f"x = {I.x}")
print(f"I_u = {I.u}, I_y = {I.y}, I_w = {I.w}, total = {I.total}")
print(f"split s = {trace.s} into s1 = {trace.s1}, s2 = {trace.s2}; start (u, y, w) = {trace.start}")
for step in trace.steps:
    print(f"  {step.move:8s} -> (u, y, w) = ({step.u}, {step.y}, {step.w})")
print(f"final (u, y, w) = {trace.final}")
for (i, j, k), v in sorted(Z.z.items()):
    print(f"  z[{i},{j},{k}] = {v}")

R = residuals(Y, Z)
print(f"residual capacity per column block: {R.rho} (closed form {R.rho_closed})")

# The lower two blocks admit x = 2 or x = 3; only one of them extends.
print(f"\nlower diagram {lower_blocks(Y, 2)}")
for x in (2, 3):
    ext = search_top_block(Y, two_block_allocation(Y, x))
    print(f"  x = {x}: {'extends' if ext is not None else 'cannot be extended'}")
