"""Amalgamating a Latin square and getting one back.

Grouping consecutive rows, columns and symbols of a Latin square gives an
outline rectangle: a small matrix of symbol counts. Any outline rectangle
comes from some Latin square, and ``outline_to_latin`` finds one.
"""

from __future__ import annotations

import numpy as np

from widealloc import ReductionPartition, outline_to_latin, random_latin_square, reduce_latin, verify_outline

rng = np.random.default_rng(2024)
L = random_latin_square(7, rng)
print("original square:")
print(L.to_text())

part = ReductionPartition(P=(3, 2, 2), Q=(1, 4, 2), S=(2, 2, 3))
C = reduce_latin(L, part)
print(f"outline rectangle, n = {C.n}, row totals {C.rho.tolist()}, symbol totals {C.sigma.tolist()}")
for i in range(C.m):
    print("  " + "  ".join("{" + ",".join(str(v) for v in C.cells[i, j]) + "}" for j in range(C.m)))
print(f"verify_outline: {bool(verify_outline(C))}")

L2, part2 = outline_to_latin(C)
print("\nreconstructed square (usually a different one):")
print(L2.to_text())
print(f"same outline after reducing again: {reduce_latin(L2, part2) == C}")
