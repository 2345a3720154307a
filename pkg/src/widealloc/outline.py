"""Outline rectangles and Latin squares.

An outline rectangle is an ``m x m`` matrix of symbol multisets over ``m``
symbol groups, stored as a dense ``(m, m, m)`` count array ``cells[i, j, k]``
together with a divisor ``n``. Amalgamating consecutive rows, columns and
symbols of an ``n x n`` Latin square produces one (:func:`reduce_latin`);
:func:`outline_to_latin` goes the other way by splitting every row group,
then every column group, then every symbol group into lines of weight one.
Odd groups shed one line through a bounded transportation problem centred on
the proportional share ``A / g``; even groups are halved along Euler trails.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .allocation import Allocation, verify_allocation
from .diagram import YoungDiagram
from .errors import InternalInvariantError, InvalidInputError
from .flows import bounded_transport
from .verdict import Verdict


@dataclass(frozen=True, eq=False)
class OutlineRectangle:
    cells: np.ndarray
    n: int

    def __post_init__(self) -> None:
        cells = np.asarray(self.cells, dtype=np.int64)
        if cells.ndim != 3 or not (cells.shape[0] == cells.shape[1] == cells.shape[2]):
            raise InvalidInputError(f"outline cells must have shape (m, m, m), got {cells.shape}")
        if np.any(cells < 0):
            raise InvalidInputError("outline cells hold negative counts")
        if self.n < 1:
            raise InvalidInputError(f"divisor n must be positive, got {self.n}")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @property
    def m(self) -> int:
        return self.cells.shape[0]

    @property
    def rho(self) -> np.ndarray:
        return self.cells.sum(axis=(1, 2))

    @property
    def c(self) -> np.ndarray:
        return self.cells.sum(axis=(0, 2))

    @property
    def sigma(self) -> np.ndarray:
        return self.cells.sum(axis=(0, 1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OutlineRectangle):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.cells, other.cells)

    def to_json(self) -> dict:
        m = self.m
        return {
            "m": m,
            "n": self.n,
            "cells": [
                [{str(k + 1): int(self.cells[i, j, k]) for k in range(m)} for j in range(m)] for i in range(m)
            ],
        }


def outline_from_json(obj: dict | str) -> OutlineRectangle:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"bad outline JSON: {exc}") from exc
    try:
        m, n = int(obj["m"]), int(obj["n"])
        cells = np.zeros((m, m, m), dtype=np.int64)
        rows = obj["cells"]
        if len(rows) != m or any(len(row) != m for row in rows):
            raise InvalidInputError(f"outline 'cells' must be {m} x {m}")
        for i, row in enumerate(rows):
            for j, counts in enumerate(row):
                for key, value in counts.items():
                    k = int(key) - 1
                    if not 0 <= k < m:
                        raise InvalidInputError(f"symbol {key} outside 1..{m}")
                    cells[i, j, k] = int(value)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"bad outline JSON: {exc}") from exc
    return OutlineRectangle(cells, n)


@dataclass(frozen=True)
class ReductionPartition:
    """Group sizes for rows ``P``, columns ``Q`` and symbols ``S``; each sums to ``n``."""

    P: tuple[int, ...]
    Q: tuple[int, ...]
    S: tuple[int, ...]

    def __post_init__(self) -> None:
        for name in ("P", "Q", "S"):
            seq = tuple(int(v) for v in getattr(self, name))
            if not seq or any(v < 1 for v in seq):
                raise InvalidInputError(f"{name} must be a nonempty sequence of positive integers")
            object.__setattr__(self, name, seq)
        if not (len(self.P) == len(self.Q) == len(self.S)):
            raise InvalidInputError("P, Q and S must have the same length")
        if not (sum(self.P) == sum(self.Q) == sum(self.S)):
            raise InvalidInputError(f"P, Q, S sum to {sum(self.P)}, {sum(self.Q)}, {sum(self.S)}")

    @property
    def n(self) -> int:
        return sum(self.P)

    @staticmethod
    def labels(sizes: Sequence[int]) -> np.ndarray:
        """Group index (0-based) of every position ``0..n-1``."""
        return np.repeat(np.arange(len(sizes)), sizes)

    def index_sets(self) -> tuple[list[range], list[range], list[range]]:
        """``X_i``, ``Y_j``, ``Z_k`` as 1-based consecutive ranges."""

        def ranges(sizes: Sequence[int]) -> list[range]:
            ends = np.cumsum(sizes)
            return [range(int(end - size) + 1, int(end) + 1) for size, end in zip(sizes, ends)]

        return ranges(self.P), ranges(self.Q), ranges(self.S)


@dataclass(frozen=True, eq=False)
class LatinSquare:
    grid: np.ndarray

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=np.int64)
        if grid.ndim != 2 or grid.shape[0] != grid.shape[1] or grid.shape[0] == 0:
            raise InvalidInputError(f"Latin square grid must be n x n, got shape {grid.shape}")
        n = grid.shape[0]
        target = np.arange(1, n + 1)
        if not all(np.array_equal(np.sort(line), target) for line in (*grid, *grid.T)):
            raise InvalidInputError("every row and column must be a permutation of 1..n")
        grid.setflags(write=False)
        object.__setattr__(self, "grid", grid)

    @property
    def n(self) -> int:
        return self.grid.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return np.array_equal(self.grid, other.grid)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(int(v)) for v in row) for row in self.grid) + "\n"


def latin_from_text(text: str) -> LatinSquare:
    try:
        rows = [[int(tok) for tok in line.split()] for line in text.strip().splitlines() if line.strip()]
        return LatinSquare(np.array(rows))
    except ValueError as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"bad Latin square text: {exc}") from exc


def cyclic_latin_square(n: int) -> LatinSquare:
    i = np.arange(n)
    return LatinSquare((i[:, None] + i[None, :]) % n + 1)


def random_latin_square(n: int, rng: np.random.Generator, shuffles: int | None = None) -> LatinSquare:
    """Cyclic square with independently permuted rows, columns and symbols.

    Each shuffle also swaps in an intercalate when one exists, so squares are
    not restricted to isotopes of the cyclic group.
    """
    g = np.array(cyclic_latin_square(n).grid)
    for _ in range(shuffles if shuffles is not None else 4 * n):
        g = g[rng.permutation(n)][:, rng.permutation(n)]
        g = rng.permutation(n)[g - 1] + 1
        r1, r2, c1, c2 = rng.integers(0, n, size=4)
        if r1 != r2 and c1 != c2 and g[r1, c1] == g[r2, c2] and g[r1, c2] == g[r2, c1]:
            g[r1, c1], g[r1, c2] = g[r1, c2], g[r1, c1]
            g[r2, c1], g[r2, c2] = g[r2, c2], g[r2, c1]
    return LatinSquare(g)


def random_partition(n: int, rng: np.random.Generator) -> ReductionPartition:
    """Random ``(P, Q, S)`` of ``n`` with a common, random number of groups."""
    m = int(rng.integers(1, n + 1))

    def composition() -> tuple[int, ...]:
        cuts = np.sort(rng.choice(np.arange(1, n), size=m - 1, replace=False))
        return tuple(int(v) for v in np.diff(np.concatenate([[0], cuts, [n]])))

    return ReductionPartition(composition(), composition(), composition())


# --- checks --------------------------------------------------------------------


def verify_outline(C: OutlineRectangle) -> Verdict:
    """Check the proportionality conditions, cell sizes first, then divisibility and totals."""
    n, n2 = C.n, C.n * C.n
    rho, col, sigma = C.rho, C.c, C.sigma
    sizes = C.cells.sum(axis=2)
    bad = np.argwhere(sizes * n2 != np.outer(rho, col))
    if bad.size:
        i, j = (int(t) for t in bad[0])
        return Verdict.failed(f"(ii) cell ({i + 1},{j + 1}) holds {int(sizes[i, j])}, expected rho_i*c_j/n^2")
    in_rows = C.cells.sum(axis=1)
    bad = np.argwhere(in_rows * n2 != np.outer(rho, sigma))
    if bad.size:
        i, k = (int(t) for t in bad[0])
        return Verdict.failed(f"(iii) symbol {k + 1} occurs {int(in_rows[i, k])} times in row {i + 1}")
    in_cols = C.cells.sum(axis=0)
    bad = np.argwhere(in_cols * n2 != np.outer(col, sigma))
    if bad.size:
        j, k = (int(t) for t in bad[0])
        return Verdict.failed(f"(iv) symbol {k + 1} occurs {int(in_cols[j, k])} times in column {j + 1}")
    for name, totals in (("rho", rho), ("c", col), ("sigma", sigma)):
        bad = np.flatnonzero(totals % n)
        if bad.size:
            i = int(bad[0])
            return Verdict.failed(f"(i) n={n} does not divide {name}_{i + 1} = {int(totals[i])}")
        if totals.sum() != n2 or np.any(totals == 0):
            return Verdict.failed(f"totals: {name} must be positive and sum to n^2 = {n2}, got {totals.tolist()}")
    return Verdict.passed()


def reduce_latin(L: LatinSquare, part: ReductionPartition) -> OutlineRectangle:
    if part.n != L.n:
        raise InvalidInputError(f"partition sums to {part.n} but the square has order {L.n}")
    m = len(part.P)
    rows = ReductionPartition.labels(part.P)
    cols = ReductionPartition.labels(part.Q)
    syms = ReductionPartition.labels(part.S)
    cells = np.zeros((m, m, m), dtype=np.int64)
    np.add.at(cells, (rows[:, None], cols[None, :], syms[L.grid - 1]), 1)
    return OutlineRectangle(cells, L.n)


# --- reconstruction -----------------------------------------------------------------


def detach(A: np.ndarray, g: int) -> np.ndarray:
    """Split one weight-1 line off a group of weight ``g``.

    ``A`` holds the group's counts; the returned ``D`` has row and column sums
    equal to those of ``A`` divided by ``g`` and every entry within one of
    ``A / g``. ``A / g`` itself is a fractional solution, so an integral one
    exists; failure raises :class:`InternalInvariantError`.
    """
    rs, cs = A.sum(axis=1), A.sum(axis=0)
    if np.any(rs % g) or np.any(cs % g):
        raise InternalInvariantError(f"group of weight {g} has line sums not divisible by {g}")
    D = bounded_transport(A // g, -(-A // g), rs // g, cs // g)
    if D is None:
        raise InternalInvariantError(f"split of a weight-{g} group is infeasible")
    return D


def halve(A: np.ndarray) -> np.ndarray:
    """Split a group whose line sums are all even into two equal halves.

    Returns ``D`` with ``floor(A/2) <= D <= ceil(A/2)`` and every line sum
    exactly half that of ``A``. The odd entries form a bipartite graph with
    all degrees even; walking its closed trails and keeping the row-to-column
    steps gives each vertex half of its odd degree.
    """
    if np.any(A.sum(axis=1) % 2) or np.any(A.sum(axis=0) % 2):
        raise InternalInvariantError("halve needs even line sums")
    D = A // 2
    ri, ci = np.nonzero(A % 2)
    if not ri.size:
        return D
    R, C = A.shape
    # Edges are numbered in row-major order, so each row's edges are contiguous.
    row_ptr = np.searchsorted(ri, np.arange(R + 1)).tolist()
    by_col = np.argsort(ci, kind="stable")
    col_ptr = np.searchsorted(ci[by_col], np.arange(C + 1)).tolist()
    row_end = row_ptr[1:]
    col_end = col_ptr[1:]
    col_edges = by_col.tolist()
    edge_r, edge_c = ri.tolist(), ci.tolist()
    used = [False] * len(edge_r)
    keep: list[int] = []
    for start in range(R):
        r = start
        while True:
            e = row_ptr[r]
            while e < row_end[r] and used[e]:
                e += 1
            row_ptr[r] = e
            if e == row_end[r]:
                break
            used[e] = True
            keep.append(e)
            c = edge_c[e]
            k = col_ptr[c]
            while used[col_edges[k]]:
                k += 1
            col_ptr[c] = k + 1
            f = col_edges[k]
            used[f] = True
            r = edge_r[f]
    D[ri[keep], ci[keep]] += 1
    return D


def _split_group(A: np.ndarray, g: int) -> list[np.ndarray]:
    """Cut a weight-``g`` group into ``g`` weight-1 lines, in a fixed order."""
    A = np.array(A, dtype=np.int64)
    if g == 1:
        return [A]
    if g % 2 == 0:
        D = halve(A)
        return _split_group(D, g // 2) + _split_group(A - D, g // 2)
    D = detach(A, g)
    return [D] + _split_group(A - D, g - 1)


def _order(weights: np.ndarray) -> list[int]:
    # Largest group first, ties by lowest index.
    return sorted(range(len(weights)), key=lambda i: (-int(weights[i]), i))


def outline_to_latin(C: OutlineRectangle) -> tuple[LatinSquare, ReductionPartition]:
    """A Latin square whose reduction by the returned partition is exactly ``C``."""
    verdict = verify_outline(C)
    if not verdict:
        raise InvalidInputError(f"not an outline rectangle: {verdict.violation}")
    n, m = C.n, C.m
    P, Q, S = C.rho // n, C.c // n, C.sigma // n
    part = ReductionPartition(tuple(P), tuple(Q), tuple(S))
    row_start = np.concatenate([[0], np.cumsum(P)])
    col_start = np.concatenate([[0], np.cumsum(Q)])
    sym_start = np.concatenate([[0], np.cumsum(S)])

    # rows: group i -> P[i] rows, each a (column group x symbol group) table
    by_row = np.zeros((n, m, m), dtype=np.int64)
    for i in _order(P):
        for t, D in enumerate(_split_group(C.cells[i], int(P[i]))):
            by_row[row_start[i] + t] = D

    # columns: group j -> Q[j] columns; each cell then holds exactly one symbol group
    group = np.full((n, n), -1, dtype=np.int64)
    for j in _order(Q):
        for t, D in enumerate(_split_group(by_row[:, j, :], int(Q[j]))):
            if np.any(D.sum(axis=1) != 1):
                raise InternalInvariantError("column split left a cell without exactly one symbol")
            group[:, col_start[j] + t] = D.argmax(axis=1)

    # symbols: group k -> S[k] symbols; its cells form an S[k]-regular bipartite graph
    grid = np.zeros((n, n), dtype=np.int64)
    for k in _order(S):
        mask = (group == k).astype(np.int64)
        for t, D in enumerate(_split_group(mask, int(S[k]))):
            grid[D == 1] = sym_start[k] + t + 1

    L = LatinSquare(grid)
    if reduce_latin(L, part) != C:
        raise InternalInvariantError("reconstructed square does not reduce to the input outline")
    return L, part


# --- allocations ----------------------------------------------------------------------


def embed_table(Y: YoungDiagram, Z: Allocation) -> np.ndarray:
    """The ``(p+1)^3`` completion of ``Z``, 0-based ``[i, j, k]``."""
    p = Y.p
    a_p = Y.a_(p)
    n = 2 * a_p
    e = list(Y.e) + [n - Y.m]
    b = list(Y.b) + [a_p]
    q = p + 1
    z = np.zeros((q, q, q), dtype=np.int64)
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            for k in range(1, q + 1):
                if k <= p and max(j, k) <= i:
                    z[i - 1, j - 1, k - 1] = Z[i, j, k]
                elif k == q and i < j:
                    z[i - 1, j - 1, k - 1] = e[i - 1] * b[j - 1]
    for i in range(1, p + 1):
        for k in range(1, q + 1):
            z[i - 1, q - 1, k - 1] = e[i - 1] * b[k - 1] - z[i - 1, :p, k - 1].sum()
    for j in range(1, q + 1):
        for k in range(1, q + 1):
            z[q - 1, j - 1, k - 1] = b[j - 1] * b[k - 1] - z[:p, j - 1, k - 1].sum()
    return z


def embed_allocation(Y: YoungDiagram, Z: Allocation) -> tuple[OutlineRectangle, ReductionPartition]:
    """Embed ``Z`` into a ``(p+1) x (p+1)`` outline rectangle with ``n = 2 a_p``."""
    verdict = verify_allocation(Y, Z)
    if not verdict:
        raise InvalidInputError(f"invalid allocation: {verdict.violation}")
    z = embed_table(Y, Z)
    if np.any(z < 0):
        i, j, k = (int(t) + 1 for t in np.argwhere(z < 0)[0])
        raise InternalInvariantError(f"embedded entry z[{i},{j},{k}] is negative for {Y}")
    n = 2 * Y.a_(Y.p)
    C = OutlineRectangle(z, n)
    part = ReductionPartition(Y.e + (n - Y.m,), Y.b + (Y.a_(Y.p),), Y.b + (Y.a_(Y.p),))
    return C, part


def extract_filling(L: LatinSquare, part: ReductionPartition, Y: YoungDiagram):
    """Cut the diagram's shape out of ``L``: row block ``i`` keeps column blocks ``j <= i``."""
    from .latin_fill import LatinFilling, verify_filling

    p = Y.p
    if len(part.P) != p + 1 or part.P[:p] != Y.e or part.Q[:p] != Y.b or part.S[:p] != Y.b:
        raise InvalidInputError("partition does not come from embedding this diagram")
    X, _, _ = part.index_sets()
    rows = []
    for i in range(p, 0, -1):
        a_i = Y.a_(i)
        for r in X[i - 1]:
            row = tuple(int(v) for v in L.grid[r - 1, :a_i])
            if max(row) > a_i:
                raise InternalInvariantError(f"symbol {max(row)} > a_{i} = {a_i} in row block {i}")
            rows.append(row)
    F = LatinFilling(Y, tuple(rows))
    verdict = verify_filling(Y, F)
    if not verdict:
        raise InternalInvariantError(f"extracted filling invalid: {verdict.violation}")
    return F
