"""Integer transportation with lower and upper bounds.

Find an integer matrix ``D`` with ``lower <= D <= upper`` and prescribed row
and column sums. Lower bounds are shifted out, the rest is a bipartite
max-flow (source -> rows -> columns -> sink). Unit-capacity instances, the
only kind the outline splitter produces, use an augmenting-path b-matching;
everything else goes to scipy's max-flow.
"""

from __future__ import annotations

from collections import deque

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow


def bounded_transport(
    lower: np.ndarray,
    upper: np.ndarray,
    row_sums: np.ndarray,
    col_sums: np.ndarray,
) -> np.ndarray | None:
    """Return a feasible ``D`` or None when none exists."""
    lower = np.asarray(lower, dtype=np.int64)
    upper = np.asarray(upper, dtype=np.int64)
    row_sums = np.asarray(row_sums, dtype=np.int64)
    col_sums = np.asarray(col_sums, dtype=np.int64)
    if np.any(lower > upper):
        return None
    need_r = row_sums - lower.sum(axis=1)
    need_c = col_sums - lower.sum(axis=0)
    if np.any(need_r < 0) or np.any(need_c < 0) or need_r.sum() != need_c.sum():
        return None
    slack = upper - lower
    total = int(need_r.sum())
    if total == 0:
        return lower.copy()

    if slack.max() <= 1:
        extra = _unit_bmatching(slack, need_r, need_c, total)
    else:
        extra = _max_flow(slack, need_r, need_c, total)
    if extra is None:
        return None
    return lower + extra


def _unit_bmatching(slack: np.ndarray, need_r: np.ndarray, need_c: np.ndarray, total: int) -> np.ndarray | None:
    # 0/1 edge capacities: greedy start, then BFS augmenting paths.
    # Plain lists beat building a sparse graph at the sizes seen here.
    adj: list[list[int]] = [[] for _ in range(slack.shape[0])]
    for r, c in zip(*(idx.tolist() for idx in np.nonzero(slack))):
        adj[r].append(c)
    left_r = need_r.tolist()
    left_c = need_c.tolist()
    taken = [set() for _ in adj]
    holders: list[set[int]] = [set() for _ in left_c]
    flow = 0
    for r, cols in enumerate(adj):
        for c in cols:
            if not left_r[r]:
                break
            if left_c[c]:
                taken[r].add(c)
                holders[c].add(r)
                left_r[r] -= 1
                left_c[c] -= 1
                flow += 1
    while flow < total:
        starts = [r for r in range(len(adj)) if left_r[r]]
        parent_col: dict[int, int] = {}
        parent_row: dict[int, int] = {r: -1 for r in starts}
        queue = deque(starts)
        end = -1
        while queue and end < 0:
            r = queue.popleft()
            for c in adj[r]:
                if c in taken[r] or c in parent_col:
                    continue
                parent_col[c] = r
                if left_c[c]:
                    end = c
                    break
                for r2 in holders[c]:
                    if r2 not in parent_row:
                        parent_row[r2] = c
                        queue.append(r2)
        if end < 0:
            return None
        c = end
        left_c[c] -= 1
        while True:
            r = parent_col[c]
            taken[r].add(c)
            holders[c].add(r)
            prev = parent_row[r]
            if prev < 0:
                left_r[r] -= 1
                break
            taken[r].discard(prev)
            holders[prev].discard(r)
            c = prev
        flow += 1
    extra = np.zeros_like(slack)
    for r, cols in enumerate(taken):
        if cols:
            extra[r, list(cols)] = 1
    return extra


def _max_flow(slack: np.ndarray, need_r: np.ndarray, need_c: np.ndarray, total: int) -> np.ndarray | None:
    R, C = slack.shape
    source, sink = 0, R + C + 1
    ri, ci = np.nonzero(slack)
    heads = np.concatenate([np.full(R, source), 1 + ri, 1 + R + np.arange(C)])
    tails = np.concatenate([1 + np.arange(R), 1 + R + ci, np.full(C, sink)])
    caps = np.concatenate([need_r, slack[ri, ci], need_c]).astype(np.int32)
    graph = csr_matrix((caps, (heads, tails)), shape=(R + C + 2, R + C + 2))
    result = maximum_flow(graph, source, sink)
    if result.flow_value != total:
        return None
    flow = result.flow.tocsr()
    extra = np.zeros_like(slack)
    extra[ri, ci] = np.asarray(flow[1 + ri, 1 + R + ci]).ravel()
    return extra
