from __future__ import annotations

from itertools import product

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from widealloc import bounded_transport


def brute_feasible(lower, upper, rows, cols):
    R, C = lower.shape
    ranges = [range(int(lower[r, c]), int(upper[r, c]) + 1) for r in range(R) for c in range(C)]
    for values in product(*ranges):
        D = np.array(values).reshape(R, C)
        if (D.sum(axis=1) == rows).all() and (D.sum(axis=0) == cols).all():
            return True
    return False


@st.composite
def instances(draw, max_cap: int):
    R = draw(st.integers(1, 3))
    C = draw(st.integers(1, 3))
    lower = np.array(draw(st.lists(st.integers(0, 1), min_size=R * C, max_size=R * C))).reshape(R, C)
    slack = np.array(draw(st.lists(st.integers(0, max_cap), min_size=R * C, max_size=R * C))).reshape(R, C)
    upper = lower + slack
    # marginals from a random matrix inside the box, then maybe perturbed to make it infeasible
    pick = np.array(draw(st.lists(st.integers(0, 100), min_size=R * C, max_size=R * C))).reshape(R, C)
    D = lower + pick % (slack + 1)
    rows, cols = D.sum(axis=1), D.sum(axis=0)
    if draw(st.booleans()):
        r = draw(st.integers(0, R - 1))
        c = draw(st.integers(0, C - 1))
        rows = rows.copy()
        cols = cols.copy()
        rows[r] += 1
        cols[c] += 1
    return lower, upper, rows, cols


def check(lower, upper, rows, cols):
    got = bounded_transport(lower, upper, rows, cols)
    expected = brute_feasible(lower, upper, rows, cols)
    assert (got is not None) == expected
    if got is not None:
        assert (got >= lower).all() and (got <= upper).all()
        assert (got.sum(axis=1) == rows).all() and (got.sum(axis=0) == cols).all()


@settings(max_examples=150, deadline=None)
@given(instances(max_cap=1))
def test_unit_capacity_against_brute_force(inst):
    check(*inst)


@settings(max_examples=150, deadline=None)
@given(instances(max_cap=3))
def test_general_capacity_against_brute_force(inst):
    check(*inst)


def test_trivial_and_inconsistent():
    z = np.zeros((2, 2), dtype=int)
    assert (bounded_transport(z, z, [0, 0], [0, 0]) == 0).all()
    assert bounded_transport(z, z + 1, [1, 0], [0, 0]) is None
    assert bounded_transport(z + 1, z, [1, 1], [1, 1]) is None
    assert bounded_transport(z + 1, z + 1, [1, 1], [1, 1]) is None


def test_permutation_from_all_ones():
    n = 6
    D = bounded_transport(np.zeros((n, n), int), np.ones((n, n), int), np.ones(n, int), np.ones(n, int))
    assert (D.sum(axis=0) == 1).all() and (D.sum(axis=1) == 1).all()
