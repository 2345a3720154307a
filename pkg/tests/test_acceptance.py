"""Acceptance criteria, one test per criterion.

The terminal summary (see ``conftest.py``) prints one PASS/FAIL line per
criterion. Criteria 2 to 4 share one pass over the corpus of wide diagrams
with at most three row lengths and at most 60 cells.
"""

from __future__ import annotations

import os
import time

import numpy as np
import pytest

from widealloc import (
    InternalInvariantError,
    YoungDiagram,
    allocate,
    embed_allocation,
    fill_exact,
    fill_via_allocation,
    find_allocation_exhaustive,
    is_wide_fast,
    is_wide_oracle,
    is_wide_tails,
    outline_to_latin,
    random_latin_square,
    random_partition,
    reduce_latin,
    residuals,
    search_top_block,
    two_block_allocation,
    verify_allocation,
    verify_filling,
    verify_outline,
)
from widealloc.corpus import block_profiles, diagrams_in_box, diagrams_up_to


@pytest.fixture(scope="module")
def wide_corpus() -> list[YoungDiagram]:
    return [Y for Y in block_profiles(60, (1, 2, 3)) if is_wide_fast(Y)]


@pytest.fixture(scope="module")
def allocations(wide_corpus):
    found, exhausted, failed = {}, [], []
    for Y in wide_corpus:
        try:
            Z = allocate(Y)
        except InternalInvariantError as exc:
            (exhausted if "exceeded" in str(exc) else failed).append((Y, str(exc)))
            continue
        if verify_allocation(Y, Z):
            found[Y] = Z
        else:
            failed.append((Y, "verify_allocation rejected the result"))
    return found, exhausted, failed


@pytest.fixture(scope="module")
def embeddings(allocations):
    found, _, _ = allocations
    return {Y: embed_allocation(Y, Z) for Y, Z in found.items()}


def test_criterion_1_wideness_agreement():
    start = time.perf_counter()
    count = 0
    disagreements = []
    for Y in diagrams_in_box(12, 10):
        count += 1
        verdicts = (is_wide_oracle(Y).wide, is_wide_tails(Y).wide, is_wide_fast(Y).wide)
        if len(set(verdicts)) != 1:
            disagreements.append((Y.rows_top_down(), verdicts))
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {count} diagrams, {len(disagreements)} disagreements, {elapsed:.1f}s")
    assert count == 646645
    assert disagreements == []
    assert elapsed < 120


def test_criterion_2_allocations(wide_corpus, allocations):
    found, exhausted, failed = allocations
    print(f"criterion 2: {len(wide_corpus)} wide diagrams, {len(found)} allocated")
    assert exhausted == []
    assert failed == []
    assert len(found) == len(wide_corpus)


def test_criterion_3_embedding(embeddings):
    bad = []
    for Y, (C, part) in embeddings.items():
        n = 2 * Y.a_(Y.p)
        e = list(Y.e) + [n - Y.m]
        b = list(Y.b) + [Y.a_(Y.p)]
        ok = (
            verify_outline(C)
            and C.n == n
            and C.rho.tolist() == [n * v for v in e]
            and C.c.tolist() == [n * v for v in b]
            and C.sigma.tolist() == [n * v for v in b]
        )
        if not ok:
            bad.append(Y.rows_top_down())
    print(f"criterion 3: {len(embeddings)} outlines, {len(bad)} failures")
    assert embeddings and bad == []


def test_criterion_4_round_trip(embeddings):
    seed = int(os.environ.get("WIDEALLOC_SEED", "0"))
    rng = np.random.default_rng(seed)
    for _ in range(100):
        n = int(rng.integers(2, 9))
        L = random_latin_square(n, rng)
        part = random_partition(n, rng)
        C = reduce_latin(L, part)
        L2, part2 = outline_to_latin(C)
        assert reduce_latin(L2, part2) == C, (seed, L.grid.tolist(), part)

    start = time.perf_counter()
    bad = []
    for Y, (C, part) in embeddings.items():
        L, found = outline_to_latin(C)
        if found != part or reduce_latin(L, part) != C:
            bad.append(Y.rows_top_down())
    print(f"criterion 4: 100 random squares (seed {seed}), {len(embeddings)} embedded outlines "
          f"reconstructed in {time.perf_counter() - start:.0f}s, {len(bad)} failures")
    assert bad == []


def test_criterion_5_wide_iff_latin():
    mismatches = []
    count = 0
    for Y in diagrams_up_to(16):
        count += 1
        if (fill_exact(Y) is not None) != is_wide_fast(Y).wide:
            mismatches.append(Y.rows_top_down())
    print(f"criterion 5: {count} diagrams, {len(mismatches)} mismatches")
    assert count == 914 and mismatches == []


def test_criterion_6_two_row_lengths():
    count = 0
    bad = []
    for Y in block_profiles(40, (2,)):
        if not is_wide_fast(Y):
            continue
        count += 1
        if not verify_filling(Y, fill_via_allocation(Y)):
            bad.append(Y.rows_top_down())
    print(f"criterion 6: {count} wide two-length diagrams, {len(bad)} failures")
    assert count > 0 and bad == []


def test_criterion_7_lower_allocation_extension():
    Y = YoungDiagram.from_row_lengths([5, 4, 3, 3])
    stuck = two_block_allocation(Y, 3)
    good = two_block_allocation(Y, 2)
    assert stuck.z == {(1, 1, 1): 6, (2, 1, 1): 3, (2, 2, 2): 1}
    assert search_top_block(Y, stuck) is None
    extension = search_top_block(Y, good)
    assert extension is not None and verify_allocation(Y, extension)
    Z = allocate(Y)
    assert (Z[3, 1, 1], Z[3, 1, 2], Z[3, 2, 1], Z[3, 2, 2]) == (1, 1, 1, 0)


def test_criterion_8_residuals(allocations):
    found, _, _ = allocations
    checked = 0
    bad = []
    for Y, Z in found.items():
        if Y.p != 3:
            continue
        checked += 1
        a1, a3 = Y.a_(1), Y.a_(3)
        e1, e2, e3 = Y.e
        b2, b3 = Y.b_(2), Y.b_(3)
        expected = (a1 * (a3 - e1 - e2 - e3), b2 * (a3 - e2 - e3), b3 * (a3 - e3))
        if residuals(Y, Z).rho != expected:
            bad.append(Y.rows_top_down())
    print(f"criterion 8: {checked} three-length allocations, {len(bad)} mismatches")
    assert checked > 0 and bad == []


def test_criterion_9_allocation_implies_wide():
    with_allocation = 0
    bad = []
    for Y in diagrams_up_to(16):
        if find_allocation_exhaustive(Y) is not None:
            with_allocation += 1
            if not is_wide_fast(Y):
                bad.append(Y.rows_top_down())
    print(f"criterion 9: {with_allocation} diagrams with an allocation, {len(bad)} not wide")
    assert with_allocation > 0 and bad == []
