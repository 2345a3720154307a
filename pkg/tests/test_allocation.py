from __future__ import annotations

import json

import pytest
from hypothesis import given

from strategies import diagrams
from widealloc import (
    Allocation,
    InfeasibleExtension,
    InternalInvariantError,
    InvalidInputError,
    IntInterval,
    NotWideError,
    ScaleLimitError,
    UnsupportedError,
    YoungDiagram,
    allocate,
    allocate_three_blocks,
    allocation_from_filling,
    allocation_from_json,
    choose_x,
    complete_top_block,
    fill_exact,
    fill_via_allocation,
    find_allocation_exhaustive,
    is_wide_fast,
    residuals,
    search_top_block,
    two_block_allocation,
    verify_allocation,
    x_interval,
)
from widealloc.corpus import block_profiles, diagrams_up_to
from widealloc.diagram import lower_blocks

Z5433 = {
    (1, 1, 1): 6,
    (2, 1, 1): 2,
    (2, 1, 2): 1,
    (2, 2, 1): 1,
    (3, 1, 1): 1,
    (3, 1, 2): 1,
    (3, 1, 3): 1,
    (3, 2, 1): 1,
    (3, 3, 1): 1,
}


def test_interval_arithmetic():
    I, J = IntInterval(1, 4), IntInterval(3, 9)
    assert (I + J) == IntInterval(4, 13)
    assert (I & J) == IntInterval(3, 4)
    assert (IntInterval(5, 2)).empty and len(IntInterval(5, 2)) == 0
    assert I.clamp(-3) == 1 and I.clamp(7) == 4 and 2 in I
    with pytest.raises(ValueError):
        IntInterval(2, 1).clamp(0)


def test_allocation_index_checks():
    with pytest.raises(InvalidInputError):
        Allocation(2, {(1, 2, 1): 1})
    with pytest.raises(InvalidInputError):
        Allocation(0, {})
    assert Allocation(2, {(2, 1, 2): 0}).z == {}


def test_json_round_trip():
    Z = Allocation(3, Z5433)
    assert allocation_from_json(json.dumps(Z.to_json())) == Z
    assert Z.to_json()["z"]["1,1,1"] == 6
    with pytest.raises(InvalidInputError):
        allocation_from_json('{"z":{}}')
    with pytest.raises(InvalidInputError):
        allocation_from_json('{"p":2,"z":{"1;1;1":1}}')


def test_known_allocation_valid(y5433):
    assert verify_allocation(y5433, Allocation(3, Z5433))


def test_zero_allocation_invalid(y5433):
    verdict = verify_allocation(y5433, Allocation(3, {}))
    assert not verdict and "sum" in verdict.violation


def test_capacity_violation_named():
    # Two rows of length 2: block 1 can't put both symbols of block 1 twice into one column pair.
    Y = YoungDiagram.from_row_lengths([2, 1])
    Z = Allocation(2, {(1, 1, 1): 1, (2, 1, 1): 1, (2, 2, 2): 1})
    verdict = verify_allocation(Y, Z)
    assert not verdict and verdict.violation.startswith("capacity")


def test_lower_allocations_5433(y5433):
    Yp = lower_blocks(y5433, 2)
    assert Yp.rows_top_down() == (4, 3, 3)
    bad = two_block_allocation(y5433, 3)
    assert bad.z == {(1, 1, 1): 6, (2, 1, 1): 3, (2, 2, 2): 1}
    assert verify_allocation(Yp, bad)
    good = two_block_allocation(y5433, 2)
    assert verify_allocation(Yp, good)
    with pytest.raises(InvalidInputError):
        two_block_allocation(y5433, 4)


def test_choose_x_examples(y5433):
    x, I_x = choose_x(lower_blocks(y5433, 2))
    assert x == 2 and I_x == IntInterval(2, 3)
    Z = allocate(lower_blocks(y5433, 2))
    assert (Z[2, 1, 1], Z[2, 1, 2], Z[2, 2, 1], Z[2, 2, 2]) == (2, 1, 1, 0)
    # e_2 <= b_2 and a_1 <= b_2: x = 0
    assert choose_x(YoungDiagram(((1, 1), (5, 2))))[0] == 0


def test_choose_x_is_left_end_on_corpus():
    for Y in block_profiles(40, (2,)):
        if is_wide_fast(Y):
            x, I_x = choose_x(Y)
            assert x == I_x.lo == x_interval(Y).lo


def test_three_block_trace_5433(y5433):
    Z, trace = allocate_three_blocks(y5433)
    assert Z == Allocation(3, Z5433)
    assert trace.final == (1, 1, 0)
    assert trace.start == (3, 0, 0)
    assert [s.move for s in trace.steps] == ["lift-y", "lower-u"]
    assert trace.final[0] in trace.intervals.u


def test_allocate_small_cases():
    assert allocate(YoungDiagram(((4, 3),))) == Allocation(1, {(1, 1, 1): 12})
    with pytest.raises(NotWideError):
        allocate(YoungDiagram.from_row_lengths([2, 2, 2]))
    with pytest.raises(UnsupportedError):
        allocate(YoungDiagram.from_row_lengths([4, 3, 2, 1]))
    with pytest.raises(InvalidInputError):
        allocate_three_blocks(YoungDiagram.from_row_lengths([2, 1]))


@given(diagrams(max_rows=10, max_len=14, max_blocks=3))
def test_allocate_verifies(Y):
    if is_wide_fast(Y):
        assert verify_allocation(Y, allocate(Y))


def test_extensions_5433(y5433):
    assert search_top_block(y5433, two_block_allocation(y5433, 3)) is None
    ext = search_top_block(y5433, two_block_allocation(y5433, 2))
    assert ext is not None and verify_allocation(y5433, ext)


def test_complete_top_block_is_forced(y5433):
    lower = two_block_allocation(y5433, 2)
    Z = complete_top_block(y5433, lower, {(1, 1): 1, (1, 2): 1, (2, 1): 1, (2, 2): 0})
    assert Z == Allocation(3, Z5433)
    with pytest.raises(InfeasibleExtension):
        complete_top_block(y5433, lower, {(1, 1): 5})
    with pytest.raises(InvalidInputError):
        complete_top_block(y5433, lower, {(3, 1): 1})


def test_complete_top_block_two_blocks_matches_formulas():
    for Y in block_profiles(30, (2,)):
        if not is_wide_fast(Y):
            continue
        x, _ = choose_x(Y)
        lower = allocate(lower_blocks(Y, 1))
        Z = complete_top_block(Y, lower, {(1, 1): x})
        assert Z == allocate(Y)


def test_search_top_block_gate():
    Y = YoungDiagram.from_row_lengths([9, 4, 3])
    with pytest.raises(ScaleLimitError):
        search_top_block(Y, allocate(lower_blocks(Y, 2)))


def test_exhaustive_search_examples(y5433):
    assert verify_allocation(y5433, find_allocation_exhaustive(y5433))
    assert find_allocation_exhaustive(YoungDiagram.from_row_lengths([2, 2, 2])) is None
    with pytest.raises(ScaleLimitError):
        find_allocation_exhaustive(YoungDiagram(((5, 5),)))


def test_allocation_from_fillings():
    for rows in ([3, 2, 1], [5, 4, 3, 3], [4, 4, 2, 1]):
        Y = YoungDiagram.from_row_lengths(rows)
        assert verify_allocation(Y, allocation_from_filling(Y, fill_exact(Y)))
    Y = YoungDiagram.from_row_lengths([5, 4, 3, 3])
    assert verify_allocation(Y, allocation_from_filling(Y, fill_via_allocation(Y)))
    assert allocation_from_filling(YoungDiagram(((4, 1),)), fill_exact(YoungDiagram(((4, 1),)))).z == {(1, 1, 1): 4}


def test_every_filling_gives_an_allocation():
    for Y in diagrams_up_to(10):
        F = fill_exact(Y)
        if F is not None:
            assert verify_allocation(Y, allocation_from_filling(Y, F))


def test_residuals_5433(y5433):
    R = residuals(y5433, allocate(y5433))
    assert R.rho == (3, 3, 4) == R.rho_closed
    x = R.x_resid
    assert x[3, 1, 2] == x[3, 2, 1] and x[3, 1, 3] == x[3, 3, 1]


def test_residual_sum_identity():
    for Y in block_profiles(30, (3,)):
        if not is_wide_fast(Y):
            continue
        Z = allocate(Y)
        R = residuals(Y, Z)
        b = Y.b
        used = sum(Z[i, j, k] for i, j, k in Z.indices())
        assert sum(R.rho) == sum(b[j] * b[k] for j in range(3) for k in range(3)) - used
        assert R.rho == R.rho_closed


def test_residuals_reject_invalid(y5433):
    with pytest.raises(InvalidInputError):
        residuals(y5433, Allocation(3, {}))


def test_internal_error_type_is_assertion():
    assert issubclass(InternalInvariantError, AssertionError)
