from __future__ import annotations

import pytest

from widealloc import ScaleLimitError, search
from widealloc.corpus import block_profiles, diagrams_in_box, diagrams_up_to, partitions
from widealloc.harness import check_diagram


def test_partition_counts_and_order():
    assert [len(list(partitions(n))) for n in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert list(partitions(4)) == [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]
    assert list(partitions(0)) == []


def test_corpora():
    assert sum(1 for _ in diagrams_up_to(16)) == 914
    assert all(Y.p <= 2 for Y in diagrams_up_to(10, max_p=2))
    # diagrams in an r x c box: binom(r + c, r) minus the empty one
    assert sum(1 for _ in diagrams_in_box(4, 3)) == 34
    assert {Y.p for Y in block_profiles(20, (2, 3))} == {2, 3}
    assert sum(1 for _ in block_profiles(12)) == sum(1 for Y in diagrams_up_to(12) if Y.p <= 3)


def test_search_sixteen():
    report = search(16)
    assert report.ok and report.diagrams == 914
    assert report.wide == report.latin


def test_search_pipeline_matches_exact():
    report = search(16, max_p=3)
    assert report.ok
    assert report.allocated == report.latin == report.wide


def test_empty_corpus():
    report = search(0)
    assert report.diagrams == 0 and report.ok


def test_scale_gate():
    with pytest.raises(ScaleLimitError):
        search(65)


def test_report_is_deterministic_and_parallel_safe():
    a = search(11).to_json()
    b = search(11).to_json()
    c = search(11, jobs=2).to_json()
    assert a == b == c


def test_check_diagram_clean_on_5433():
    result = check_diagram((5, 4, 3, 3))
    assert result.wide and result.latin and result.allocated and not result.disagreements
