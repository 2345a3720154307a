"""Deciding wideness three ways.

A diagram is wide when every choice of rows dominates its own conjugate.
Checking that literally means looking at every row subset; it is enough to
look at tails, and it is enough to evaluate a handful of inequalities in the
block profile. This script runs all three on a few diagrams and shows the
witness each one reports when the answer is no.
"""

from __future__ import annotations

from widealloc import YoungDiagram, conjugate, is_wide_fast, is_wide_oracle, is_wide_tails

for rows in ([5, 4, 3, 3], [3, 2, 1], [2, 2, 2], [6, 6, 1, 1, 1, 1], [4, 4, 4, 3]):
    Y = YoungDiagram.from_row_lengths(rows)
    print(f"{Y}  blocks {Y.blocks}  conjugate {conjugate(Y)}")
    for decide in (is_wide_oracle, is_wide_tails, is_wide_fast):
        report = decide(Y)
        verdict = "wide" if report.wide else "not wide"
        extra = f"  checks={report.checks}" if report.checks else ""
        print(f"  {decide.__name__:15s} {verdict}{extra}")
        if report.witness is not None:
            w = report.witness
            print(f"    witness: {w.kind}, {w.lhs} < {w.rhs}")
    print()

# The fast battery never needs more than p + p(p-1)/2 inequalities,
# however many rows the diagram has.
big = YoungDiagram(((40, 10), (90, 30), (200, 60)))
print(f"{big.m} rows, {big.size} cells: wide={is_wide_fast(big).wide}, checks={is_wide_fast(big).checks}")
