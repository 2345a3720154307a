"""Wideness, allocations and Latin fillings of Young diagrams."""

from .allocation import (
    Allocation,
    IntInterval,
    allocate,
    allocate_three_blocks,
    allocation_from_filling,
    allocation_from_json,
    choose_x,
    complete_top_block,
    find_allocation_exhaustive,
    residuals,
    search_top_block,
    three_block_intervals,
    two_block_allocation,
    verify_allocation,
    x_interval,
)
from .diagram import YoungDiagram, conjugate, dominates, from_blocks, from_row_lengths, parse_diagram, tail_stats
from .errors import (
    InfeasibleExtension,
    InternalInvariantError,
    InvalidInputError,
    NotWideError,
    ScaleLimitError,
    UnsupportedError,
    WideallocError,
)
from .flows import bounded_transport
from .harness import HarnessReport, search
from .latin_fill import LatinFilling, fill_exact, fill_via_allocation, render_ascii, render_svg, verify_filling
from .outline import (
    LatinSquare,
    OutlineRectangle,
    ReductionPartition,
    embed_allocation,
    extract_filling,
    outline_to_latin,
    random_latin_square,
    random_partition,
    reduce_latin,
    verify_outline,
)
from .verdict import Verdict
from .wideness import Witness, WidenessReport, is_wide, is_wide_fast, is_wide_oracle, is_wide_tails

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
