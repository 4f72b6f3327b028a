"""Fibonacci nim: exact analysis, verification sweeps, and perfect play."""

from .analysis import (
    FirstBlockWitness,
    ScanReport,
    SmallValueClass,
    classify_small,
    first_block,
    h_of,
    j_prefix,
    verify_growth,
    verify_small_values,
)
from .engine import (
    DEFAULT_MAX_N,
    CeilingError,
    GrundyRow,
    GrundyTable,
    HorizonError,
    Position,
    build_table,
    grundy,
    grundy_start,
    mex,
    options,
    table_to_csv,
    winning_removals,
)
from .multiheap import (
    IllegalMoveError,
    MoveRecord,
    MultiHeapState,
    apply_move,
    brute_force_value,
    game_value,
    legal_moves,
    new_game,
    parse_heaps,
    winning_moves,
)
from .zeckendorf import INFINITY, ZeckendorfRep, fib, is_fibonacci, z_part, zeckendorf

__version__ = "0.1.0"
