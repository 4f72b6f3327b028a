"""Multi-heap play with a per-heap cap.

Heaps are independent: a move picks one heap, takes 1..cap tokens from it,
and leaves that heap's cap at twice the take (clamped to what remains);
the other heaps keep their caps untouched.  The value of a sum is the
nim-sum (XOR) of per-heap values, and ``brute_force_value`` re-derives the
value from the whole move tree for cross-checking that decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .engine import GrundyTable, Position, options

__all__ = [
    "IllegalMoveError",
    "MAX_BRUTE_HEAPS",
    "MAX_BRUTE_TOKENS",
    "MoveRecord",
    "MultiHeapState",
    "apply_move",
    "brute_force_value",
    "game_value",
    "legal_moves",
    "make_move",
    "new_game",
    "parse_heaps",
    "winning_moves",
]

PLAYERS = ("first", "second")

MAX_BRUTE_HEAPS = 3
MAX_BRUTE_TOKENS = 36


class IllegalMoveError(ValueError):
    """Rejected move; carries the offending heap and its current legal cap."""

    def __init__(self, message: str, *, heap_index: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.heap_index = heap_index
        self.cap = cap


def _other(player: str) -> str:
    return "second" if player == "first" else "first"


@dataclass(frozen=True)
class MoveRecord:
    heap_index: int
    take: int
    resulting_position: Position


@dataclass(frozen=True)
class MultiHeapState:
    """Immutable game state: heaps, whose turn it is, and the move history."""

    heaps: tuple[Position, ...]
    to_move: str = "first"
    history: tuple[MoveRecord, ...] = ()

    def __post_init__(self) -> None:
        if self.to_move not in PLAYERS:
            raise ValueError(f"to_move must be one of {PLAYERS}, got {self.to_move!r}")
        object.__setattr__(self, "heaps", tuple(self.heaps))
        object.__setattr__(self, "history", tuple(self.history))

    @property
    def terminal(self) -> bool:
        """No heap has a live move: the player to move has lost."""
        return all(h.r == 0 for h in self.heaps)


def new_game(sizes: Iterable[int]) -> MultiHeapState:
    """Fresh game: each heap of n tokens starts at cap n - 1."""
    return MultiHeapState(tuple(Position.start(n) for n in sizes))


def parse_heaps(text: str) -> list[Position]:
    """Parse comma-separated ``tokens[:cap]`` pairs; cap defaults to tokens - 1.

    ``"12,7:6,5:5"`` gives three heaps.  ValueError carries the offending
    token verbatim.
    """
    raw = text.strip()
    if not raw:
        raise ValueError("empty heap list")
    heaps: list[Position] = []
    for token in raw.split(","):
        item = token.strip()
        try:
            if ":" in item:
                a, b = item.split(":", 1)
                n, r = int(a), int(b)
            else:
                n = int(item)
                r = max(n - 1, 0)
            heaps.append(Position(n, r))
        except ValueError:
            raise ValueError(f"bad heap token {item!r}: expected tokens or tokens:cap") from None
    return heaps


def format_heaps(heaps: Iterable[Position]) -> str:
    """Inverse of parse_heaps, always explicit about caps."""
    return ",".join(f"{h.n}:{h.r}" for h in heaps)


def game_value(state: MultiHeapState, table: GrundyTable) -> int:
    """Nim-sum of per-heap values; 0 for the empty state."""
    total = 0
    for h in state.heaps:
        total ^= table.value(h.n, h.r)
    return total


def legal_moves(state: MultiHeapState) -> list[MoveRecord]:
    """All moves, ordered by heap index then ascending take."""
    out: list[MoveRecord] = []
    for i, h in enumerate(state.heaps):
        out.extend(MoveRecord(i, k, q) for k, q in options(h))
    return out


def winning_moves(state: MultiHeapState, table: GrundyTable) -> list[MoveRecord]:
    """Moves whose successor state has value 0; empty iff the state is losing.

    Same ordering as legal_moves, so the output is deterministic.
    """
    total = game_value(state, table)
    out: list[MoveRecord] = []
    for i, h in enumerate(state.heaps):
        before = table.value(h.n, h.r)
        for k, q in options(h):
            if total ^ before ^ table.value(q.n, q.r) == 0:
                out.append(MoveRecord(i, k, q))
    return out


def make_move(state: MultiHeapState, heap_index: int, take: int) -> MoveRecord:
    """Build the MoveRecord for taking ``take`` from heap ``heap_index``.

    Raises IllegalMoveError (with the legal cap) if the take is out of
    range, so callers can echo the cap back to users.
    """
    if not 0 <= heap_index < len(state.heaps):
        raise IllegalMoveError(
            f"no heap {heap_index} in a {len(state.heaps)}-heap game", heap_index=heap_index
        )
    h = state.heaps[heap_index]
    if not 1 <= take <= h.r:
        raise IllegalMoveError(
            f"cannot take {take} from heap {heap_index}: legal cap is {h.r}",
            heap_index=heap_index,
            cap=h.r,
        )
    m = h.n - take
    return MoveRecord(heap_index, take, Position(m, min(2 * take, m)))


def apply_move(state: MultiHeapState, move: MoveRecord) -> MultiHeapState:
    """New state with the move applied: chosen heap replaced, turn toggled,
    history appended; every other heap is the same object as before."""
    checked = make_move(state, move.heap_index, move.take)
    if move.resulting_position != checked.resulting_position:
        raise IllegalMoveError(
            f"move claims successor {move.resulting_position}, rules give "
            f"{checked.resulting_position}",
            heap_index=move.heap_index,
            cap=state.heaps[move.heap_index].r,
        )
    i = move.heap_index
    heaps = state.heaps[:i] + (checked.resulting_position,) + state.heaps[i + 1 :]
    return MultiHeapState(heaps, _other(state.to_move), state.history + (checked,))


def brute_force_value(state: MultiHeapState, memo: dict | None = None) -> int:
    """Value of the whole sum straight from the move tree, no nim-sum.

    Exponential without memoization, so inputs are size-guarded.  Heap
    order never affects the value (moves commute with permutation), so the
    memo key is order-canonical.  By default the memo lives and dies with
    the call; a caller running many related states may pass its own.
    """
    heaps = tuple((h.n, h.r) for h in state.heaps)
    if len(heaps) > MAX_BRUTE_HEAPS:
        raise ValueError(f"brute force is limited to {MAX_BRUTE_HEAPS} heaps, got {len(heaps)}")
    total_tokens = sum(n for n, _ in heaps)
    if total_tokens > MAX_BRUTE_TOKENS:
        raise ValueError(
            f"brute force is limited to {MAX_BRUTE_TOKENS} total tokens, got {total_tokens}"
        )
    if memo is None:
        memo = {}
    return _brute(tuple(sorted(heaps)), memo)


def _brute(heaps: tuple[tuple[int, int], ...], memo: dict) -> int:
    cached = memo.get(heaps)
    if cached is not None:
        return cached
    seen = set()
    for i, (n, r) in enumerate(heaps):
        rest = heaps[:i] + heaps[i + 1 :]
        for k in range(1, r + 1):
            m = n - k
            successor = tuple(sorted(rest + ((m, min(2 * k, m)),)))
            seen.add(_brute(successor, memo))
    g = 0
    while g in seen:
        g += 1
    memo[heaps] = g
    return g
