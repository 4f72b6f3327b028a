"""Single-heap position engine: exact Grundy values of (n, r) pairs.

A position holds ``n`` tokens under a removal cap ``r``; taking ``k``
tokens (1 <= k <= r) leads to ``(n - k, min(2k, n - k))``.  The value of a
position is the mex over its successors' values.  Along a row the option
set only grows with ``r``, so the value is a nondecreasing step function
of ``r`` and each row is stored as a handful of (r_start, value)
run-length segments.

``build_table`` never walks options one at a time.  For each row it wants,
per candidate value ``g``, the first removal whose successor has value
``g``; the row's steps fall straight out of that first-occurrence profile.
Successor values come in two regimes:

* large removals (``2k >= n - k``): the successor cap clamps to the whole
  remaining heap, so the value is the diagonal value of heap ``n - k`` --
  a reversed slice of the running diagonal array;
* small removals: the value is an interior cell of a recent row.  Each
  finished row publishes those cells ahead of time into a scratch pad of
  future options (one vectorized diagonal write per stored segment), so
  the consumer just reads a slice.

Total work is O(max_n^2) element operations, all in bulk numpy; the
scratch pad costs about max_n^2 / 6 bytes and is released when the build
returns.  ``naive_table`` (fresh mex per cell, straight from the
definition) and ``build_table_dense`` (incremental mex, uncompressed rows)
are intentionally independent routes kept for differential testing.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

__all__ = [
    "DEFAULT_CEILING",
    "DEFAULT_MAX_N",
    "CeilingError",
    "DenseTable",
    "GrundyRow",
    "GrundyTable",
    "HorizonError",
    "Position",
    "build_table",
    "build_table_dense",
    "grundy",
    "grundy_start",
    "mex",
    "naive_table",
    "options",
    "table_to_csv",
    "winning_removals",
]

DEFAULT_MAX_N = 20_000
# Guards the ~max_n^2/6-byte build scratch; raise explicitly to go higher.
DEFAULT_CEILING = 40_000

# Values live in int8 scratch during the build.  Diagonal values grow like
# a logarithm in practice and are provably below 2*sqrt(n)+2, so the guard
# only trips if the horizon is pushed far beyond anything supported.
_VALUE_GUARD = 120
_FO_SIZE = _VALUE_GUARD + 8


class HorizonError(ValueError):
    """A position lies beyond the table's build horizon."""


class CeilingError(ValueError):
    """Requested build horizon exceeds the configured resource ceiling."""


def mex(values: Iterable[int]) -> int:
    """Least nonnegative integer not in ``values`` (0 for an empty set)."""
    seen = set(values)
    g = 0
    while g in seen:
        g += 1
    return g


@dataclass(frozen=True)
class Position:
    """Heap of ``n`` tokens with removal cap ``r``, normalized so r <= n."""

    n: int
    r: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.r < 0:
            raise ValueError(f"position fields must be nonnegative, got ({self.n}, {self.r})")
        if self.r > self.n:
            object.__setattr__(self, "r", self.n)

    @classmethod
    def start(cls, n: int) -> "Position":
        """Fresh heap of ``n`` tokens: the opener may take up to n - 1."""
        if n < 1:
            raise ValueError(f"a fresh heap needs at least one token, got {n}")
        return cls(n, n - 1)


def options(p: Position) -> list[tuple[int, Position]]:
    """All (take, successor) pairs from ``p``; empty exactly when r = 0."""
    out = []
    for k in range(1, p.r + 1):
        m = p.n - k
        out.append((k, Position(m, min(2 * k, m))))
    return out


@dataclass(frozen=True)
class GrundyRow:
    """One heap size's values over r, as (r_start, value) segments.

    ``breaks`` ascends starting at 0, ``values`` strictly increases
    starting at 0 (no move exists at r = 0), and segment j covers
    r in [breaks[j], breaks[j+1]) with the last running to r = n.
    """

    n: int
    breaks: tuple[int, ...]
    values: tuple[int, ...]

    def lookup(self, r: int) -> int:
        if not 0 <= r <= self.n:
            raise ValueError(f"cap {r} out of range for heap {self.n}")
        return self.values[bisect_right(self.breaks, r) - 1]

    def segments(self) -> list[tuple[int, int]]:
        return list(zip(self.breaks, self.values))

    def dense(self) -> np.ndarray:
        """Expand to an array of length n + 1 indexed by r."""
        bounds = np.append(np.asarray(self.breaks, dtype=np.int64), self.n + 1)
        return np.repeat(np.asarray(self.values, dtype=np.int16), np.diff(bounds))


@dataclass
class GrundyTable:
    """Rows 0..max_n plus the diagonal G(n, n) as a flat array."""

    rows: list[GrundyRow]
    max_n: int
    diagonal: np.ndarray = field(repr=False)

    def value(self, n: int, r: int) -> int:
        """G(n, r) after normalizing r to min(r, n)."""
        if n < 0 or r < 0:
            raise ValueError(f"expected nonnegative (n, r), got ({n}, {r})")
        if n > self.max_n:
            raise HorizonError(f"heap size {n} exceeds table horizon {self.max_n}; rebuild larger")
        return self.rows[n].lookup(min(r, n))

    def start_value(self, n: int) -> int:
        """G(n, n - 1), the value of a fresh heap of n tokens."""
        if n < 1:
            raise ValueError(f"start value needs n >= 1, got {n}")
        return self.value(n, n - 1)


def grundy(p: Position, table: GrundyTable) -> int:
    """Grundy value of ``p`` from a built table."""
    return table.value(p.n, p.r)


def grundy_start(n: int, table: GrundyTable) -> int:
    """Grundy value of the fresh-heap position (n, n - 1)."""
    return table.start_value(n)


def winning_removals(p: Position, table: GrundyTable) -> list[int]:
    """Removals whose successor has value 0, ascending; empty iff p is losing."""
    if p.n > table.max_n:
        raise HorizonError(f"heap size {p.n} exceeds table horizon {table.max_n}; rebuild larger")
    return [k for k, q in options(p) if table.value(q.n, q.r) == 0]


def build_table(max_n: int, *, ceiling: int = DEFAULT_CEILING) -> GrundyTable:
    """Build compressed rows 0..max_n bottom-up.

    See the module docstring for the two-regime scheme.  Raises
    CeilingError above ``ceiling`` rather than silently eating memory.
    """
    if max_n < 0:
        raise ValueError(f"max_n must be nonnegative, got {max_n}")
    if max_n > ceiling:
        raise CeilingError(
            f"max_n {max_n} exceeds the configured ceiling {ceiling}; "
            "pass ceiling= explicitly to accept the cost"
        )

    rows: list[GrundyRow] = []
    diag = np.zeros(max_n + 1, dtype=np.int16)
    desc = np.arange(max_n, 0, -1, dtype=np.int64)  # [max_n, ..., 1]
    vbuf = np.empty(max_n + 1, dtype=np.int16)
    fo = np.empty(_FO_SIZE, dtype=np.int64)

    # Scratch pad of published future options.  pad[slot[c], k] is the
    # successor value row c will see for removal k, for the small-k regime
    # (k <= (c-1)//3).  Publishers write at most ceil(m/2) - 1 rows ahead,
    # so a rolling window of max_n//2 + 2 rows suffices; each row's slot is
    # wiped right after it is consumed, before any reuse.
    window = max_n // 2 + 2
    kdim = max(2, (max_n - 1) // 3 + 2)
    pad = np.full((window, kdim), -1, dtype=np.int8)
    ks_all = np.arange(kdim, dtype=np.int64)
    slot = np.arange(max_n + 1, dtype=np.int64) % window

    for n in range(max_n + 1):
        fo[:] = n + 1  # "not seen within this row"
        if n:
            v = vbuf[: n + 1]
            # large-removal regime: value is the diagonal of the remainder
            v[1:] = diag[:n][::-1]
            kb = (n - 1) // 3
            if kb >= 1:
                published = pad[slot[n], 1 : kb + 1]
                filled = published >= 0
                v[1 : kb + 1][filled] = published[filled]
            # first removal producing each value: scatter in descending k
            # so the smallest k writes last and wins
            fo[v[n:0:-1]] = desc[max_n - n :]

        # prefix-mex steps from the first-occurrence profile: value g is
        # reachable from cap r iff every value below g first occurs by r
        breaks: list[int] = []
        vals: list[int] = []
        reach = 0
        g = 0
        while True:
            first = int(fo[g])
            if first > reach:
                breaks.append(reach)
                vals.append(g)
                if first > n:  # g never occurs: it is the row's final value
                    break
                reach = first
            g += 1
            if g >= _VALUE_GUARD:
                raise CeilingError(
                    f"value guard {_VALUE_GUARD} exceeded at heap {n}; "
                    "horizon beyond supported range"
                )

        # publish this row's interior cells: segment j answers removals k
        # with breaks[j] <= 2k < breaks[j+1] for future heaps n + k
        last = len(breaks) - 1
        if last > 0 and n < max_n:
            for j in range(last):
                ka = max(1, (breaks[j] + 1) // 2)
                kb2 = min((breaks[j + 1] + 1) // 2 - 1, max_n - n)
                if kb2 >= ka:
                    pad[slot[n + ka : n + kb2 + 1], ks_all[ka : kb2 + 1]] = vals[j]
        pad[slot[n]] = -1  # retire the consumed slot before its reuse

        rows.append(GrundyRow(n, tuple(breaks), tuple(vals)))
        diag[n] = vals[-1]

    return GrundyTable(rows=rows, max_n=max_n, diagonal=diag)


class DenseTable:
    """Uncompressed value store with the same lookup interface as GrundyTable."""

    __slots__ = ("rows", "max_n")

    def __init__(self, rows: list[list[int]]):
        self.rows = rows
        self.max_n = len(rows) - 1

    def value(self, n: int, r: int) -> int:
        if n < 0 or r < 0:
            raise ValueError(f"expected nonnegative (n, r), got ({n}, {r})")
        if n > self.max_n:
            raise HorizonError(f"heap size {n} exceeds table horizon {self.max_n}")
        return self.rows[n][min(r, n)]


def build_table_dense(max_n: int) -> DenseTable:
    """Row-by-row sweep with an incrementally maintained mex, no compression.

    Differential twin of ``build_table``: same results, naive storage, a
    completely separate code path.  Quadratic time in pure Python, so keep
    the horizon modest.
    """
    rows: list[list[int]] = []
    for n in range(max_n + 1):
        seen = bytearray(n + 2)
        g = 0
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            m = n - k
            seen[rows[m][m if 2 * k > m else 2 * k]] = 1
            while seen[g]:
                g += 1
            row[k] = g
        rows.append(row)
    return DenseTable(rows)


def naive_table(max_n: int) -> DenseTable:
    """Memoized evaluation straight from the definition.

    Every cell takes a fresh mex over its successors' values -- no
    incremental state, no compression, nothing shared with build_table.
    Deliberately slow; this is the oracle the fast paths answer to.
    """
    rows: list[list[int]] = []
    for n in range(max_n + 1):
        succ = [0] * (n + 1)  # succ[k]: value after taking k
        for k in range(1, n + 1):
            m = n - k
            succ[k] = rows[m][m if 2 * k > m else 2 * k]
        row = [0] * (n + 1)
        for r in range(1, n + 1):
            seen = bytearray(r + 2)
            for k in range(1, r + 1):
                v = succ[k]
                if v <= r:  # values above r cannot affect a mex of r options
                    seen[v] = 1
            row[r] = seen.index(0)
        rows.append(row)
    return DenseTable(rows)


def table_to_csv(table: GrundyTable, max_n: int | None = None) -> str:
    """``n,r,g`` header plus one line per (n, r <= n), lexicographic order."""
    hi = table.max_n if max_n is None else max_n
    if hi > table.max_n:
        raise HorizonError(f"requested export horizon {hi} exceeds table horizon {table.max_n}")
    out = ["n,r,g"]
    for n in range(hi + 1):
        for r, g in enumerate(table.rows[n].dense().tolist()):
            out.append(f"{n},{r},{g}")
    return "\n".join(out) + "\n"
