"""Fibonacci arithmetic and Zeckendorf decompositions.

Everything downstream (the position classifiers, the winning-move hints)
reduces to questions about the parts of a number's Zeckendorf
representation, so the primitives here stay small and exact: plain-integer
Fibonacci numbers, the greedy decomposition, and part accessors that
return INFINITY when a part does not exist.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

__all__ = [
    "INFINITY",
    "MAX_FIB_INDEX",
    "Infinite",
    "ZeckendorfRep",
    "fib",
    "is_fibonacci",
    "z_part",
    "zeckendorf",
]

# F_1000 has 209 digits; far past anything the rest of the package asks
# for, but still instantaneous with exact integers.
MAX_FIB_INDEX = 1_000


class Infinite:
    """Sentinel for a missing Zeckendorf part.

    Compares strictly greater than every integer and equal only to itself,
    so threshold tests like ``r < z_part(2, n)`` read the same whether or
    not the part exists.  Arithmetic is deliberately unsupported.
    """

    __slots__ = ()
    _instance: "Infinite | None" = None

    def __new__(cls) -> "Infinite":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Infinite)

    def __hash__(self) -> int:
        return hash((Infinite,))

    @staticmethod
    def _ordered(other: object) -> None:
        if not isinstance(other, (int, Infinite)):
            raise TypeError(f"cannot order INFINITY against {type(other).__name__}")

    def __lt__(self, other: object) -> bool:
        self._ordered(other)
        return False

    def __le__(self, other: object) -> bool:
        self._ordered(other)
        return isinstance(other, Infinite)

    def __gt__(self, other: object) -> bool:
        self._ordered(other)
        return not isinstance(other, Infinite)

    def __ge__(self, other: object) -> bool:
        self._ordered(other)
        return True


INFINITY = Infinite()

ZPart = Union[int, Infinite]

_fibs = [0, 1]  # _fibs[t] == F_t


def _extend_to_index(t: int) -> None:
    while len(_fibs) <= t:
        _fibs.append(_fibs[-1] + _fibs[-2])


def _extend_past_value(n: int) -> None:
    while _fibs[-1] <= n:
        _fibs.append(_fibs[-1] + _fibs[-2])


def fib(t: int) -> int:
    """F_t under the F_0 = 0, F_1 = 1 indexing; exact for 0 <= t <= MAX_FIB_INDEX."""
    if t < 0:
        raise ValueError(f"Fibonacci index must be nonnegative, got {t}")
    if t > MAX_FIB_INDEX:
        raise ValueError(f"Fibonacci index {t} exceeds supported maximum {MAX_FIB_INDEX}")
    _extend_to_index(t)
    return _fibs[t]


@dataclass(frozen=True)
class ZeckendorfRep:
    """Zeckendorf representation of ``n``.

    ``parts`` holds Fibonacci indices in ascending order.  Canonical
    indices start at 2 (the part 1 is always stored as F_2, never F_1) and
    successive indices differ by at least 2, so the representation is
    unique at the index level, not just by value.
    """

    n: int
    parts: tuple[int, ...]

    @property
    def values(self) -> tuple[int, ...]:
        """The summands themselves, ascending."""
        return tuple(fib(t) for t in self.parts)

    def __len__(self) -> int:
        return len(self.parts)


@lru_cache(maxsize=65536)
def zeckendorf(n: int) -> ZeckendorfRep:
    """Greedy decomposition of ``n`` into non-consecutive Fibonacci numbers.

    Takes the largest F_t <= n and recurses on the remainder; the result
    is the unique valid representation.  ``n = 0`` gives the empty one.
    """
    if n < 0:
        raise ValueError(f"cannot decompose negative value {n}")
    _extend_past_value(n)
    parts: list[int] = []
    remainder = n
    # bisect lands on the rightmost index with F_t <= remainder, which
    # resolves the F_1 = F_2 = 1 duplicate in favor of the canonical F_2
    t = bisect_right(_fibs, remainder) - 1
    while remainder > 0:
        while _fibs[t] > remainder:
            t -= 1
        parts.append(t)
        remainder -= _fibs[t]
        t -= 2  # greedy remainder is below F_{t-1}, so indices never touch
    parts.reverse()
    return ZeckendorfRep(n, tuple(parts))


def z_part(i: int, n: int) -> ZPart:
    """Value of the i-th smallest Zeckendorf part of ``n``; INFINITY if absent.

    All parts of 0 are absent (empty representation), so ``z_part(i, 0)``
    is INFINITY for every i.
    """
    if i < 1:
        raise ValueError(f"part index must be >= 1, got {i}")
    rep = zeckendorf(n)
    if i > len(rep.parts):
        return INFINITY
    return fib(rep.parts[i - 1])


def is_fibonacci(n: int) -> bool:
    """True iff n equals F_t for some t >= 0 (so 0 and 1 both qualify)."""
    if n < 0:
        raise ValueError(f"expected a nonnegative integer, got {n}")
    _extend_past_value(n)
    return _fibs[bisect_right(_fibs, n) - 1] == n
