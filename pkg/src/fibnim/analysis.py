"""Closed-form classifiers and verification sweeps.

The classifiers cover exactly the positions whose value is at most 3; the
sweeps confront them, and the growth laws for diagonal values, with the
engine across a whole range.  Disagreements become report violations
rather than exceptions, so a sweep always produces a full report.

G(n) below always means the diagonal value G(n, n); for non-Fibonacci n it
coincides with the fresh-heap value G(n, n - 1), since the only extra
option is the take-everything move to (0, 0).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from time import perf_counter
from typing import Any

import numpy as np

from .engine import GrundyTable, HorizonError
from .zeckendorf import is_fibonacci, z_part

__all__ = [
    "FirstBlockWitness",
    "ScanReport",
    "SmallValueClass",
    "Violation",
    "classify_small",
    "first_block",
    "h_of",
    "j_prefix",
    "verify_growth",
    "verify_small_values",
]


class SmallValueClass(Enum):
    V0 = "v0"
    V1 = "v1"
    V2 = "v2"
    V3 = "v3"
    GE4 = "ge4"


_CLASS_FOR_VALUE = {
    0: SmallValueClass.V0,
    1: SmallValueClass.V1,
    2: SmallValueClass.V2,
    3: SmallValueClass.V3,
}


def classify_small(n: int, r: int) -> SmallValueClass:
    """Closed-form class of (n, r): V0..V3 when a small-value rule applies.

    With z_i the i-th smallest Zeckendorf part of n (INFINITY when absent),
    after normalizing r to min(r, n):

      V0: r < z1
      V1: z1 = 1 and 1 <= r < z2
      V2: z1 = 2 and 2 <= r < z2
      V3: z1 = 1, z2 = 3 and 3 <= r < z3,  or  z1 = 3 and 3 <= r < z2 - 1

    Anything else is GE4.  The rules are pairwise exclusive; that is
    re-checked on every call rather than assumed.
    """
    if n < 0 or r < 0:
        raise ValueError(f"expected nonnegative (n, r), got ({n}, {r})")
    r = min(r, n)
    z1 = z_part(1, n)
    z2 = z_part(2, n)
    z3 = z_part(3, n)
    v0 = r < z1
    v1 = z1 == 1 and 1 <= r < z2
    v2 = z1 == 2 and 2 <= r < z2
    # the second branch compares r < z2 - 1 without sentinel arithmetic
    v3 = (z1 == 1 and z2 == 3 and 3 <= r < z3) or (z1 == 3 and 3 <= r and r + 1 < z2)
    hits = [c for c, hit in (
        (SmallValueClass.V0, v0),
        (SmallValueClass.V1, v1),
        (SmallValueClass.V2, v2),
        (SmallValueClass.V3, v3),
    ) if hit]
    if len(hits) > 1:
        raise RuntimeError(f"small-value rules overlap at ({n}, {r}): {hits}")
    return hits[0] if hits else SmallValueClass.GE4


@dataclass
class Violation:
    """One disagreement between a claim and the engine."""

    claim: str
    position: tuple[int, ...]
    expected: Any
    observed: Any

    def as_dict(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "position": list(self.position),
            "expected": self.expected,
            "observed": self.observed,
        }


@dataclass
class ScanReport:
    """Structured result of a verification sweep."""

    range: tuple[int, int]
    violations: list[Violation]
    h_seq: list[tuple[int, int]]
    j_prefix_seq: list[tuple[int, int]]
    conjecture_counterexamples: list[dict[str, int]] = field(default_factory=list)
    elapsed_ms: float = 0.0
    log_bound_discrepancies: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, Any]:
        return {
            "range": list(self.range),
            "violations": [v.as_dict() for v in self.violations],
            "h_seq": [list(p) for p in self.h_seq],
            "j_prefix_seq": [list(p) for p in self.j_prefix_seq],
            "conjecture_counterexamples": self.conjecture_counterexamples,
            "elapsed_ms": self.elapsed_ms,
            "log_bound_discrepancies": self.log_bound_discrepancies,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def h_of(table: GrundyTable, n_hi: int | None = None) -> list[tuple[int, int]]:
    """First heap size at which each value appears, as (value, heap) pairs.

    A value always debuts on the diagonal, so scanning row contents and
    scanning the diagonal must agree; that equivalence, and strict growth
    of the debut heights, are asserted here.
    """
    hi = table.max_n if n_hi is None else n_hi
    if hi > table.max_n:
        raise HorizonError(f"scan bound {hi} exceeds table horizon {table.max_n}")
    first_any: dict[int, int] = {}
    for row in table.rows[: hi + 1]:
        for gv in row.values:
            if gv not in first_any:
                first_any[gv] = row.n
    first_diag: dict[int, int] = {}
    for n, gv in enumerate(table.diagonal[: hi + 1].tolist()):
        if gv not in first_diag:
            first_diag[gv] = n
    if first_any != first_diag:
        raise RuntimeError("a value debuted off the diagonal; engine invariant broken")
    seq = sorted(first_any.items())
    for (g_a, h_a), (g_b, h_b) in zip(seq, seq[1:]):
        if g_b != g_a + 1 or h_b <= h_a:
            raise RuntimeError(f"first-appearance sequence not strictly increasing at value {g_b}")
    return seq


def j_prefix(table: GrundyTable, n_hi: int | None = None) -> list[tuple[int, int]]:
    """Least cap at which each value has been seen over the scanned heaps.

    This is an upper estimate of the true minimum over all heaps (a wider
    scan can only lower it).  The provable floor -- a cap of r admits at
    most r options, so value g needs r >= g -- is asserted.
    """
    hi = table.max_n if n_hi is None else n_hi
    if hi > table.max_n:
        raise HorizonError(f"scan bound {hi} exceeds table horizon {table.max_n}")
    best: dict[int, int] = {}
    for row in table.rows[: hi + 1]:
        for r_start, gv in zip(row.breaks, row.values):
            if gv not in best or r_start < best[gv]:
                best[gv] = r_start
    seq = sorted(best.items())
    for g, r in seq:
        if r < g:
            raise RuntimeError(f"cap floor broken: value {g} observed at cap {r}")
    return seq


def verify_small_values(table: GrundyTable, n_hi: int) -> ScanReport:
    """Compare classify_small with the engine on every (n <= n_hi, r <= n).

    Agreement means: class Vg exactly where the engine value is g <= 3,
    and GE4 exactly where it is 4 or more.
    """
    t0 = perf_counter()
    if n_hi > table.max_n:
        raise HorizonError(f"scan bound {n_hi} exceeds table horizon {table.max_n}")
    violations: list[Violation] = []
    for n in range(n_hi + 1):
        for r, g in enumerate(table.rows[n].dense().tolist()):
            cls = classify_small(n, r)
            want = _CLASS_FOR_VALUE.get(g, SmallValueClass.GE4)
            if cls is not want:
                violations.append(
                    Violation("small-value-classifier-agreement", (n, r), want.name, cls.name)
                )
    return ScanReport(
        range=(0, n_hi),
        violations=violations,
        h_seq=h_of(table, n_hi),
        j_prefix_seq=j_prefix(table, n_hi),
        elapsed_ms=(perf_counter() - t0) * 1e3,
    )


def _ceil_2sqrt_plus_1(n: int) -> int:
    """ceil(2*sqrt(n)) + 1 with exact integer arithmetic."""
    if n == 0:
        return 1
    return math.isqrt(4 * n - 1) + 2


def verify_growth(table: GrundyTable, n_hi: int) -> ScanReport:
    """Growth-law sweep over diagonal and fresh-heap values up to n_hi.

    Checks, with G(n) = G(n, n):

      (a) unit steps: 0 <= G(n+1) - G(n) <= 1;
      (b) fresh-heap values G(n, n-1) over non-Fibonacci n are
          non-decreasing with steps in {0, 1};
      (c) ratio step: G(ceil(3n/2)) >= G(n) + 1;
      (d) staircase floor: with m_1 = 1, m_{g+1} = ceil(3 m_g / 2),
          G(n) >= #{g : m_g <= n};
      (e) square-root ceiling: G(n) <= ceil(2 sqrt(n)) + 1;
      (f) debut floors: h(g) >= g(g-1)/4 and h(g+1) - h(g) >= g/2.

    The tighter two-sided ratio conjecture (step between 1 and 2) is
    reported as counterexamples only and never counts as a violation; the
    literal logarithmic floor log_{3/2}(n) <= G(n) is likewise only
    reported (it genuinely fails at small n, e.g. n = 8), since the
    staircase floor (d) is the form the ratio step actually supports.
    """
    t0 = perf_counter()
    if n_hi > table.max_n:
        raise HorizonError(f"scan bound {n_hi} exceeds table horizon {table.max_n}")
    violations: list[Violation] = []
    diag = table.diagonal[: n_hi + 1].astype(np.int64)

    # (a) unit steps on the diagonal
    steps = np.diff(diag)
    for i in np.nonzero((steps < 0) | (steps > 1))[0].tolist():
        violations.append(
            Violation("diagonal-unit-step", (i + 1, i + 1), "step in {0,1}", int(steps[i]))
        )

    # (b) fresh-heap monotonicity off the Fibonacci numbers
    non_fib = [n for n in range(1, n_hi + 1) if not is_fibonacci(n)]
    starts = [table.rows[n].lookup(n - 1) for n in non_fib]
    for (n_a, g_a), (n_b, g_b) in zip(zip(non_fib, starts), zip(non_fib[1:], starts[1:])):
        if not 0 <= g_b - g_a <= 1:
            violations.append(
                Violation("fresh-heap-monotone", (n_b, n_b - 1), f"value in [{g_a}, {g_a + 1}]", g_b)
            )

    # (c) ratio step
    if n_hi >= 2:
        ns = np.arange(1, (2 * n_hi + 1) // 3 + 1, dtype=np.int64)
        scaled = (3 * ns + 1) // 2
        ok = scaled <= n_hi
        ns, scaled = ns[ok], scaled[ok]
        bad = np.nonzero(diag[scaled] < diag[ns] + 1)[0]
        for i in bad.tolist():
            violations.append(
                Violation(
                    "ratio-step-floor",
                    (int(ns[i]), int(scaled[i])),
                    f">= {int(diag[ns[i]]) + 1}",
                    int(diag[scaled[i]]),
                )
            )

    # (d) staircase floor from the ratio step
    stair = [1]
    while stair[-1] <= n_hi:
        stair.append((3 * stair[-1] + 1) // 2)
    floor = np.searchsorted(np.asarray(stair, dtype=np.int64), np.arange(n_hi + 1), side="right")
    for n in np.nonzero(diag < floor)[0].tolist():
        violations.append(Violation("staircase-floor", (n, n), f">= {int(floor[n])}", int(diag[n])))

    # (e) square-root ceiling
    for n in range(n_hi + 1):
        cap = _ceil_2sqrt_plus_1(n)
        if diag[n] > cap:
            violations.append(Violation("sqrt-ceiling", (n, n), f"<= {cap}", int(diag[n])))

    # (f) debut floors
    h_seq = h_of(table, n_hi)
    for g, h in h_seq:
        if 4 * h < g * (g - 1):
            violations.append(Violation("debut-quadratic-floor", (h, h), f"4h >= {g * (g - 1)}", 4 * h))
    for (g_a, h_a), (_, h_b) in zip(h_seq, h_seq[1:]):
        if 2 * (h_b - h_a) < g_a:
            violations.append(
                Violation("debut-gap-floor", (h_b, h_b), f"2*gap >= {g_a}", 2 * (h_b - h_a))
            )

    # two-sided ratio conjecture: informational only
    conjecture: list[dict[str, int]] = []
    if n_hi >= 2:
        for i in np.nonzero((diag[scaled] - diag[ns] < 1) | (diag[scaled] - diag[ns] > 2))[0].tolist():
            conjecture.append(
                {
                    "n": int(ns[i]),
                    "scaled_n": int(scaled[i]),
                    "delta": int(diag[scaled[i]] - diag[ns[i]]),
                }
            )

    # literal logarithmic floor: informational only (see docstring)
    log_discrepancies: list[dict[str, Any]] = []
    max_g = int(diag.max()) if n_hi >= 0 else 0
    pow2 = [2**g for g in range(max_g + 1)]
    pow3 = [3**g for g in range(max_g + 1)]
    for n in range(2, n_hi + 1):
        g = int(diag[n])
        if n * pow2[g] > pow3[g]:  # exactly: G(n) < log_{3/2}(n)
            log_discrepancies.append(
                {"n": n, "value": g, "log_floor": round(math.log(n, 1.5), 4)}
            )

    return ScanReport(
        range=(0, n_hi),
        violations=violations,
        h_seq=h_seq,
        j_prefix_seq=j_prefix(table, n_hi),
        conjecture_counterexamples=conjecture,
        elapsed_ms=(perf_counter() - t0) * 1e3,
        log_bound_discrepancies=log_discrepancies,
    )


@dataclass(frozen=True)
class FirstBlockWitness:
    """All positions of value g on heaps below the debut of g + 1."""

    g: int
    bound: int  # exclusive heap bound: the debut height of g + 1
    members: frozenset[tuple[int, int]]


def first_block(table: GrundyTable, g: int) -> FirstBlockWitness:
    """Collect the first block of value g; raises until g + 1 has appeared.

    Within the block, the value-g caps of each row form a suffix (once r
    is large enough the value sticks); that upward closure is checked
    while collecting.
    """
    debut = dict(h_of(table))
    if g + 1 not in debut:
        raise HorizonError(
            f"value {g + 1} has not appeared by heap {table.max_n}; build a larger table"
        )
    bound = debut[g + 1]
    members: set[tuple[int, int]] = set()
    for n in range(bound):
        row = table.rows[n]
        if row.values[-1] == g:
            members.update((n, r) for r in range(row.breaks[-1], n + 1))
        elif g in row.values:
            raise RuntimeError(f"first block of {g} not upward closed at heap {n}")
    return FirstBlockWitness(g=g, bound=bound, members=frozenset(members))
