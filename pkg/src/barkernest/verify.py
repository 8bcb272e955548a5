"""Brute-force property checks.

Deliberately plain Python double loops over chip lists: nothing here goes
through numpy correlation or the analysis module, so a bug in the fast
paths cannot hide in the oracle too.
"""
from __future__ import annotations

from typing import NamedTuple

from .core import SequenceSet
from .errors import MateCountMismatch

__all__ = ["Verdict", "is_complementary", "are_uncorrelated", "smoothness_oracle", "brute_sum"]


class Verdict(NamedTuple):
    """Outcome of a check; ``lag``/``value`` locate the first violation."""

    ok: bool
    lag: int | None = None
    value: int | None = None

    def __bool__(self):
        return self.ok


def _rows(s: SequenceSet) -> list[list[int]]:
    return [seq.tolist() for seq in s.sequences]


def brute_sum(rows_a: list[list[int]], rows_b: list[list[int]], k: int) -> int:
    """``sum_j sum_i a_j[i + k] * b_j[i]`` with out-of-range terms dropped."""
    total = 0
    for a, b in zip(rows_a, rows_b):
        la = len(a)
        for i in range(len(b)):
            if 0 <= i + k < la:
                total += a[i + k] * b[i]
    return total


def is_complementary(s: SequenceSet) -> Verdict:
    """True iff the summed autocorrelation is ``M*L`` at lag 0 and 0 elsewhere."""
    rows = _rows(s)
    L = len(rows[0])
    for k in range(-(L - 1), L):
        v = brute_sum(rows, rows, k)
        expected = len(rows) * L if k == 0 else 0
        if v != expected:
            return Verdict(False, k, v)
    return Verdict(True)


def are_uncorrelated(a: SequenceSet, b: SequenceSet) -> Verdict:
    """True iff the summed cross-correlation vanishes at every lag."""
    if a.M != b.M:
        raise MateCountMismatch(f"sets hold {a.M} and {b.M} sequences")
    ra, rb = _rows(a), _rows(b)
    for k in range(-(len(rb[0]) - 1), len(ra[0])):
        v = brute_sum(ra, rb, k)
        if v != 0:
            return Verdict(False, k, v)
    return Verdict(True)


def smoothness_oracle(n: int) -> bool:
    """Trial division by 2, 3, 5, 7, 11, 13 reduces ``n`` to 1."""
    if n < 1:
        raise ValueError(f"expected n >= 1, got {n}")
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            n //= p
    return n == 1
