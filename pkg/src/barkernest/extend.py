"""Extending complementary sets to new lengths.

Two sign-envelope schemes are provided: CDOS doubling (``[+S -S]``
repeated) and nested Barker envelopes, whose lengths cover every
13-smooth multiplier.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .analysis import peak_sidelobe_ratio
from .core import (
    BARKER_LENGTHS,
    BarkerCode,
    BinarySequence,
    ComplementarySet,
    SequenceSet,
    barker,
    check_length,
    nest_signs,
)
from .errors import ExhaustiveSearchTooLarge, NotFeasible

__all__ = [
    "NestingPlan",
    "ExtendedSet",
    "cdos_extend",
    "cdos_envelope",
    "barker_extend",
    "plan_length",
    "min_multiplier",
    "count_feasible",
    "prime_factors",
    "is_feasible",
    "power_of_two_at_least",
    "EXHAUSTIVE_LIMIT",
]

EXHAUSTIVE_LIMIT = 10**6
_SMOOTH_PRIMES = (2, 3, 5, 7, 11, 13)

SearchMode = Literal["default", "exhaustive"]


@dataclass(frozen=True, eq=False)
class NestingPlan:
    """Ordered Barker factors (outermost first) realizing a length multiplier."""

    multiplier: int
    factors: tuple[tuple[int, int], ...]
    envelope: BinarySequence
    predicted_smr: Fraction

    @classmethod
    def from_factors(cls, factors: Sequence[tuple[int, int] | BarkerCode]) -> "NestingPlan":
        codes = [f if isinstance(f, BarkerCode) else barker(*f) for f in factors]
        if codes:
            env = nest_signs(codes)
        else:
            env = BinarySequence([1])
        return cls(
            multiplier=env.length,
            factors=tuple(c.key for c in codes),
            envelope=env,
            predicted_smr=peak_sidelobe_ratio(env),
        )

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.factors)

    @property
    def factorization(self) -> str:
        """Canonical factorization, e.g. ``'4·5'``; ``'1'`` for the identity plan."""
        if not self.factors:
            return "1"
        return "·".join(str(n) for n in sorted(self.lengths))

    @property
    def exponents(self) -> dict[int, int]:
        """Exponent of each Barker length in the factor multiset."""
        return {n: self.lengths.count(n) for n in BARKER_LENGTHS}

    def describe(self) -> str:
        order = " > ".join(f"B{n}v{v}" for n, v in self.factors) or "identity"
        return (
            f"multiplier={self.multiplier} factors={self.factorization} order={order} "
            f"predicted_smr={self.predicted_smr}"
        )

    def to_dict(self) -> dict:
        return {
            "multiplier": self.multiplier,
            "factors": [list(f) for f in self.factors],
            "predicted_smr": str(self.predicted_smr),
        }

    def __eq__(self, other):
        if not isinstance(other, NestingPlan):
            return NotImplemented
        return self.factors == other.factors and self.envelope == other.envelope

    __hash__ = None


@dataclass(frozen=True, eq=False)
class ExtendedSet(SequenceSet):
    """A base set whose sequences were block-multiplied by a sign envelope.

    Exactly one of ``plan`` (Barker nesting) or ``depth`` (CDOS) is set,
    or neither for a raw envelope.
    """

    sequences: tuple[BinarySequence, ...]
    base: SequenceSet
    envelope: BinarySequence
    plan: NestingPlan | None = None
    depth: int | None = None

    def __post_init__(self):
        self._check_sequences()
        if self.M != self.base.M:
            raise ValueError("extended set must keep the base mate count")
        if self.length != self.envelope.length * self.base.length:
            raise ValueError("extended length must be envelope length times base length")

    @property
    def multiplier(self) -> int:
        return self.envelope.length

    @property
    def kind(self) -> str:
        if self.depth is not None:
            return "cdos"
        return "barker"

    def __eq__(self, other):
        if not isinstance(other, ExtendedSet):
            return NotImplemented
        return (
            self.chips_equal(other)
            and self.envelope == other.envelope
            and self.depth == other.depth
            and self.plan == other.plan
            and self.base.chips_equal(other.base)
        )

    __hash__ = None


def cdos_envelope(depth: int) -> BinarySequence:
    """Sign pattern of ``depth`` CDOS doublings, e.g. ``'+--+'`` for 2."""
    env = np.ones(1, dtype=np.int8)
    for _ in range(depth):
        env = np.concatenate([env, -env])
    return BinarySequence(env)


def cdos_extend(base: SequenceSet, depth: int) -> ExtendedSet:
    """Apply ``S <- [+S -S]`` ``depth`` times; depth 0 keeps the chips."""
    if depth < 0:
        raise ValueError(f"CDOS depth must be >= 0, got {depth}")
    check_length((2**depth) * base.length, "CDOS-extended")
    rows = [s.elements for s in base.sequences]
    for _ in range(depth):
        rows = [np.concatenate([r, -r]) for r in rows]
    return ExtendedSet(
        sequences=tuple(BinarySequence(r) for r in rows),
        base=base,
        envelope=cdos_envelope(depth),
        depth=depth,
    )


def barker_extend(
    base: SequenceSet,
    envelope: BinarySequence | NestingPlan,
    plan: NestingPlan | None = None,
) -> ExtendedSet:
    """Sequence ``j`` becomes the concatenation of ``envelope[i] * S_j``.

    This is the polynomial product ``B(z**L) * S_j(z)``. ``envelope`` may be
    a :class:`NestingPlan`, in which case its envelope is used and the plan
    is recorded.
    """
    if isinstance(envelope, NestingPlan):
        plan = envelope
        envelope = envelope.envelope
    elif not isinstance(envelope, BinarySequence):
        envelope = BinarySequence(envelope)
    check_length(envelope.length * base.length, "Barker-extended")
    env = envelope.elements
    rows = tuple(BinarySequence(np.kron(env, s.elements)) for s in base.sequences)
    return ExtendedSet(sequences=rows, base=base, envelope=envelope, plan=plan)


def prime_factors(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, ascending."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_feasible(n: int) -> bool:
    return all(p <= 13 for p in prime_factors(n))


def _factor_multisets(n: int, smallest: int = 2):
    # ascending factor lists drawn from the Barker lengths
    if n == 1:
        yield ()
        return
    for f in BARKER_LENGTHS:
        if f >= smallest and n % f == 0:
            for rest in _factor_multisets(n // f, f):
                yield (f,) + rest


def _choose_factors(n: int) -> tuple[int, ...]:
    big = [p for p in prime_factors(n) if p > 13]
    if big:
        raise NotFeasible(n, big[0])

    def key(fs):
        return (min(fs, default=math.inf), -len(fs), tuple(sorted(fs, reverse=True)))

    return max(_factor_multisets(n), key=key)


def _variants(length: int) -> tuple[int, ...]:
    return (0, 1) if length in (2, 4) else (0,)


def _best_over_variants(lengths: Sequence[int]) -> tuple[Fraction, tuple[tuple[int, int], ...]]:
    best = None
    for vs in itertools.product(*(_variants(n) for n in lengths)):
        ids = tuple(zip(lengths, vs))
        smr = peak_sidelobe_ratio(NestingPlan.from_factors(ids).envelope)
        if best is None or smr < best[0]:
            best = (smr, ids)
    return best


def plan_length(multiplier: int, search_mode: SearchMode = "default") -> NestingPlan:
    """Nesting plan for a length multiplier.

    The factor multiset maximizes the smallest factor (then fewest factors).
    ``default`` nests factors shortest-outermost and picks the variants of
    any length-2/4 factors with the lowest peak-sidelobe ratio.
    ``exhaustive`` also searches every ordering; ties go to the default
    ordering.
    """
    if multiplier < 1:
        raise ValueError(f"multiplier must be >= 1, got {multiplier}")
    check_length(multiplier, "envelope")
    lengths = _choose_factors(multiplier)
    if not lengths:
        return NestingPlan.from_factors(())
    ascending = tuple(sorted(lengths))
    if search_mode == "default":
        _, ids = _best_over_variants(ascending)
        return NestingPlan.from_factors(ids)
    if search_mode != "exhaustive":
        raise ValueError(f"unknown search mode {search_mode!r}")

    n_variable = sum(1 for n in lengths if n in (2, 4))
    candidates = math.factorial(len(lengths)) * 2**n_variable
    if candidates > EXHAUSTIVE_LIMIT:
        raise ExhaustiveSearchTooLarge(
            f"multiplier {multiplier}: {candidates} candidates exceed {EXHAUSTIVE_LIMIT}"
        )
    best = None
    for order in sorted(set(itertools.permutations(ascending))):
        smr, ids = _best_over_variants(order)
        key = (smr, order != ascending, ids)
        if best is None or key < best[0]:
            best = (key, ids)
    return NestingPlan.from_factors(best[1])


def min_multiplier(gain) -> int:
    """Smallest 13-smooth integer ``>= gain``."""
    gain = Fraction(gain)
    if gain < 1:
        raise ValueError(f"gain must be >= 1, got {gain}")
    n = math.ceil(gain)
    while not is_feasible(n):
        n += 1
    return n


def power_of_two_at_least(gain) -> int:
    n = math.ceil(Fraction(gain))
    return 1 << max(n - 1, 0).bit_length()


def count_feasible(lo: int, hi: int) -> int:
    """Number of 13-smooth integers in ``[lo, hi]`` (1 counts)."""
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got {lo}, {hi}")
    return sum(1 for n in range(lo, hi + 1) if is_feasible(n))
