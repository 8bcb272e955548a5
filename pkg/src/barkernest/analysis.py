"""Exact integer correlation and sidelobe metrics.

Lag convention (fixed project-wide): for sequences ``a`` and ``b``

    C[k] = sum_i a[i + k] * b[i]

with zero padding, so lags run from ``-(len(b) - 1)`` to ``len(a) - 1``.
This matches ``numpy.correlate(a, b, "full")``. Summed profiles (SAC, SCC)
are direction-symmetric, so the choice only matters for serialized
single-pair profiles.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np
import scipy.signal

from .core import BinarySequence, SequenceSet, check_length
from .errors import MateCountMismatch, NumericalResidueTooLarge, ZeroMainlobe

__all__ = [
    "CorrelationProfile",
    "SidelobeMetrics",
    "xcorr",
    "fast_xcorr",
    "sac",
    "scc",
    "metrics",
    "aperiodic_autocorrelation",
    "peak_sidelobe_ratio",
    "envelope_sac_oracle",
    "RESIDUE_LIMIT",
]

RESIDUE_LIMIT = 0.25
# above this many multiply-adds the "auto" method switches to the FFT path
_DIRECT_WORK_LIMIT = 1 << 22

Method = Literal["auto", "direct", "fft"]


@dataclass(frozen=True, eq=False)
class CorrelationProfile:
    """Integer correlation values over a contiguous lag range."""

    lag_min: int
    values: np.ndarray
    kind: str = "pair"

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("profile values must be a non-empty 1-D array")
        if not np.issubdtype(vals.dtype, np.integer):
            raise TypeError("profile values must be exact integers")
        vals = vals.astype(np.int64)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def lag_max(self) -> int:
        return self.lag_min + self.values.size - 1

    @property
    def lags(self) -> np.ndarray:
        return np.arange(self.lag_min, self.lag_max + 1)

    def __len__(self):
        return int(self.values.size)

    def at(self, lag: int) -> int:
        if lag < self.lag_min or lag > self.lag_max:
            return 0
        return int(self.values[lag - self.lag_min])

    @property
    def mainlobe(self) -> int:
        return self.at(0)

    def sidelobes(self) -> np.ndarray:
        """All values except lag 0."""
        if self.lag_min <= 0 <= self.lag_max:
            return np.delete(self.values, -self.lag_min)
        return self.values.copy()

    def is_zero(self) -> bool:
        return not np.any(self.values)

    def is_impulse(self) -> bool:
        return not np.any(self.sidelobes())

    def items(self):
        return zip(self.lags.tolist(), self.values.tolist())

    def __eq__(self, other):
        if not isinstance(other, CorrelationProfile):
            return NotImplemented
        return self.lag_min == other.lag_min and np.array_equal(self.values, other.values)

    __hash__ = None

    def __repr__(self):
        return f"CorrelationProfile(kind={self.kind!r}, lags={self.lag_min}..{self.lag_max})"


@dataclass(frozen=True)
class SidelobeMetrics:
    smr: Fraction
    signed_sum_ratio: Fraction
    abs_sum_ratio: Fraction


def _chips(x) -> np.ndarray:
    if isinstance(x, BinarySequence):
        return x.elements.astype(np.int64)
    arr = np.asarray(x, dtype=np.int64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a non-empty 1-D sequence")
    return arr


def xcorr(a, b) -> CorrelationProfile:
    """Direct aperiodic cross-correlation, ``C[k] = sum_i a[i+k] b[i]``.

    >>> xcorr([1, 1], [1, -1]).values.tolist()
    [-1, 0, 1]
    """
    x, y = _chips(a), _chips(b)
    return CorrelationProfile(-(y.size - 1), np.correlate(x, y, mode="full"))


def _fft_correlate(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    raw = scipy.signal.fftconvolve(x.astype(np.float64), y[::-1].astype(np.float64), mode="full")
    rounded = np.rint(raw)
    residue = float(np.max(np.abs(raw - rounded))) if raw.size else 0.0
    if residue >= RESIDUE_LIMIT:
        raise NumericalResidueTooLarge(
            f"FFT correlation residue {residue:.3g} >= {RESIDUE_LIMIT} "
            f"(lengths {x.size}, {y.size})"
        )
    return rounded.astype(np.int64)


def fast_xcorr(a, b) -> CorrelationProfile:
    """FFT correlation, rounded and checked to be bit-identical to :func:`xcorr`.

    Raises :class:`NumericalResidueTooLarge` if any value before rounding
    is 0.25 or more away from an integer.
    """
    x, y = _chips(a), _chips(b)
    check_length(x.size + y.size, "combined correlation")
    return CorrelationProfile(-(y.size - 1), _fft_correlate(x, y))


def _pick(method: Method, la: int, lb: int) -> str:
    if method == "auto":
        return "direct" if la * lb <= _DIRECT_WORK_LIMIT else "fft"
    if method not in ("direct", "fft"):
        raise ValueError(f"unknown correlation method {method!r}")
    return method


def _summed(A: SequenceSet, B: SequenceSet, kind: str, method: Method) -> CorrelationProfile:
    la, lb = A.length, B.length
    how = _pick(method, la, lb)
    total = np.zeros(la + lb - 1, dtype=np.int64)
    for sa, sb in zip(A.sequences, B.sequences):
        x = sa.elements.astype(np.int64)
        y = sb.elements.astype(np.int64)
        if how == "direct":
            total += np.correlate(x, y, mode="full")
        else:
            total += _fft_correlate(x, y)
    return CorrelationProfile(-(lb - 1), total, kind)


def sac(s: SequenceSet, method: Method = "auto") -> CorrelationProfile:
    """Sum of the aperiodic autocorrelations of every sequence in ``s``."""
    return _summed(s, s, "SAC", method)


def scc(a: SequenceSet, b: SequenceSet, method: Method = "auto") -> CorrelationProfile:
    """Sum over ``j`` of ``xcorr(a_j, b_j)``; lengths may differ."""
    if a.M != b.M:
        raise MateCountMismatch(f"sets hold {a.M} and {b.M} sequences")
    return _summed(a, b, "SCC", method)


def metrics(profile: CorrelationProfile) -> SidelobeMetrics:
    """Sidelobe ratios of a SAC profile, as exact fractions.

    Sums run over every nonzero lag on both sides of the mainlobe.
    """
    main = profile.mainlobe
    if main <= 0:
        raise ZeroMainlobe(f"lag-0 value is {main}")
    side = profile.sidelobes()
    if side.size == 0:
        return SidelobeMetrics(Fraction(0), Fraction(0), Fraction(0))
    mags = np.abs(side)
    return SidelobeMetrics(
        smr=Fraction(int(mags.max()), main),
        signed_sum_ratio=Fraction(int(side.sum()), main),
        abs_sum_ratio=Fraction(int(mags.sum()), main),
    )


def aperiodic_autocorrelation(seq) -> CorrelationProfile:
    x = _chips(seq)
    if x.size * x.size > _DIRECT_WORK_LIMIT:
        return CorrelationProfile(-(x.size - 1), _fft_correlate(x, x), "auto")
    return CorrelationProfile(-(x.size - 1), np.correlate(x, x, mode="full"), "auto")


def peak_sidelobe_ratio(seq) -> Fraction:
    """``max |R(k)|, k != 0`` over the sequence length; 0 for length 1."""
    r = aperiodic_autocorrelation(seq)
    side = r.sidelobes()
    if side.size == 0:
        return Fraction(0)
    return Fraction(int(np.abs(side).max()), r.mainlobe)


def envelope_sac_oracle(envelope, m: int, base_length: int) -> CorrelationProfile:
    """Predicted SAC of a base complementary set extended by ``envelope``.

    Without building the extended set: ``M * L * R_env(q)`` at lag ``q*L``
    and zero at every lag that is not a multiple of ``L``.
    """
    env = _chips(envelope)
    M = 2**m
    n, L = env.size, base_length
    size = n * L
    out = np.zeros(2 * size - 1, dtype=np.int64)
    centre = size - 1
    for q in range(n):
        r = int(np.dot(env[q:], env[: n - q]))
        out[centre + q * L] = M * L * r
        out[centre - q * L] = M * L * r
    return CorrelationProfile(-centre, out, "SAC")
