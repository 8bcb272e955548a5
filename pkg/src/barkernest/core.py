"""Binary sequences, Barker codes and complete complementary code generation.

Chips are stored as read-only ``int8`` arrays holding +1/-1. Sets of
sequences are kept as tuples of :class:`BinarySequence`; ``matrix`` gives
the stacked M x L view used by the correlation code.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from .errors import (
    EmptyFactorList,
    LengthCapExceeded,
    NotPowerOfTwo,
    UnsupportedLength,
    UnsupportedVariant,
)

__all__ = [
    "DEFAULT_LENGTH_CAP",
    "LENGTH_CAP_ENV",
    "BARKER_TABLE",
    "BARKER_LENGTHS",
    "BinarySequence",
    "BarkerCode",
    "SequenceSet",
    "ComplementarySet",
    "CCCDescriptor",
    "CompleteComplementaryCode",
    "length_cap",
    "check_length",
    "barker",
    "all_barker_codes",
    "sylvester_hadamard",
    "generate_ccc",
    "regenerate",
    "nest_signs",
]

DEFAULT_LENGTH_CAP = 2**20
LENGTH_CAP_ENV = "BARKERNEST_LENGTH_CAP"

# (length, variant) -> chips; variant order follows the usual tabulation,
# first alternative listed is variant 0.
BARKER_TABLE = {
    (2, 0): (1, 1),
    (2, 1): (1, -1),
    (3, 0): (1, 1, -1),
    (4, 0): (1, 1, 1, -1),
    (4, 1): (1, 1, -1, 1),
    (5, 0): (1, 1, 1, -1, 1),
    (7, 0): (1, 1, 1, -1, -1, 1, -1),
    (11, 0): (1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1),
    (13, 0): (1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1),
}
BARKER_LENGTHS = (2, 3, 4, 5, 7, 11, 13)


def length_cap() -> int:
    """Current chip-count limit, read from the environment on every call."""
    raw = os.environ.get(LENGTH_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_LENGTH_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"{LENGTH_CAP_ENV} must be a positive integer, got {raw!r}")
    return cap


def check_length(n: int, what: str = "sequence") -> int:
    cap = length_cap()
    if n > cap:
        raise LengthCapExceeded(f"{what} length {n} exceeds cap {cap}")
    return n


def _as_chips(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D chip vector, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("a binary sequence needs at least one element")
    if not np.all((arr == 1) | (arr == -1)):
        raise ValueError("every element must be +1 or -1")
    chips = arr.astype(np.int8)
    chips.setflags(write=False)
    return chips


@dataclass(frozen=True, eq=False)
class BinarySequence:
    """Immutable vector of +1/-1 chips."""

    elements: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "elements", _as_chips(self.elements))

    @classmethod
    def from_string(cls, text: str) -> "BinarySequence":
        """Parse a ``'+'``/``'-'`` string."""
        if not text or set(text) - {"+", "-"}:
            raise ValueError(f"not a +/- chip string: {text!r}")
        return cls(np.where(np.frombuffer(text.encode(), dtype=np.uint8) == ord("+"), 1, -1))

    def to_string(self) -> str:
        return "".join("+" if c > 0 else "-" for c in self.elements.tolist())

    @property
    def length(self) -> int:
        return int(self.elements.size)

    def __len__(self) -> int:
        return self.length

    def __iter__(self):
        return iter(self.elements.tolist())

    def __getitem__(self, i):
        return self.elements[i]

    def __neg__(self) -> "BinarySequence":
        return BinarySequence(-self.elements)

    def __eq__(self, other):
        if not isinstance(other, BinarySequence):
            return NotImplemented
        return np.array_equal(self.elements, other.elements)

    def __hash__(self):
        return hash(self.elements.tobytes())

    def __repr__(self):
        s = self.to_string()
        if len(s) > 40:
            s = s[:37] + "..."
        return f"BinarySequence('{s}', length={self.length})"

    def tolist(self) -> list[int]:
        return self.elements.tolist()


@dataclass(frozen=True)
class BarkerCode:
    length: int
    variant: int
    signs: BinarySequence

    @property
    def key(self) -> tuple[int, int]:
        return (self.length, self.variant)


def barker(length: int, variant: int = 0) -> BarkerCode:
    """Return the tabulated binary Barker code of ``length``.

    Lengths 2 and 4 have two variants (0 and 1); all other lengths only 0.
    """
    if length not in BARKER_LENGTHS:
        raise UnsupportedLength(
            f"no binary Barker code of length {length}; admissible: {BARKER_LENGTHS}"
        )
    if (length, variant) not in BARKER_TABLE:
        raise UnsupportedVariant(f"Barker length {length} has no variant {variant}")
    return BarkerCode(length, variant, BinarySequence(BARKER_TABLE[(length, variant)]))


def all_barker_codes() -> list[BarkerCode]:
    return [barker(n, v) for (n, v) in sorted(BARKER_TABLE)]


class SequenceSet:
    """Shared behaviour of every M x L collection of equal-length sequences."""

    sequences: tuple[BinarySequence, ...]

    def _check_sequences(self):
        seqs = tuple(
            s if isinstance(s, BinarySequence) else BinarySequence(s) for s in self.sequences
        )
        if not seqs:
            raise ValueError("a set needs at least one sequence")
        lengths = {s.length for s in seqs}
        if len(lengths) != 1:
            raise ValueError(f"sequences of unequal length in one set: {sorted(lengths)}")
        object.__setattr__(self, "sequences", seqs)

    @property
    def M(self) -> int:
        return len(self.sequences)

    @property
    def length(self) -> int:
        return self.sequences[0].length

    @property
    def matrix(self) -> np.ndarray:
        """Stacked chips as an ``(M, length)`` int8 array."""
        return np.stack([s.elements for s in self.sequences])

    def chips_equal(self, other: "SequenceSet") -> bool:
        return self.M == other.M and all(
            a == b for a, b in zip(self.sequences, other.sequences)
        )


@dataclass(frozen=True, eq=False)
class GenericSet(SequenceSet):
    """A set with no construction metadata (e.g. read from a bare text file)."""

    sequences: tuple[BinarySequence, ...]

    def __post_init__(self):
        self._check_sequences()


@dataclass(frozen=True)
class CCCDescriptor:
    """Everything needed to regenerate a complete complementary code.

    ``delay_orders[n]`` lists, for stage ``n + 1``, which multiple of
    ``M**n`` each diagonal entry is delayed by. Only the natural order
    ``(0, 1, ..., M-1)`` is produced by :func:`generate_ccc`.
    """

    hadamard_order: int
    n_stages: int
    delay_orders: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {
            "hadamard_order": self.hadamard_order,
            "n_stages": self.n_stages,
            "delay_orders": [list(d) for d in self.delay_orders],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CCCDescriptor":
        return cls(
            hadamard_order=int(d["hadamard_order"]),
            n_stages=int(d["n_stages"]),
            delay_orders=tuple(tuple(int(x) for x in row) for row in d["delay_orders"]),
        )

    @property
    def m(self) -> int:
        return int(self.hadamard_order).bit_length() - 1


@dataclass(frozen=True, eq=False)
class ComplementarySet(SequenceSet):
    """One set of ``M = 2**m`` sequences of length ``M**n_stages``."""

    sequences: tuple[BinarySequence, ...]
    m: int
    n_stages: int
    set_index: int = 0
    descriptor: CCCDescriptor | None = None

    def __post_init__(self):
        self._check_sequences()
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.n_stages < 0:
            raise ValueError(f"n_stages must be >= 0, got {self.n_stages}")
        M = 2**self.m
        if self.M != M:
            raise ValueError(f"expected {M} sequences for m={self.m}, got {self.M}")
        if self.length != M**self.n_stages:
            raise ValueError(
                f"expected length {M ** self.n_stages} for M={M}, N={self.n_stages}, got {self.length}"
            )
        if not 0 <= self.set_index < M:
            raise ValueError(f"set_index {self.set_index} outside [0, {M})")

    def __eq__(self, other):
        if not isinstance(other, ComplementarySet):
            return NotImplemented
        return (
            (self.m, self.n_stages, self.set_index, self.descriptor)
            == (other.m, other.n_stages, other.set_index, other.descriptor)
            and self.chips_equal(other)
        )

    __hash__ = None


@dataclass(frozen=True)
class CompleteComplementaryCode:
    m: int
    n_stages: int
    sets: tuple[ComplementarySet, ...]
    descriptor: CCCDescriptor

    @property
    def M(self) -> int:
        return 2**self.m

    @property
    def length(self) -> int:
        return self.M**self.n_stages

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def __getitem__(self, i) -> ComplementarySet:
        return self.sets[i]


def _log2_exact(order: int) -> int:
    if not isinstance(order, (int, np.integer)) or order < 2 or order & (order - 1):
        raise NotPowerOfTwo(f"order must be a power of two >= 2, got {order}")
    return int(order).bit_length() - 1


def sylvester_hadamard(order: int) -> np.ndarray:
    """Sylvester (doubling) Hadamard matrix of a power-of-two order."""
    _log2_exact(order)
    return scipy.linalg.hadamard(order, dtype=np.int64)


def _build(descriptor: CCCDescriptor) -> np.ndarray:
    """Expand ``H * prod_n (D_n(z) H)`` into an (M, M, L) coefficient array."""
    M = descriptor.hadamard_order
    H = sylvester_hadamard(M)
    G = H[:, :, None].copy()
    for n, order in enumerate(descriptor.delay_orders):
        step = M**n
        old = G.shape[2]
        delayed = np.zeros((M, M, old + (M - 1) * step), dtype=np.int64)
        for j, d in enumerate(order):
            delayed[:, j, d * step : d * step + old] = G[:, j, :]
        G = np.einsum("skt,kj->sjt", delayed, H)
    return G


def regenerate(descriptor: CCCDescriptor) -> CompleteComplementaryCode:
    """Rebuild a code bit-exactly from its descriptor."""
    M = descriptor.hadamard_order
    m = _log2_exact(M)
    N = descriptor.n_stages
    if len(descriptor.delay_orders) != N:
        raise ValueError("descriptor has one delay order per stage")
    natural = tuple(range(M))
    for order in descriptor.delay_orders:
        if tuple(order) != natural:
            raise NotImplementedError("only the natural ascending delay order is supported")
    check_length(M**N)
    G = _build(descriptor)
    if not np.all(np.abs(G) == 1):
        raise AssertionError("paraunitary product produced a non-binary coefficient")
    sets = tuple(
        ComplementarySet(
            sequences=tuple(BinarySequence(G[s, j]) for j in range(M)),
            m=m,
            n_stages=N,
            set_index=s,
            descriptor=descriptor,
        )
        for s in range(M)
    )
    return CompleteComplementaryCode(m=m, n_stages=N, sets=sets, descriptor=descriptor)


def generate_ccc(m: int, n_stages: int) -> CompleteComplementaryCode:
    """Generate the ``M = 2**m`` mutually uncorrelated complementary sets.

    Row ``s`` of the polynomial matrix ``H * D_1(z) H * ... * D_N(z) H``
    becomes set ``s``; entry ``(s, j)`` is its ``j``-th sequence. Every
    set has length ``M**n_stages``.

    >>> [s.to_string() for s in generate_ccc(1, 1)[0].sequences]
    ['++', '+-']
    """
    if m < 1:
        raise NotPowerOfTwo(f"m must be >= 1 (M = 2**m >= 2), got {m}")
    if n_stages < 0:
        raise ValueError(f"n_stages must be >= 0, got {n_stages}")
    M = 2**m
    check_length(M**n_stages)
    descriptor = CCCDescriptor(
        hadamard_order=M,
        n_stages=n_stages,
        delay_orders=tuple(tuple(range(M)) for _ in range(n_stages)),
    )
    return regenerate(descriptor)


def nest_signs(factors: Sequence[BarkerCode] | Iterable[BarkerCode]) -> BinarySequence:
    """Kronecker nesting of Barker codes, first factor outermost.

    Each chip of the first code is replaced by that chip times the nesting
    of the remaining codes.
    """
    factors = list(factors)
    if not factors:
        raise EmptyFactorList("nest_signs needs at least one Barker code")
    total = 1
    for f in factors:
        total *= f.length
    check_length(total, "nested envelope")
    env = np.ones(1, dtype=np.int8)
    for f in reversed(factors):
        env = np.kron(f.signs.elements, env)
    return BinarySequence(env)
