"""Bit-sequence generators: prime-reciprocal d-sequences, switch sequences and
a seeded 64-bit PRNG, plus bitstring text I/O.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from . import _backend
from .errors import (
    BitstringParseError,
    InvalidLengthError,
    InvalidPrimeError,
    InvalidSpecError,
    TooManySwitchesError,
)

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MAX_BITSTRING = 1 << 24


# -- provenance / generator descriptors ---------------------------------------

@dataclass(frozen=True)
class DSequence:
    p: int
    length: int | None = None


@dataclass(frozen=True)
class Switch:
    length: int
    spec: "SwitchSpec"


@dataclass(frozen=True)
class Prng:
    seed: int
    length: int


@dataclass(frozen=True)
class External:
    pass


class BitSequence:
    """Immutable 0/1 sequence with a record of where it came from."""

    __slots__ = ("_bits", "provenance")

    def __init__(self, bits, provenance=None):
        arr = np.array(bits, dtype=np.int64).ravel()
        if arr.size and (arr.min() < 0 or arr.max() > 1):
            raise InvalidSpecError("bit values must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.setflags(write=False)
        self._bits = arr
        self.provenance = External() if provenance is None else provenance

    @property
    def bits(self):
        return self._bits

    def __len__(self):
        return self._bits.shape[0]

    def __iter__(self):
        return iter(self._bits.tolist())

    def __getitem__(self, i):
        return self._bits[i]

    def __eq__(self, other):
        if isinstance(other, BitSequence):
            return np.array_equal(self._bits, other._bits)
        return NotImplemented

    def __hash__(self):
        return hash(self._bits.tobytes())

    def __str__(self):
        return format_bitstring(self, newline=False)

    def __repr__(self):
        text = str(self)
        if len(text) > 40:
            text = text[:37] + "..."
        return f"BitSequence({text!r}, provenance={self.provenance!r})"

    def count_ones(self):
        return int(self._bits.sum())

    def as_real(self):
        """0/1 bits as float64 0.0/1.0, the transform's input encoding."""
        return self._bits.astype(np.float64)


# -- PRNG ---------------------------------------------------------------------

def mix64(z):
    """64-bit finalizer of the PRNG recurrence."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master, *keys):
    """Independent child seed for ``keys`` (non-negative ints) under ``master``."""
    z = master & MASK64
    for key in keys:
        z = mix64((z + (int(key) + 1) * GOLDEN_GAMMA) & MASK64)
    return z


@dataclass
class PrngState:
    """Single-owner generator state; do not share between threads."""

    state: int = 0

    def __post_init__(self):
        self.state &= MASK64

    def next_u64(self):
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def next_bit(self):
        return self.next_u64() >> 63


def uniform_index(state, bound):
    """Unbiased integer in ``[0, bound)`` drawn from ``state``.

    Draws falling in the top ``2**64 mod bound`` values are rejected so every
    residue is equally likely.
    """
    if bound < 1:
        raise InvalidSpecError(f"bound must be >= 1, got {bound}")
    if bound > 1 << 64:
        raise InvalidSpecError("bound exceeds 2**64")
    limit = (1 << 64) - ((1 << 64) % bound)
    while True:
        x = state.next_u64()
        if x < limit:
            return x % bound


def prng_bits(seed, length):
    """``length`` bits, each the top bit of one PRNG output, starting from ``seed``."""
    if length < 0:
        raise InvalidLengthError(f"length must be non-negative, got {length}")
    bits, _ = _backend.prng_bits(int(seed) & MASK64, int(length))
    return BitSequence(bits, Prng(int(seed) & MASK64, int(length)))


# -- d-sequences --------------------------------------------------------------

def _check_prime(p):
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise InvalidPrimeError(f"prime must be an integer, got {p!r}")
    p = int(p)
    if p < 3 or p % 2 == 0:
        raise InvalidPrimeError(f"{p} is not an odd prime")
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            raise InvalidPrimeError(f"{p} is composite ({d} x {p // d})")
    return p


def period(p):
    """Multiplicative order of 2 modulo the odd prime ``p``."""
    p = _check_prime(p)
    x, t = 2 % p, 1
    while x != 1:
        x = (2 * x) % p
        t += 1
    return t


def dsequence(p, length=None):
    """Binary expansion of ``1/p``: bit ``i`` (from 1) is ``(2**i mod p) mod 2``.

    ``length`` defaults to one full period; longer sequences repeat.
    """
    p = _check_prime(p)
    if length is None:
        length = period(p)
    if length < 1:
        raise InvalidLengthError(f"length must be positive, got {length}")
    bits = _backend.dsequence_bits(p, int(length))
    return BitSequence(bits, DSequence(p, int(length)))


# -- switch sequences ---------------------------------------------------------

@dataclass(frozen=True)
class SwitchSpec:
    """Either explicit 1-indexed ``positions`` or a random ``count`` with ``seed``."""

    positions: tuple[int, ...] | None = None
    count: int | None = None
    seed: int = 0

    def __post_init__(self):
        if (self.positions is None) == (self.count is None):
            raise InvalidSpecError("give exactly one of positions or count")
        if self.positions is not None:
            object.__setattr__(self, "positions", tuple(int(p) for p in self.positions))
        elif self.count < 0:
            raise InvalidSpecError(f"switch count must be non-negative, got {self.count}")

    @classmethod
    def explicit(cls, positions):
        return cls(positions=tuple(positions))

    @classmethod
    def random(cls, count, seed=0):
        return cls(count=int(count), seed=int(seed) & MASK64)


def base_switch_sequence(length):
    """``length/2`` zeros followed by ``length/2`` ones."""
    if isinstance(length, bool) or length < 2 or length % 2:
        raise InvalidLengthError(f"switch length must be even and >= 2, got {length}")
    half = length // 2
    bits = np.concatenate([np.zeros(half, np.uint8), np.ones(half, np.uint8)])
    return BitSequence(bits, Switch(length, SwitchSpec.random(0)))


def _distinct_indices(state, bound, count):
    chosen, seen = [], set()
    while len(chosen) < count:
        i = uniform_index(state, bound)
        if i not in seen:
            seen.add(i)
            chosen.append(i)
    return chosen


def apply_switches(base, spec):
    """Flip zeros to ones in the first half and ones to zeros in the second.

    In random mode ``spec.count`` distinct positions are drawn in each half, so
    ``2 * count`` bits change and the number of ones is preserved. Explicit
    positions must each sit on a bit that can be flipped in that direction.
    """
    n = len(base)
    if n < 2 or n % 2:
        raise InvalidLengthError(f"switch length must be even and >= 2, got {n}")
    half = n // 2
    bits = base.bits.copy()
    if spec.positions is not None:
        if len(set(spec.positions)) != len(spec.positions):
            raise InvalidSpecError("switch positions must be distinct")
        for pos in spec.positions:
            if not 1 <= pos <= n:
                raise InvalidSpecError(f"position {pos} outside [1, {n}]")
            want = 0 if pos <= half else 1
            if bits[pos - 1] != want:
                raise InvalidSpecError(f"position {pos} holds {bits[pos - 1]}, expected {want}")
            bits[pos - 1] ^= 1
    else:
        if spec.count > half:
            raise TooManySwitchesError(f"{spec.count} switches exceed half length {half}")
        state = PrngState(spec.seed)
        first = _distinct_indices(state, half, spec.count)
        second = _distinct_indices(state, half, spec.count)
        bits[first] ^= 1
        bits[[half + i for i in second]] ^= 1
    return BitSequence(bits, Switch(n, spec))


def switch_sequence(length, spec):
    return apply_switches(base_switch_sequence(length), spec)


def generate(descriptor):
    """Build the sequence a provenance descriptor describes."""
    if isinstance(descriptor, DSequence):
        return dsequence(descriptor.p, descriptor.length)
    if isinstance(descriptor, Switch):
        return switch_sequence(descriptor.length, descriptor.spec)
    if isinstance(descriptor, Prng):
        return prng_bits(descriptor.seed, descriptor.length)
    raise InvalidSpecError(f"cannot generate from {descriptor!r}")


# -- bitstring I/O ------------------------------------------------------------

def parse_bitstring(text):
    """Parse a line of '0'/'1' characters with an optional trailing newline."""
    if text.endswith("\r\n"):
        text = text[:-2]
    elif text.endswith("\n"):
        text = text[:-1]
    if len(text) > MAX_BITSTRING:
        raise BitstringParseError(f"bitstring longer than {MAX_BITSTRING} bits", MAX_BITSTRING)
    raw = np.frombuffer(text.encode("ascii", errors="replace"), dtype=np.uint8)
    bad = np.flatnonzero((raw != ord("0")) & (raw != ord("1")))
    if bad.size:
        offset = int(bad[0])
        raise BitstringParseError(f"invalid character {text[offset]!r} at offset {offset}", offset)
    return BitSequence(raw - ord("0"), External())


def format_bitstring(seq, newline=True):
    bits = seq.bits if isinstance(seq, BitSequence) else np.asarray(seq, dtype=np.uint8)
    text = (bits + ord("0")).astype(np.uint8).tobytes().decode("ascii")
    return text + "\n" if newline else text
