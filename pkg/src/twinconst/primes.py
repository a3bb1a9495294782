"""Exact primality, prime stepping, and segmented sieving over the 64-bit range.

Point queries use a deterministic Miller-Rabin base set (exact for all
inputs below 3.3e24, hence for the whole supported range). Bulk scans use
a numpy segmented sieve of Eratosthenes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

RANGE_LIMIT = 1 << 63
# next_prime refuses inputs this close to the ceiling rather than risking wrap
STEP_HEADROOM = RANGE_LIMIT - (1 << 32)
DEFAULT_SEGMENT_SIZE = 1 << 20
MAX_SEGMENT_SIZE = 1 << 26

# Deterministic for n < 3.317e24 (includes all 64-bit inputs).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_LIMIT = 1 << 20


def prime_flags_upto(limit: int) -> np.ndarray:
    """Boolean array f with f[i] True iff i is prime, for 0 <= i <= limit."""
    flags = np.zeros(max(limit + 1, 2), dtype=bool)
    if limit >= 2:
        flags[2:] = True
        for p in range(2, math.isqrt(limit) + 1):
            if flags[p]:
                flags[p * p :: p] = False
    return flags


_SMALL_FLAGS = prime_flags_upto(_SMALL_LIMIT)


def primes_upto(limit: int) -> np.ndarray:
    return np.flatnonzero(prime_flags_upto(limit)).astype(np.int64)


def _miller_rabin(n: int) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(x: int) -> bool:
    """Exact primality for 0 <= x <= 2^63. 0 and 1 are not prime."""
    if x < 0 or x > RANGE_LIMIT:
        raise ValueError(f"input out of supported range [0, 2^63]: {x}")
    if x <= _SMALL_LIMIT:
        return bool(_SMALL_FLAGS[x])
    if x % 2 == 0:
        return False
    for p in _MR_BASES:
        if x % p == 0:
            return x == p
    return _miller_rabin(x)


def next_prime(x: int) -> int:
    """Smallest prime strictly greater than x."""
    if x >= STEP_HEADROOM:
        raise ValueError(f"input too close to the 64-bit ceiling: {x}")
    if x < 2:
        return 2
    c = x + 1
    if c % 2 == 0:
        if c == 2:
            return 2
        c += 1
    while not is_prime(c):
        c += 2
    return c


def next_composite(x: int) -> int:
    """Smallest composite strictly greater than x (x >= 3)."""
    if x < 3:
        raise ValueError(f"next_composite requires x >= 3, got {x}")
    if x >= STEP_HEADROOM:
        raise ValueError(f"input too close to the 64-bit ceiling: {x}")
    c = x + 1
    while is_prime(c):
        c += 1
    return c


def consecutive_primes_from(p: int, k: int) -> list[int]:
    """The k consecutive primes starting at p, with no primes omitted."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be >= 1")
    out = [p]
    while len(out) < k:
        out.append(next_prime(out[-1]))
    return out


@dataclass(frozen=True)
class Segment:
    """Primality bitmap for the inclusive value range [lo, hi]."""

    lo: int
    hi: int
    flags: np.ndarray  # flags[k] <=> (lo + k) is prime

    def is_prime(self, x: int) -> bool:
        if not self.lo <= x <= self.hi:
            raise ValueError(f"{x} outside segment [{self.lo}, {self.hi}]")
        return bool(self.flags[x - self.lo])

    def primes(self) -> np.ndarray:
        return self.lo + np.flatnonzero(self.flags).astype(np.int64)


def sieve_segment(lo: int, hi: int, *, max_size: int = MAX_SEGMENT_SIZE) -> Segment:
    """Sieve the window [lo, hi] using base primes up to sqrt(hi)."""
    if lo > hi:
        raise ValueError(f"empty segment [{lo}, {hi}]")
    if lo < 0 or hi > RANGE_LIMIT:
        raise ValueError("segment outside supported range [0, 2^63]")
    if hi - lo + 1 > max_size:
        raise ValueError(f"segment width {hi - lo + 1} exceeds max {max_size}")
    n = hi - lo + 1
    flags = np.ones(n, dtype=bool)
    for v in (0, 1):
        if lo <= v <= hi:
            flags[v - lo] = False
    for p in primes_upto(math.isqrt(hi)):
        p = int(p)
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start <= hi:
            flags[start - lo :: p] = False
    return Segment(lo, hi, flags)


def twin_lessers(limit: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE) -> Iterator[int]:
    """All p <= limit with p and p+2 both prime, ascending."""
    if limit > RANGE_LIMIT:
        raise ValueError(f"limit above 2^63: {limit}")
    start = 3
    while start <= limit:
        window_hi = min(start + segment_size - 1, limit)
        seg = sieve_segment(start, window_hi + 2)
        f = seg.flags
        for k in np.flatnonzero(f[:-2] & f[2:]):
            yield start + int(k)
        start = window_hi + 1


class PrimeEngine:
    """Queryable primality source; safe for concurrent readers (stateless)."""

    is_prime = staticmethod(is_prime)
    next_prime = staticmethod(next_prime)
    next_composite = staticmethod(next_composite)
    consecutive_primes_from = staticmethod(consecutive_primes_from)
    sieve_segment = staticmethod(sieve_segment)
    twin_lessers = staticmethod(twin_lessers)
