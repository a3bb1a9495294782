"""Gap patterns, twin-lesser classification, and the fast nearness predicate.

A twin lesser p is "near" when the traces started at p and p+2 never drift
more than 6 apart. Simulation (hseq.pair_trace) is the ground truth; the
pattern classifier here predicts the same answer from a constellation test
and is verified against simulation by the sweep campaigns.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import primes
from .hseq import DEFAULT_BOUND, DEFAULT_THRESHOLD, pair_trace


class TwinClass(Enum):
    MOD30_11 = 11
    MOD30_17 = 17
    MOD30_29 = 29
    SPECIAL_3 = 3
    SPECIAL_5 = 5
    NOT_TWIN_LESSER = 0


@dataclass(frozen=True)
class GapPattern:
    """Offsets of a prime constellation relative to a base prime p.

    require_consecutive demands no omitted primes inside [p, p + offsets[-1]];
    forbidden_next, when set, demands p + forbidden_next composite.
    """

    offsets: tuple[int, ...]
    require_consecutive: bool = True
    forbidden_next: int | None = None

    def __post_init__(self) -> None:
        if not self.offsets or self.offsets[0] != 0:
            raise ValueError("offsets must start at 0")
        if any(o % 2 for o in self.offsets):
            raise ValueError("offsets must be even")
        if any(x >= y for x, y in zip(self.offsets, self.offsets[1:])):
            raise ValueError("offsets must be strictly increasing")


# Five- and seven-prime constellations characterizing nearness per residue class.
NEAR_PATTERNS: dict[TwinClass, GapPattern] = {
    TwinClass.MOD30_17: GapPattern((0, 2, 6, 12, 14)),
    TwinClass.MOD30_29: GapPattern((0, 2, 8, 12, 14)),
    TwinClass.MOD30_11: GapPattern((0, 2, 6, 8, 12, 18, 20)),
}

_EXCESS17_OFFSETS = (
    (0, 2, 8, 12, 18, 24, 30),
    (0, 2, 8, 14, 20, 24, 30),
    (0, 2, 8, 14, 18, 24, 30),
)


def classify_twin(p: int) -> TwinClass:
    if p < 2 or not (primes.is_prime(p) and primes.is_prime(p + 2)):
        return TwinClass.NOT_TWIN_LESSER
    if p == 3:
        return TwinClass.SPECIAL_3
    if p == 5:
        return TwinClass.SPECIAL_5
    r = p % 30
    if r not in (11, 17, 29):
        raise AssertionError(f"twin lesser {p} outside residue trichotomy")
    return TwinClass(r)


def matches_pattern(p: int, pattern: GapPattern) -> bool:
    """True iff the constellation described by pattern sits at base p."""
    if not primes.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not all(primes.is_prime(p + o) for o in pattern.offsets):
        return False
    if pattern.require_consecutive:
        run = primes.consecutive_primes_from(p, len(pattern.offsets))
        if run != [p + o for o in pattern.offsets]:
            return False
    if pattern.forbidden_next is not None and primes.is_prime(p + pattern.forbidden_next):
        return False
    return True


def predicts_near(p: int) -> bool:
    """Constellation-based prediction of max trace difference <= 6, no simulation."""
    cls = classify_twin(p)
    if cls is TwinClass.NOT_TWIN_LESSER:
        raise ValueError(f"{p} is not a twin lesser")
    if cls is TwinClass.SPECIAL_3:
        return True  # unique pair with max difference 4
    if cls is TwinClass.SPECIAL_5:
        return False  # max difference 14
    return matches_pattern(p, NEAR_PATTERNS[cls])


def corollary_patterns(m: int) -> list[GapPattern]:
    """Constellations equivalent to first-excess index 17 (m=17) or 15 (m=15)."""
    if m == 17:
        return [GapPattern(o, forbidden_next=32) for o in _EXCESS17_OFFSETS]
    if m == 15:
        return [GapPattern(o + (32,)) for o in _EXCESS17_OFFSETS]
    raise ValueError(f"patterns defined for m in {{15, 17}} only, got {m}")


def predict_near_bulk(twin_ks: np.ndarray, lo: int, flags: np.ndarray) -> np.ndarray:
    """Vectorized predicts_near over twin lessers at lo + twin_ks.

    flags must extend at least 20 values past the largest twin lesser.
    """
    from .kernels import match_offsets_bulk

    ps = lo + twin_ks
    out = np.zeros(ps.size, dtype=bool)
    csum = np.concatenate(([0], np.cumsum(flags)))
    for cls, pattern in NEAR_PATTERNS.items():
        sel = ps % 30 == cls.value
        if sel.any():
            out[sel] = match_offsets_bulk(
                twin_ks[sel], flags, csum, pattern.offsets, True, None
            )
    out[ps == 3] = True
    out[ps == 5] = False
    return out


def scan_c_sequence(limit: int, workers: int = 1) -> list[int]:
    """Twin lessers p <= limit with simulated max difference <= 6, ascending."""
    from .sweeps import scan_twin_range

    if limit < 3:
        return []
    result = scan_twin_range(3, limit, workers=workers)
    return [int(p) for p in result.ps[result.near]]


def scan_m_sequence(count: int) -> list[int]:
    """First-excess indices for the first count twin pairs (0 = never exceeds)."""
    from .sweeps import scan_twin_range

    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    lo, hi = 3, 1 << 12
    out: list[int] = []
    while True:
        result = scan_twin_range(3, hi)
        if result.ps.size >= count:
            return [int(m) for m in result.m[:count]]
        hi *= 4


def simulated_near(p: int, bound: int = DEFAULT_BOUND) -> bool:
    """Ground-truth nearness by direct simulation."""
    report = pair_trace(p + 2, p, DEFAULT_THRESHOLD, bound)
    return report.merged and report.max_diff <= DEFAULT_THRESHOLD
