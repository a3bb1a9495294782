"""Hot per-pair simulation kernels.

Compiled with numba when available; set TWINCONST_NO_NUMBA=1 to force the
pure-numpy interpreted path (same source, no decoration). The benchmark in
benchmarks/bench_kernels.py compares both.
"""

from __future__ import annotations

import os

import numpy as np


def _numba_disabled() -> bool:
    return os.environ.get("TWINCONST_NO_NUMBA", "").lower() in ("1", "true", "yes")


NUMBA_ENABLED = not _numba_disabled()
if NUMBA_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        NUMBA_ENABLED = False

if not NUMBA_ENABLED:

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


@njit(cache=True)
def _step_to(flags: np.ndarray, k: int, want_prime: bool) -> int:
    """Least index > k with flags[index] == want_prime, or -1 if off the end."""
    k += 1
    n = flags.size
    while k < n:
        if flags[k] == want_prime:
            return k
        k += 1
    return -1


@njit(cache=True)
def pair_stats_kernel(
    twin_ks: np.ndarray,
    flags: np.ndarray,
    idx_prime: np.ndarray,
    threshold: int,
    stop_on_excess: bool,
):
    """Simulate the greedy pair recurrence for each twin lesser flags[k], flags[k+2].

    Per pair i (b at offset twin_ks[i], a = b + 2) returns:
      m_out        least index n with diff > threshold, 0 if none before merge
      maxdiff_out  max diff over simulated indices (exact once merged)
      maxdiff_n    first index attaining maxdiff_out
      merge_out    merge index, 0 if not reached (excess stop or overrun)
      ok_out       False when the bitmap/index tables were exhausted; caller
                   must redo that pair on the unbounded path
    """
    npairs = twin_ks.size
    m_out = np.zeros(npairs, np.int64)
    maxdiff_out = np.zeros(npairs, np.int64)
    maxdiff_n_out = np.zeros(npairs, np.int64)
    merge_out = np.zeros(npairs, np.int64)
    ok_out = np.ones(npairs, np.bool_)
    nidx = idx_prime.size
    for i in range(npairs):
        kb = twin_ks[i]
        ka = kb + 2
        maxd = 2
        maxd_n = 2
        m = 0
        merge_n = 0
        if threshold < 2:
            m = 2
        done = stop_on_excess and m != 0
        ok = True
        n = 3
        while not done:
            if n >= nidx:
                ok = False
                break
            want = idx_prime[n]
            ka = _step_to(flags, ka, want)
            kb = _step_to(flags, kb, want)
            if ka < 0 or kb < 0:
                ok = False
                break
            d = ka - kb
            if d > maxd:
                maxd = d
                maxd_n = n
            if m == 0 and d > threshold:
                m = n
                if stop_on_excess:
                    done = True
            if d == 0:
                merge_n = n
                done = True
            n += 1
        m_out[i] = m
        maxdiff_out[i] = maxd
        maxdiff_n_out[i] = maxd_n
        merge_out[i] = merge_n
        ok_out[i] = ok
    return m_out, maxdiff_out, maxdiff_n_out, merge_out, ok_out


def match_offsets_bulk(
    ks: np.ndarray,
    flags: np.ndarray,
    csum: np.ndarray,
    offsets: tuple[int, ...],
    require_consecutive: bool,
    forbidden_next: int | None,
) -> np.ndarray:
    """Vectorized gap-pattern test at base offsets ks into a primality bitmap.

    csum must be the exclusive prefix sum of flags (csum[k] = primes among
    flags[:k]). Callers guarantee ks + max offset stays inside flags.
    """
    out = np.ones(ks.size, dtype=bool)
    for o in offsets:
        out &= flags[ks + o]
    if require_consecutive:
        last = offsets[-1]
        out &= (csum[ks + last + 1] - csum[ks]) == len(offsets)
    if forbidden_next is not None:
        out &= ~flags[ks + forbidden_next]
    return out
