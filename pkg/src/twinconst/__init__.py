"""twinconst: greedy prime-index-constrained sequences, twin-pair statistics,
and prime-constellation verification campaigns."""

from .constellations import (
    GapPattern,
    TwinClass,
    classify_twin,
    corollary_patterns,
    matches_pattern,
    predicts_near,
    scan_c_sequence,
    scan_m_sequence,
)
from .hseq import (
    HTrace,
    NotMergedWithin,
    PairReport,
    h_sequence,
    h_step,
    max_difference,
    merge_position,
    pair_trace,
)
from .primes import (
    PrimeEngine,
    Segment,
    consecutive_primes_from,
    is_prime,
    next_composite,
    next_prime,
    sieve_segment,
    twin_lessers,
)
from .verify import (
    CampaignReport,
    partitioned_scan,
    probe_conjecture1,
    verify_corollaries,
    verify_theorem1,
    verify_theorem2,
)

__version__ = "0.1.0"

__all__ = [
    "CampaignReport",
    "GapPattern",
    "HTrace",
    "NotMergedWithin",
    "PairReport",
    "PrimeEngine",
    "Segment",
    "TwinClass",
    "classify_twin",
    "consecutive_primes_from",
    "corollary_patterns",
    "h_sequence",
    "h_step",
    "is_prime",
    "matches_pattern",
    "max_difference",
    "merge_position",
    "next_composite",
    "next_prime",
    "pair_trace",
    "partitioned_scan",
    "predicts_near",
    "probe_conjecture1",
    "scan_c_sequence",
    "scan_m_sequence",
    "sieve_segment",
    "twin_lessers",
    "verify_corollaries",
    "verify_theorem1",
    "verify_theorem2",
]
