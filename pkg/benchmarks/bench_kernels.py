#!/usr/bin/env python3
"""Benchmark the twin-pair sweep with the numba kernel vs the pure-numpy
interpreted fallback (TWINCONST_NO_NUMBA=1). Each mode runs in a fresh
subprocess so the env flag takes effect at import time.

Usage: python3 benchmarks/bench_kernels.py [--limit 10000000] [--repeat 3]
"""

import argparse
import os
import subprocess
import sys

SNIPPET = """
import time
from twinconst.verify import partitioned_scan
import twinconst.kernels as kernels

limit = {limit}
# warm-up pass compiles the kernel (numba mode) and touches the caches
partitioned_scan(min(limit, 10**5), 1)
best = None
for _ in range({repeat}):
    t0 = time.perf_counter()
    report = partitioned_scan(limit, 1)
    dt = time.perf_counter() - t0
    best = dt if best is None else min(best, dt)
mode = "numba" if kernels.NUMBA_ENABLED else "numpy-fallback"
print(f"{{mode}}\\t{{report.pairs_examined}}\\t{{best:.3f}}")
"""


def run(limit: int, repeat: int, disable_numba: bool) -> str:
    env = dict(os.environ)
    if disable_numba:
        env["TWINCONST_NO_NUMBA"] = "1"
    else:
        env.pop("TWINCONST_NO_NUMBA", None)
    code = SNIPPET.format(limit=limit, repeat=repeat)
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    return out.stdout.strip().splitlines()[-1]


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--limit", type=int, default=10**7)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"sweep of twin lessers <= {args.limit}, best of {args.repeat}")
    print("mode\tpairs\tseconds")
    rows = []
    for disable in (False, True):
        row = run(args.limit, args.repeat, disable)
        rows.append(row)
        print(row)
    t_numba = float(rows[0].split("\t")[2])
    t_numpy = float(rows[1].split("\t")[2])
    print(f"speedup: {t_numpy / t_numba:.1f}x")


if __name__ == "__main__":
    main()
