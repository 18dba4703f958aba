"""Compiled vs pure-Python enumeration kernel on the coinvariant lattices.

Counts vectors by norm (no vector list is materialized), so the timing is
dominated by the Fincke–Pohst recursion itself.

    python benchmarks/bench_shortvec.py [--groups Z2 Z7 Z4^2] [--bound 8] [--repeat 1]
"""

import argparse
import time

from k3lat import shortvec
from k3lat.bundle import Bundle


def timed(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--groups", nargs="+", default=["Z2", "Z3", "Z5", "Z7", "Z4^2"])
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--repeat", type=int, default=1)
    args = p.parse_args()
    have_c = shortvec._enum_c is not None
    if not have_c:
        print("compiled kernel not built; timing the Python kernel only")
    b = Bundle()
    print(f"{'group':8} {'rank':>4} {'pairs':>9} {'python s':>9} {'cython s':>9} {'speedup':>7}", flush=True)
    for g in args.groups:
        om = b.omega(g)
        tp, cp = timed(lambda: shortvec.norm_counts(om, args.bound, backend="python"), args.repeat)
        n = sum(cp.values())
        if have_c:
            tc, cc = timed(lambda: shortvec.norm_counts(om, args.bound, backend="cython"), args.repeat)
            assert cc == cp, "backends disagree"
            print(f"{g:8} {om.rank:4d} {n:9d} {tp:9.3f} {tc:9.3f} {tp / tc:7.1f}", flush=True)
        else:
            print(f"{g:8} {om.rank:4d} {n:9d} {tp:9.3f} {'-':>9} {'-':>7}", flush=True)


if __name__ == "__main__":
    main()
