"""Pure-Python Fincke–Pohst kernel on integral LDLᵀ data.

With T_j = d_j·x_j + Σ_{k>j} λ_kj·x_k the partial norms N_j satisfy
N_j = (d_{j-1}·N_{j+1} + T_j²) / d_j exactly, and the budget test is
T_j² ≤ d_{j-1}·(B·d_j − N_{j+1}).  Everything stays in Python ints.
"""

from __future__ import annotations

from math import isqrt


def enumerate_short(d: list[int], lam: list[list[int]], bound: int,
                    count_only: bool = False):
    """Vectors x ≠ 0 with Q(x) ≤ bound, one of each ± pair.

    The kept sign makes the last nonzero coordinate positive.  Returns a
    list of (x, Q(x)) or, with ``count_only``, a dict norm -> count.
    """
    n = len(d) - 1
    if n == 0:
        return {} if count_only else []
    x = [0] * n
    hi = [0] * n
    N = [0] * (n + 1)        # N[j] partial norm with N[n] = 0
    s = [0] * n
    out = [] if not count_only else {}
    # zero_above[j]: coordinates j+1..n-1 are all zero
    j = n - 1

    def start(j: int) -> bool:
        sj = 0
        row_j = j
        for k in range(j + 1, n):
            if x[k]:
                sj += lam[k][row_j] * x[k]
        s[j] = sj
        dj, dp = d[j + 1], d[j]
        w = dp * (bound * dj - N[j + 1])
        if w < 0:
            return False
        r = isqrt(w)
        lo = -((r + sj) // dj)            # ceil((-r - s)/d)
        up = (r - sj) // dj
        if all(x[k] == 0 for k in range(j + 1, n)):
            lo = max(lo, 0)
        if lo > up:
            return False
        x[j] = lo
        hi[j] = up
        return True

    if not start(j):
        return out
    while True:
        if x[j] > hi[j]:
            j += 1
            if j == n:
                break
            x[j] += 1
            continue
        t = d[j + 1] * x[j] + s[j]
        N[j] = (d[j] * N[j + 1] + t * t) // d[j + 1]
        if j == 0:
            if N[0] and any(x):
                if count_only:
                    out[N[0]] = out.get(N[0], 0) + 1
                else:
                    out.append((tuple(x), N[0]))
            x[0] += 1
            continue
        j -= 1
        if not start(j):
            j += 1
            x[j] += 1
    return out
