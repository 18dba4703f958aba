"""Integral LLL on a Gram matrix and the integer LDLᵀ data used by enumeration."""

from __future__ import annotations

from typing import Sequence

from . import linalg as la
from .errors import DegenerateForm


def _round_div(a: int, b: int) -> int:
    # nearest integer to a/b for b > 0, ties away from the floor
    return (2 * a + b) // (2 * b)


def lll_gram(gram: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """LLL-reduce a positive definite Gram matrix with δ = 3/4.

    Returns ``(G', H)`` with ``G' = H·G·Hᵀ`` and H unimodular; rows of H
    are the reduced basis in the old coordinates.  All arithmetic is
    integral (the d_i / λ_ij formulation).
    """
    n = len(gram)
    b = [list(map(int, r)) for r in gram]
    h = la.identity(n)
    if n <= 1:
        return b, h
    d = [1] + [0] * n          # d[i] is the i-th leading minor, d[0] = 1
    lam = [[0] * n for _ in range(n)]

    def red(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) <= d[l + 1]:
            return
        q = _round_div(lam[k][l], d[l + 1])
        h[k] = [x - q * y for x, y in zip(h[k], h[l])]
        bkl = b[k][l]
        b[k][k] += q * q * b[l][l] - 2 * q * bkl
        for j in range(n):
            if j != k:
                b[k][j] -= q * b[l][j]
                b[j][k] = b[k][j]
        lam[k][l] -= q * d[l + 1]
        for i in range(l):
            lam[k][i] -= q * lam[l][i]

    def swap(k: int, kmax: int) -> None:
        h[k], h[k - 1] = h[k - 1], h[k]
        b[k], b[k - 1] = b[k - 1], b[k]
        for r in b:
            r[k], r[k - 1] = r[k - 1], r[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        m = lam[k][k - 1]
        big = (d[k - 1] * d[k + 1] + m * m) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - m * t) // d[k]
            lam[i][k - 1] = (big * t + m * lam[i][k]) // d[k + 1]
        d[k] = big

    d[1] = b[0][0]
    if d[1] <= 0:
        raise DegenerateForm("Gram matrix is not positive definite")
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = b[k][j]
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u <= 0:
                        raise DegenerateForm("Gram matrix is not positive definite")
                    d[k + 1] = u
        red(k, k - 1)
        if 4 * d[k + 1] * d[k - 1] < 3 * d[k] * d[k] - 4 * lam[k][k - 1] ** 2:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return b, h


def ldl_integral(gram: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Integer data ``(d, λ)`` with Q(x) = Σ_j (d_j x_j + Σ_{k>j} λ_kj x_k)² / (d_j d_{j-1}).

    ``d`` has length n+1 with d[0] = 1 and d[j+1] the (j+1)-th leading minor;
    ``λ[k][j]`` (k > j) is the integral Gram–Schmidt coefficient μ_kj·d_{j+1}.
    """
    n = len(gram)
    d = [1] + [0] * n
    lam = [[0] * n for _ in range(n)]
    for k in range(n):
        for j in range(k + 1):
            u = gram[k][j]
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u <= 0:
                    raise DegenerateForm("Gram matrix is not positive definite")
                d[k + 1] = u
    return d, lam
