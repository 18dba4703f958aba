"""Short vectors, minimum and minimal-vector generation for definite lattices.

The enumeration kernel is compiled when the extension is available and
the bounds fit in 128-bit integers; otherwise the Python kernel runs.
Set ``K3LAT_PURE_PYTHON=1`` to force the Python kernel.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from . import linalg as la
from . import _enum_py
from .errors import DegenerateForm, IndefiniteForm
from .lattice import Lattice
from .reduction import ldl_integral, lll_gram

try:
    if os.environ.get("K3LAT_PURE_PYTHON"):
        raise ImportError
    from . import _enum_c
except ImportError:
    _enum_c = None

BACKEND = "cython" if _enum_c is not None else "python"


@dataclass
class ShortVectorSet:
    bound: int
    vectors: list[tuple[int, ...]]
    norms: list[int]          # signed, in the lattice's own sign

    def __len__(self) -> int:
        return len(self.vectors)


def _positive_gram(L: Lattice) -> tuple[list[list[int]], int]:
    try:
        if L.rank and L.is_positive_definite:
            return L.gram, 1
        if L.rank and L.is_negative_definite:
            return [[-x for x in r] for r in L.gram], -1
    except DegenerateForm:
        pass
    if L.rank == 0:
        return [], 1
    raise IndefiniteForm(f"lattice {L.name or ''} is not definite".replace("  ", " "))


def _fits_int128(gram, d, lam, bound) -> bool:
    lim64 = 1 << 62
    dmax = max(d)
    if dmax >= lim64 or any(abs(v) >= lim64 for r in lam for v in r):
        return False
    if bound * dmax * dmax >= 1 << 120:
        return False
    inv = la.inverse(gram)
    n = len(gram)
    xb = [isqrt(int(bound * inv[i][i])) + 1 for i in range(n)]
    for j in range(n):
        if d[j + 1] * xb[j] + sum(abs(lam[k][j]) * xb[k] for k in range(j + 1, n)) >= lim64:
            return False
    return True


def _run(gram, bound: int, count_only: bool, backend: str | None = None):
    """Enumerate on an LLL-reduced copy; returns (result, H)."""
    red, h = lll_gram(gram)
    d, lam = ldl_integral(red)
    use = backend or BACKEND
    if use == "cython" and _enum_c is not None and _fits_int128(red, d, lam, bound):
        res = _enum_c.enumerate_short(d, lam, bound, count_only)
    else:
        res = _enum_py.enumerate_short(d, lam, bound, count_only)
    return res, h


def _canonical(v: Sequence[int]) -> tuple[int, ...]:
    for c in v:
        if c:
            return tuple(v) if c > 0 else tuple(-x for x in v)
    return tuple(v)


def short_vectors(L: Lattice, bound: int, backend: str | None = None) -> ShortVectorSet:
    """All v ≠ 0 with |q(v)| ≤ bound, one of each ± pair, sorted by (|norm|, coords)."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    gram, sign = _positive_gram(L)
    if not gram:
        return ShortVectorSet(bound, [], [])
    res, h = _run(gram, bound, False, backend)
    items = sorted((q, _canonical(la.vecmat(x, h))) for x, q in res)
    return ShortVectorSet(bound, [v for _, v in items], [sign * q for q, _ in items])


def norm_counts(L: Lattice, bound: int, backend: str | None = None) -> dict[int, int]:
    """|norm| -> number of ± pairs, up to bound."""
    gram, _ = _positive_gram(L)
    if not gram:
        return {}
    res, _ = _run(gram, bound, True, backend)
    return dict(sorted(res.items()))


def minimum(L: Lattice) -> int:
    """Smallest |q(v)| over nonzero v."""
    gram, _ = _positive_gram(L)
    if not gram:
        raise ValueError("the zero lattice has no minimum")
    red, _ = lll_gram(gram)
    bound = min(red[i][i] for i in range(len(red)))
    counts = norm_counts(L, bound)
    return min(counts)


def minimal_vectors(L: Lattice) -> ShortVectorSet:
    m = minimum(L)
    return short_vectors(L, m)


def minimal_index(L: Lattice, vectors: Sequence[Sequence[int]] | None = None) -> int:
    """Index in L of the span of its minimal vectors (0 when not full rank)."""
    vecs = minimal_vectors(L).vectors if vectors is None else vectors
    n = L.rank
    basis: list[list[int]] = []
    for v in vecs:
        basis = la.hnf(basis + [list(v)])
        if len(basis) == n and _pivot_product(basis) == 1:
            return 1
    if len(basis) < n:
        return 0
    return _pivot_product(basis)


def _pivot_product(h: list[list[int]]) -> int:
    p = 1
    for r in h:
        p *= next(x for x in r if x)
    return abs(p)


def generated_by_minimal(L: Lattice) -> bool:
    return minimal_index(L) == 1
