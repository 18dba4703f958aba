"""Isometry testing between definite lattices by backtracking on short vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg as la
from .errors import IndefiniteForm
from .lattice import Lattice
from .reduction import lll_gram
from .shortvec import _positive_gram, minimum, norm_counts, short_vectors


@dataclass
class IsometryResult:
    isometric: bool
    witness: Optional[list[list[int]]]   # M with Mᵀ·G2·M = G1
    reason: str = ""


def invariants_match(L1: Lattice, L2: Lattice) -> tuple[bool, str]:
    if L1.rank != L2.rank:
        return False, "rank"
    if L1.rank == 0:
        return True, ""
    if L1.det != L2.det:
        return False, "determinant"
    if L1.is_even != L2.is_even:
        return False, "parity"
    m1, m2 = minimum(L1), minimum(L2)
    if m1 != m2:
        return False, "minimum"
    if norm_counts(L1, m1 + 4) != norm_counts(L2, m1 + 4):
        return False, "norm histogram"
    return True, ""


def _sign(L: Lattice) -> int:
    return _positive_gram(L)[1]


def is_isometric(L1: Lattice, L2: Lattice) -> IsometryResult:
    """Decide L1 ≅ L2 for definite lattices; a witness is verified exactly."""
    s1, s2 = _sign(L1), _sign(L2)
    if L1.rank and L2.rank and s1 != s2:
        return IsometryResult(False, None, "signature")
    ok, why = invariants_match(L1, L2)
    if not ok:
        return IsometryResult(False, None, why)
    n = L1.rank
    if n == 0:
        return IsometryResult(True, [])
    g1 = [[s1 * x for x in r] for r in L1.gram]
    g2 = [[s1 * x for x in r] for r in L2.gram]
    red, h1 = lll_gram(g1)
    w = _search(red, g2)
    if w is None:
        return IsometryResult(False, None, "no isometry")
    r = la.matmul(la.inverse(h1), w)
    m = la.transpose(la.as_int_matrix(r))
    if la.congruent(la.transpose(m), L2.gram) != L1.gram:
        raise AssertionError("isometry witness failed verification")
    return IsometryResult(True, m)


def _search(g1: list[list[int]], g2: list[list[int]]) -> Optional[list[list[int]]]:
    """Rows W with W·g2·Wᵀ = g1 (g1 LLL-reduced, both positive definite)."""
    n = len(g1)
    norms = sorted({g1[i][i] for i in range(n)})
    sv = short_vectors(Lattice(g2), norms[-1])
    vecs = [v for v, q in zip(sv.vectors, sv.norms) if q in norms]
    if not vecs:
        return None
    V = np.array(vecs + [tuple(-x for x in v) for v in vecs], dtype=np.int64)
    P = V @ np.array(g2, dtype=np.int64)           # rows: v·g2
    vn = np.einsum("ij,ij->i", P, V)
    cand0 = [np.flatnonzero(vn == g1[i][i]) for i in range(n)]
    images: list[int] = []

    def extend(i: int, cands: list[np.ndarray]) -> bool:
        if i == n:
            return True
        for c in cands[i]:
            nxt = list(cands)
            dead = False
            for k in range(i + 1, n):
                sub = nxt[k]
                sub = sub[(P[sub] @ V[c]) == g1[k][i]]
                if sub.size == 0:
                    dead = True
                    break
                nxt[k] = sub
            if dead:
                continue
            images.append(int(c))
            if extend(i + 1, nxt):
                return True
            images.pop()
        return False

    if not extend(0, cand0):
        return None
    return [[int(x) for x in V[c]] for c in images]


def require_definite(L: Lattice) -> None:
    _positive_gram(L)


__all__ = ["IsometryResult", "IndefiniteForm", "invariants_match", "is_isometric", "require_definite"]
