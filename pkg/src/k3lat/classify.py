"""Candidate Néron–Severi lattices ZL ⊕ Ω and their even overlattices.

An overlattice in which Ω stays primitive is generated by one class
(L/r, δ) with δ ∈ Ω∨ of exact order r in disc(Ω), r | 2d and
q(δ) ≡ -2d/r² mod 2.  Everything here is derived from the discriminant
form of Ω; no case lists are stored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, prod
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .errors import SchemaError
from .lattice import (
    DiscriminantGroup,
    Lattice,
    Sublattice,
    diagonal,
    direct_sum,
    discriminant_group,
    glue_overlattice,
)

K3_RANK = 22

# 4p² + 2pq + 2q² + 14rs on (p, q, r, s)
Z7_FORM = [[4, 1, 0, 0], [1, 2, 0, 0], [0, 0, 0, 7], [0, 0, 7, 0]]
# d mod 7 -> vector of norm 2d with last coordinate k = d // 7
_Z7_FAMILIES = {0: (0, 0, 1), 1: (0, 1, 1), 2: (1, 0, 1), 4: (1, 1, 1)}


@dataclass(frozen=True)
class GlueVector:
    """The class (L/r, v/r) with v an integer row of Ω."""

    r: int
    v: tuple[int, ...]


@dataclass(frozen=True)
class Verdict:
    obstructed: bool
    reason: str = ""

    def __str__(self) -> str:
        return f"obstructed ({self.reason})" if self.obstructed else "unobstructed"


@dataclass
class NSCandidate:
    group: str
    d: int
    index: int
    omega: Lattice
    glue: Optional[GlueVector]
    det: int
    _element: tuple[int, ...] = field(default=(), repr=False)
    _tables: Optional["_FormTables"] = field(default=None, repr=False)

    @cached_property
    def disc_factors(self) -> list[int]:
        """Invariant factors of the discriminant group, computed as H⊥/H."""
        tab = self._tables
        hs = [2 * self.d] + list(tab.A.invariant_factors)
        rel = [[h if i == j else 0 for j in range(len(hs))] for i, h in enumerate(hs)]
        if self.glue is None:
            return _quotient_factors(la.identity(len(hs)), rel)
        return _quotient_factors(_glue_perp(tab, self.d, self.index, self._element),
                                 _glue_subgroup(tab, self.d, self.index, self._element))

    @property
    def rank(self) -> int:
        return self.omega.rank + 1

    @property
    def obstruction(self) -> Verdict:
        return _length_verdict(self.disc_factors, self.rank)

    @cached_property
    def base(self) -> Lattice:
        """ZL ⊕ Ω with L first."""
        return direct_sum(diagonal(2 * self.d), self.omega)

    @cached_property
    def lattice(self) -> Lattice:
        if self.glue is None:
            return self.base
        row = [Fraction(1, self.index)] + [Fraction(x, self.index) for x in self.glue.v]
        M, _ = glue_overlattice(self.base, [row])
        return M

    @cached_property
    def basis(self) -> list[list[Fraction]]:
        if self.glue is None:
            return la.identity(self.rank)
        row = [Fraction(1, self.index)] + [Fraction(x, self.index) for x in self.glue.v]
        return glue_overlattice(self.base, [row])[1]

    def omega_is_primitive(self) -> bool:
        """Saturation check of Ω inside the overlattice."""
        n = self.rank
        rows = [[Fraction(int(i == j + 1)) for i in range(n)] for j in range(n - 1)]
        coords = [la.rational_solve(la.transpose(self.basis), r) for r in rows]
        ints = [[int(c) for c in x] for x in coords]
        return Sublattice(self.lattice, ints).is_primitive

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "d": self.d,
            "index": self.index,
            "det": self.det,
            "disc_group": self.disc_factors,
            "obstruction": str(self.obstruction),
            "glue": None if self.glue is None else list(self.glue.v),
        }


class _FormTables:
    """Vectorized q, b and element orders over all of disc(Ω)."""

    def __init__(self, A: DiscriminantGroup):
        self.A = A
        Q, B, e = A._scaled()
        self.Q, self.B, self.e = Q, B, e
        k = A.length
        elems = list(A.elements())
        self.E = np.array(elems, dtype=np.int64).reshape(len(elems), k)
        Bm = np.array(B, dtype=np.int64).reshape(k, k)
        qv = (self.E * self.E) @ np.array(Q, dtype=np.int64).reshape(k)
        for i in range(k):
            for j in range(i + 1, k):
                qv = qv + 2 * self.E[:, i] * self.E[:, j] * int(Bm[i, j])
        self.qv = qv % (2 * e)
        orders = np.ones(len(self.E), dtype=np.int64)
        for i, h in enumerate(A.invariant_factors):
            o = h // np.gcd(self.E[:, i], h)
            orders = orders * o // np.gcd(orders, o)
        self.orders = orders


@lru_cache(maxsize=64)
def _tables(gram: tuple) -> _FormTables:
    return _FormTables(discriminant_group(Lattice([list(r) for r in gram])))


def _check_omega(omega: Lattice) -> None:
    if not omega.is_even:
        raise SchemaError("Ω must be even")
    if omega.rank and not omega.is_negative_definite:
        raise SchemaError("Ω must be negative definite")


def _quotient_factors(sup: Sequence[Sequence[int]], sub: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors (> 1) of sup/sub for full-rank sub ⊂ sup ⊂ Zᵐ."""
    coords = la.matmul(sub, la.inverse(sup))
    return [x for x in la.elementary_divisors(la.as_int_matrix(coords)) if x > 1]


def _glue_subgroup(tab: _FormTables, d: int, r: int, a: Sequence[int]) -> list[list[int]]:
    """HNF of the preimage in Z^(k+1) of the subgroup generated by (2d/r, a)."""
    hs = [2 * d] + list(tab.A.invariant_factors)
    m = len(hs)
    rel = [[hs[i] if i == j else 0 for j in range(m)] for i in range(m)]
    return la.hnf(rel + [[2 * d // r] + list(a)])


def _glue_perp(tab: _FormTables, d: int, r: int, a: Sequence[int]) -> list[list[int]]:
    """Preimage of the orthogonal of (2d/r, a) in disc(ZL) ⊕ disc(Ω)."""
    k = tab.A.length
    E = r * tab.e // gcd(r, tab.e)
    w = [E // r] + [
        (E // tab.e) * sum(a[j] * tab.B[i][j] for j in range(k)) % E for i in range(k)
    ]
    ker = la.integer_kernel([w + [E]], k + 2)
    return la.hnf([row[:k + 1] for row in ker])


def even_overlattices(d: int, omega: Lattice, group: str = "") -> list[NSCandidate]:
    """The split lattice ZL ⊕ Ω (L² = 2d) and all its even overlattices with Ω primitive."""
    if d <= 0:
        raise ValueError("d must be positive")
    _check_omega(omega)
    tab = _tables(tuple(map(tuple, omega.gram)))
    A = tab.A
    base_det = 2 * d * omega.det
    out = [NSCandidate(group, d, 1, omega, None, base_det, (), tab)]
    seen: set = set()
    g = gcd(2 * d, A.exponent)
    for r in (x for x in range(2, g + 1) if g % x == 0):
        # q(δ)·e·r² + 2d·e ≡ 0 mod 2e·r²
        mod = 2 * tab.e * r * r
        ok = (tab.orders == r) & ((tab.qv * r * r + 2 * d * tab.e) % mod == 0)
        for idx in np.flatnonzero(ok):
            a = tuple(int(x) for x in tab.E[idx])
            key = tuple(map(tuple, _glue_subgroup(tab, d, r, a)))
            if key in seen:
                continue
            seen.add(key)
            lift = A.lift(a)
            v = tuple(int(r * x) for x in lift)
            out.append(NSCandidate(group, d, r, omega, GlueVector(r, v),
                                   base_det // (r * r), a, tab))
    return out


def _length_verdict(factors: Sequence[int], rank: int) -> Verdict:
    room = K3_RANK - rank
    if len(factors) > room:
        return Verdict(True, f"discriminant needs {len(factors)} generators, "
                             f"transcendental rank is {room}")
    return Verdict(False)


def embedding_obstruction(M: Lattice) -> Verdict:
    """Generator-count obstruction to a primitive embedding in the K3 lattice.

    An unobstructed verdict is inconclusive: it is a necessary condition only.
    """
    if M.rank == 0 or M.signature != (1, M.rank - 1):
        raise SchemaError(f"expected signature (1, {M.rank - 1}), got {M.signature}")
    if not M.is_even:
        raise SchemaError("lattice must be even")
    return _length_verdict(discriminant_group(M).invariant_factors, M.rank)


def classify_ns(group: str, d: int, bundle=None) -> list[NSCandidate]:
    b = bundle or _default_bundle()
    key = b.group(group).key
    return even_overlattices(d, b.omega(key), key)


@lru_cache(maxsize=1)
def _default_bundle():
    from .bundle import Bundle
    return Bundle()


def index_set(candidates: Sequence[NSCandidate]) -> list[int]:
    return sorted({c.index for c in candidates})


# --- representations --------------------------------------------------------

@dataclass(frozen=True)
class Representation:
    vector: Optional[tuple[int, ...]]
    definitive: bool          # True when absence is proved, or a vector was found
    method: str

    @property
    def found(self) -> bool:
        return self.vector is not None


def _qform(gram, x) -> int:
    return la.dot(la.vecmat(x, gram), x)


def represent(gram: Sequence[Sequence[int]], N: int, box: int = 6) -> Representation:
    """A vector x with xᵀ·G·x = N, searched in the box |x_i| ≤ box."""
    if box < 1:
        raise ValueError("box must be at least 1")
    gram = [list(map(int, r)) for r in gram]
    n = len(gram)
    if n > 4:
        raise ValueError("represent handles rank ≤ 4")
    even = all(gram[i][i] % 2 == 0 for i in range(n))
    if even and N % 2:
        return Representation(None, True, "parity")
    if gram == Z7_FORM:
        d = N // 2
        if N > 0 and d % 7 in _Z7_FAMILIES:
            p, q, r = _Z7_FAMILIES[d % 7]
            x = (p, q, r, d // 7)
            assert _qform(gram, x) == N
            return Representation(x, True, "closed form")
        if d % 7 in (3, 5, 6):
            return Representation(None, True, "non-square mod 7")
    if N == 0:
        return Representation(tuple([0] * n), True, "zero vector")
    G = np.array(gram, dtype=np.int64)
    rng = np.arange(-box, box + 1, dtype=np.int64)
    # sweep the last coordinate to bound memory
    head = np.array(list(itertools.product(rng, repeat=n - 1)), dtype=np.int64).reshape(-1, n - 1)
    for s in sorted(rng, key=lambda t: (abs(int(t)), -int(t))):
        X = np.hstack([head, np.full((len(head), 1), s, dtype=np.int64)])
        vals = np.einsum("ij,jk,ik->i", X, G, X)
        hit = np.flatnonzero(vals == N)
        if hit.size:
            best = min((tuple(int(c) for c in X[i]) for i in hit),
                       key=lambda v: (sum(abs(c) for c in v), v))
            return Representation(best, True, "box search")
    return Representation(None, False, f"none found in box {box}")


def z7_embeddability(d: int, box: int = 6) -> dict:
    """Which candidates for G = Z/7 embed primitively in the K3 lattice.

    A class of norm 2d must exist in Ω⊥; the split lattice embeds when it
    is unobstructed and admits no overlattice, otherwise some overlattice
    must embed, and index 7 is the only one available.
    """
    cands = classify_ns("Z7", d)
    split = cands[0]
    rep = represent(Z7_FORM, 2 * d, box)
    over = [c for c in cands if c.index == 7]
    split_ok = rep.found and not split.obstruction.obstructed and not over
    over_ok = rep.found and bool(over) and split.obstruction.obstructed
    return {
        "d": d,
        "representation": list(rep.vector) if rep.found else None,
        "representation_method": rep.method,
        "split": split_ok,
        "index7": over_ok,
        "index7_candidates": len(over),
    }


__all__ = [
    "GlueVector", "NSCandidate", "Representation", "Verdict", "Z7_FORM",
    "classify_ns", "embedding_obstruction", "even_overlattices", "index_set",
    "represent", "z7_embeddability",
]
