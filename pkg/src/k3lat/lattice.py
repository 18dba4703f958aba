"""Integral lattices given by Gram matrices, and their discriminant forms."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, prod
from typing import Iterable, Iterator, Optional, Sequence

from . import linalg as la
from .errors import DegenerateForm, GlueError, SchemaError


class Lattice:
    """A free Z-module with a symmetric integral bilinear form."""

    def __init__(self, gram: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None,
                 name: str = ""):
        g = [[int(x) for x in row] for row in gram]
        if not la.is_symmetric(g):
            raise ValueError("Gram matrix must be square and symmetric")
        if labels is not None and len(labels) != len(g):
            raise ValueError("one label per basis vector is required")
        self.gram = g
        self.labels = list(labels) if labels is not None else None
        self.name = name

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<Lattice{tag} rank={self.rank}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self):
        return hash(tuple(map(tuple, self.gram)))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return la.determinant(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def norm(self, v: Sequence) -> int | Fraction:
        return la.dot(la.vecmat(v, self.gram), v)

    def inner(self, u: Sequence, v: Sequence):
        return la.dot(la.vecmat(u, self.gram), v)

    @cached_property
    def gram_inverse(self) -> list[list[Fraction]]:
        return la.inverse(self.gram)

    @cached_property
    def signature(self) -> tuple[int, int]:
        return signature(self.gram)

    @property
    def is_positive_definite(self) -> bool:
        return self.rank == 0 or self.signature == (self.rank, 0)

    @property
    def is_negative_definite(self) -> bool:
        return self.rank == 0 or self.signature == (0, self.rank)

    @cached_property
    def discriminant_group(self) -> "DiscriminantGroup":
        return discriminant_group(self)

    def rescale(self, n: int) -> "Lattice":
        return rescale(self, n)

    def to_json(self) -> list[list[str]]:
        return gram_to_json(self.gram)


# --- constructors ------------------------------------------------------------

def hyperbolic_plane() -> Lattice:
    return Lattice([[0, 1], [1, 0]], name="U")


def _dynkin_gram(n: int, edges: Iterable[tuple[int, int]], sign: int) -> list[list[int]]:
    g = [[2 * sign if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = -sign
    return g


def root_lattice(kind: str, n: int, sign: int = -1) -> Lattice:
    """A, D or E root lattice; ``sign=-1`` gives the negative definite form."""
    kind = kind.upper()
    if kind == "A" and n >= 1:
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "D" and n >= 4:
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif kind == "E" and n in (6, 7, 8):
        # chain 0..n-2 with the extra node attached to the third vertex
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    else:
        raise ValueError(f"no root lattice {kind}{n}")
    suffix = "(-1)" if sign < 0 else ""
    return Lattice(_dynkin_gram(n, edges, sign), name=f"{kind}{n}{suffix}")


def diagonal(*entries: int) -> Lattice:
    return Lattice([[x if i == j else 0 for j in range(len(entries))]
                    for i, x in enumerate(entries)])


def direct_sum(*lattices: Lattice) -> Lattice:
    labels = None
    if lattices and all(L.labels is not None for L in lattices):
        labels = [x for L in lattices for x in L.labels]
    return Lattice(la.block_diag(*(L.gram for L in lattices)), labels=labels)


def rescale(L: Lattice, n: int) -> Lattice:
    if n == 0:
        raise ValueError("rescaling factor must be nonzero")
    return Lattice([[n * x for x in row] for row in L.gram], labels=L.labels,
                   name=f"{L.name}({n})" if L.name else "")


def k3_lattice() -> Lattice:
    U = hyperbolic_plane()
    E = root_lattice("E", 8)
    L = direct_sum(U, U, U, E, E)
    L.name = "U^3+E8(-1)^2"
    return L


# --- signature ---------------------------------------------------------------

def signature(gram: Sequence[Sequence[int]]) -> tuple[int, int]:
    """Inertia by symmetric Gaussian elimination over Q."""
    a = [[Fraction(x) for x in row] for row in gram]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if a[i][i] != 0), None)
        if p is None:
            # all diagonal entries vanish: combine two vectors
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                raise DegenerateForm("the form is degenerate")
            i, j = pair
            # e_i <- e_i + e_j gives diagonal 2 a_ij
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            p = i
        piv = a[p][p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        for i in active:
            f = a[i][p] / piv
            if f:
                for k in active:
                    a[i][k] -= f * a[p][k]
        for i in active:
            a[i][p] = a[p][i] = Fraction(0)
    return pos, neg


# --- discriminant forms ------------------------------------------------------

def _mod2(q: Fraction) -> Fraction:
    """Representative of q mod 2 in (-2, 0]."""
    r = q - 2 * (q // 2)
    return r - 2 if r > 0 else r


def _mod1(b: Fraction) -> Fraction:
    return b - (b // 1)


@dataclass
class DiscriminantGroup:
    """The finite quadratic form ``L∨/L``.

    ``generator_lifts`` are rational coordinate rows in the basis of L;
    ``q_values`` live in (-2, 0] and ``b_values`` in [0, 1).
    """

    invariant_factors: list[int]
    generator_lifts: list[list[Fraction]]
    q_values: list[Fraction]
    b_values: list[list[Fraction]]
    _reduction: list[list[int]] = field(default_factory=list, repr=False)
    _gram: list[list[int]] = field(default_factory=list, repr=False)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def length(self) -> int:
        return len(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __str__(self) -> str:
        return format_group(self.invariant_factors)

    def coordinates(self, x: Sequence) -> tuple[int, ...]:
        """Coefficients of a dual vector x (rational L-coordinates) in the generators."""
        z = la.vecmat(x, self._gram)
        if any(Fraction(c).denominator != 1 for c in z):
            raise ValueError("vector is not in the dual lattice")
        z = [int(c) for c in z]
        return tuple(la.dot(row, z) % h for row, h in zip(self._reduction, self.invariant_factors))

    def lift(self, a: Sequence[int]) -> list[Fraction]:
        out = [Fraction(0)] * (len(self.generator_lifts[0]) if self.generator_lifts else 0)
        for c, g in zip(a, self.generator_lifts):
            if c:
                out = [x + c * y for x, y in zip(out, g)]
        return out

    def q(self, a: Sequence[int]) -> Fraction:
        k = len(a)
        t = sum(a[i] * a[i] * self.q_values[i] for i in range(k))
        t += 2 * sum(a[i] * a[j] * self.b_values[i][j] for i in range(k) for j in range(i + 1, k))
        return _mod2(t)

    def b(self, a: Sequence[int], c: Sequence[int]) -> Fraction:
        k = len(a)
        return _mod1(sum(a[i] * c[j] * self.b_values[i][j] for i in range(k) for j in range(k)))

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(h) for h in self.invariant_factors))

    def element_order(self, a: Sequence[int]) -> int:
        o = 1
        for c, h in zip(a, self.invariant_factors):
            k = h // gcd(c, h)
            o = o * k // gcd(o, k)
        return o

    def opposite(self) -> "DiscriminantGroup":
        return DiscriminantGroup(
            list(self.invariant_factors), self.generator_lifts,
            [_mod2(-q) for q in self.q_values],
            [[_mod1(-b) for b in row] for row in self.b_values],
            self._reduction, self._gram,
        )

    def _scaled(self):
        """Integer tables (Q, B, E) with q = Q/E mod 2 and b = B/E mod 1."""
        dens = [q.denominator for q in self.q_values]
        dens += [b.denominator for row in self.b_values for b in row]
        e = 1
        for d in dens:
            e = e * d // gcd(e, d)
        Q = [int(q * e) % (2 * e) for q in self.q_values]
        B = [[int(b * e) % e for b in row] for row in self.b_values]
        return Q, B, e

    def profile(self) -> dict[tuple[int, Fraction], int]:
        """Histogram of (element order, q value) over the whole group."""
        Q, B, e = self._scaled()
        k = self.length
        hist: dict[tuple[int, Fraction], int] = {}
        for a in self.elements():
            t = sum(a[i] * a[i] * Q[i] for i in range(k))
            t += 2 * sum(a[i] * a[j] * B[i][j] for i in range(k) for j in range(i + 1, k))
            key = (self.element_order(a), _mod2(Fraction(t % (2 * e), e)))
            hist[key] = hist.get(key, 0) + 1
        return hist

    def is_identity_action(self, images: Sequence[Sequence[int]]) -> bool:
        return all(tuple(img) == tuple(int(i == j) for j in range(self.length))
                   for i, img in enumerate(images))


def format_group(factors: Sequence[int]) -> str:
    if not factors:
        return "0"
    parts = []
    for h, grp in itertools.groupby(factors):
        n = len(list(grp))
        parts.append(f"(Z/{h})^{n}" if n > 1 else f"Z/{h}")
    return "+".join(parts)


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    g = L.gram
    n = L.rank
    if n and L.det == 0:
        raise DegenerateForm("the form is degenerate")
    u, d, v = la.smith_normal_form(g)
    lifts, factors, red = [], [], []
    for i in range(n):
        h = d[i][i]
        if h > 1:
            factors.append(h)
            lifts.append([Fraction(v[r][i], h) for r in range(n)])
            red.append(u[i])
    k = len(factors)
    b = [[_mod1(L.inner(lifts[i], lifts[j])) for j in range(k)] for i in range(k)]
    q = [_mod2(L.norm(x)) for x in lifts]
    return DiscriminantGroup(factors, lifts, q, b, red, g)


def forms_isomorphic(A: DiscriminantGroup, B: DiscriminantGroup) -> bool:
    """Exact isomorphism test for finite quadratic forms.

    Backtracks over images of A's generators among elements of B with the
    right order and q value, pruning every later candidate list by the
    required b values as soon as an image is fixed.
    """
    import numpy as np

    if A.invariant_factors != B.invariant_factors:
        return False
    k = A.length
    if k == 0:
        return True
    if A.profile() != B.profile():
        return False
    QA, BA, ea = A._scaled()
    QB, BB, eb = B._scaled()
    e = ea * eb // gcd(ea, eb)
    QA = [x * (e // ea) for x in QA]
    BA = [[x * (e // ea) for x in r] for r in BA]
    QB = [x * (e // eb) for x in QB]
    hB = B.invariant_factors
    E = np.array(list(B.elements()), dtype=np.int64)
    Bm = np.array(BB, dtype=np.int64) * (e // eb)
    R = (E @ Bm) % e                                   # b(x, gen_j)·e
    qv = (E * E) @ np.array(QB, dtype=np.int64)
    for i in range(k):
        for j in range(i + 1, k):
            qv += 2 * E[:, i] * E[:, j] * int(Bm[i, j])
    qv %= 2 * e
    orders = np.ones(len(E), dtype=np.int64)
    for i, h in enumerate(hB):
        o = h // np.gcd(E[:, i], h)
        orders = orders * o // np.gcd(orders, o)
    cands = [np.flatnonzero((orders == A.invariant_factors[i]) & (qv == QA[i] % (2 * e)))
             for i in range(k)]
    images: list[int] = []

    def generates() -> bool:
        rows = [list(map(int, E[c])) for c in images]
        rows += [[h if i == j else 0 for j in range(k)] for i, h in enumerate(hB)]
        return prod(r[i] for i, r in enumerate(la.hnf(rows))) == 1

    def search(i: int, cs: list) -> bool:
        if i == k:
            return generates()
        for c in cs[i]:
            nxt = list(cs)
            ok = True
            for m in range(i + 1, k):
                sub = nxt[m]
                sub = sub[(R[sub] @ E[c]) % e == BA[m][i] % e]
                if sub.size == 0:
                    ok = False
                    break
                nxt[m] = sub
            if not ok:
                continue
            images.append(int(c))
            if search(i + 1, nxt):
                return True
            images.pop()
        return False

    return search(0, cands)


# --- sublattices -------------------------------------------------------------

@dataclass
class Sublattice:
    """Rows of ``basis`` are coordinates in the ambient basis."""

    ambient: Lattice
    basis: list[list[int]]

    def __post_init__(self):
        self.basis = [list(map(int, r)) for r in self.basis]
        if self.basis and la.rank(self.basis) != len(self.basis):
            raise ValueError("sublattice basis rows must be linearly independent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def gram(self) -> list[list[int]]:
        return la.congruent(self.basis, self.ambient.gram)

    def lattice(self, name: str = "") -> Lattice:
        return Lattice(self.gram, name=name)

    @property
    def is_primitive(self) -> bool:
        if not self.basis:
            return True
        return all(x == 1 for x in la.elementary_divisors(self.basis))


def saturate(S: Sublattice) -> Sublattice:
    return Sublattice(S.ambient, la.saturate_rows(S.basis, S.ambient.rank))


def orthogonal_complement(S: Sublattice) -> Sublattice:
    n = S.ambient.rank
    if not S.basis:
        return Sublattice(S.ambient, la.identity(n))
    return Sublattice(S.ambient, la.integer_kernel(la.matmul(S.basis, S.ambient.gram), n))


# --- overlattices ------------------------------------------------------------

def glue_overlattice(L: Lattice, glue: Sequence[Sequence]) -> tuple[Lattice, list[list[Fraction]]]:
    """Even overlattice generated by L and rational glue rows in L∨.

    Returns the overlattice and its basis in rational L-coordinates.
    """
    glue = [[Fraction(x) for x in g] for g in glue]
    for g in glue:
        if len(g) != L.rank:
            raise GlueError("glue row has the wrong length")
        if any(Fraction(c).denominator != 1 for c in la.vecmat(g, L.gram)):
            raise GlueError("glue row does not pair integrally with L")
    for i, g in enumerate(glue):
        if L.norm(g).denominator != 1 or L.norm(g) % 2:
            raise GlueError("glue row has odd or non-integral norm")
        for h in glue[:i]:
            if L.inner(g, h).denominator != 1:
                raise GlueError("glue rows pair non-integrally")
    gens = la.identity(L.rank) + glue
    basis = la.lattice_basis(gens)
    gram = la.as_int_matrix(la.congruent(basis, L.gram))
    M = Lattice(gram)
    index2 = Fraction(L.det, M.det) if M.det else None
    if index2 is None or index2.denominator != 1:
        raise GlueError("glue does not produce a finite-index overlattice")
    return M, basis


def overlattice_index(L: Lattice, M: Lattice) -> int:
    """[M : L] from the determinant ratio."""
    r = Fraction(L.det, M.det)
    root = _isqrt_exact(r)
    if root is None:
        raise ValueError("determinant ratio is not a square")
    return root


def _isqrt_exact(r: Fraction) -> Optional[int]:
    from math import isqrt
    if r.denominator != 1 or r < 0:
        return None
    s = isqrt(int(r))
    return s if s * s == r else None


# --- serialization -----------------------------------------------------------

def gram_to_json(gram: Sequence[Sequence[int]]) -> list[list[str]]:
    return [[str(int(x)) for x in row] for row in gram]


def gram_from_json(data) -> list[list[int]]:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError("Gram matrix must be an array of arrays")
    try:
        g = [[int(x) if isinstance(x, str) else _strict_int(x) for x in row] for row in data]
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad Gram entry: {exc}") from None
    if not la.is_symmetric(g):
        raise SchemaError("Gram matrix must be square and symmetric")
    return g


def _strict_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"{x!r} is not an integer")
    return x


def load_lattice(path: str) -> Lattice:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: {exc}") from None
    if isinstance(doc, dict):
        if "gram" not in doc:
            raise SchemaError(f"{path}: missing 'gram'")
        return Lattice(gram_from_json(doc["gram"]), labels=doc.get("labels"),
                       name=doc.get("name", ""))
    return Lattice(gram_from_json(doc))
