"""Invariant and coinvariant lattices of finite abelian isometry groups, and the
induced action on discriminant groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg as la
from .errors import InconsistentData
from .fibration import LatticeIsometry
from .lattice import (
    Lattice,
    Sublattice,
    direct_sum,
    glue_overlattice,
    orthogonal_complement,
    overlattice_index,
)


@dataclass
class GroupAction:
    lattice: Lattice
    generators: list[LatticeIsometry]
    group_name: str = ""

    def __post_init__(self):
        for g in self.generators:
            if g.lattice.gram != self.lattice.gram:
                raise InconsistentData(f"{g.name} acts on a different lattice")
        for i, g in enumerate(self.generators):
            for h in self.generators[:i]:
                if la.matmul(g.matrix, h.matrix) != la.matmul(h.matrix, g.matrix):
                    raise InconsistentData(f"{g.name} and {h.name} do not commute")

    def elements(self, limit: int = 1024) -> list[list[list[int]]]:
        """All group elements as matrices (closure under the generators)."""
        n = self.lattice.rank
        seen = {_key(la.identity(n)): la.identity(n)}
        frontier = [la.identity(n)]
        while frontier:
            nxt = []
            for m in frontier:
                for g in self.generators:
                    p = la.matmul(g.matrix, m)
                    k = _key(p)
                    if k not in seen:
                        seen[k] = p
                        nxt.append(p)
                        if len(seen) > limit:
                            raise InconsistentData("group is larger than expected")
            frontier = nxt
        return [seen[k] for k in sorted(seen)]

    @property
    def order(self) -> int:
        return len(self.elements())


def _key(m) -> tuple:
    return tuple(x for r in m for x in r)


def invariant_sublattice(a: GroupAction) -> Sublattice:
    n = a.lattice.rank
    rows = []
    for g in a.generators:
        rows += [[g.matrix[i][j] - (i == j) for j in range(n)] for i in range(n)]
    if not rows:
        return Sublattice(a.lattice, la.identity(n))
    return Sublattice(a.lattice, la.integer_kernel(rows, n))


def coinvariant_lattice(a: GroupAction) -> Sublattice:
    return orthogonal_complement(invariant_sublattice(a))


def restrict(g: LatticeIsometry, sub: Sublattice, name: str = "") -> LatticeIsometry:
    """Restriction of g to an invariant sublattice, in the sublattice basis."""
    rows = []
    for b in sub.basis:
        img = la.matvec(g.matrix, b)
        c = la.solve_integer(sub.basis, img)
        if c is None:
            raise InconsistentData(f"{g.name} does not preserve the sublattice")
        rows.append(c)
    return LatticeIsometry(sub.lattice(), la.transpose(rows), name=name or g.name)


@dataclass
class DiscriminantAction:
    images: list[tuple[int, ...]]
    is_identity: bool


def action_on_discriminant(L: Lattice, M: LatticeIsometry) -> DiscriminantAction:
    dg = L.discriminant_group
    images = [dg.coordinates(la.matvec(M.matrix, g)) for g in dg.generator_lifts]
    return DiscriminantAction(images, dg.is_identity_action(images))


@dataclass
class GluedInvariant:
    h2: Lattice
    h2_basis: list[list[Fraction]]        # rows in NS ⊕ T coordinates
    invariant: Sublattice                  # H²^G inside h2
    coinvariant_in_h2: list[list[int]]     # Ω_G in h2 coordinates
    index: int                             # [H²^G : NS^G ⊕ T]
    ns_invariant: Lattice = field(repr=False, default=None)


def glued_invariant(a: GroupAction, t: Lattice, glue: Sequence[Sequence]) -> GluedInvariant:
    """H²^G as the orthogonal complement of Ω_G in the overlattice of NS ⊕ T.

    ``glue`` rows are rational coordinates in NS ⊕ T.  G acts trivially on T.
    """
    ns = a.lattice
    h2, basis = glue_overlattice(direct_sum(ns, t), glue)
    omega = coinvariant_lattice(a)
    pad = [0] * t.rank
    rows = []
    for b in omega.basis:
        c = la.solve_integer(basis, list(b) + pad)
        if c is None:
            raise InconsistentData("coinvariant lattice is not contained in the overlattice")
        rows.append(c)
    inv = orthogonal_complement(Sublattice(h2, rows))
    ns_inv = invariant_sublattice(a).lattice()
    idx = overlattice_index(direct_sum(ns_inv, t), inv.lattice())
    return GluedInvariant(h2, basis, inv, rows, idx, ns_inv)


def fixed_contains(a: GroupAction, v: Sequence[int]) -> bool:
    return all(la.matvec(g.matrix, v) == list(v) for g in a.generators)


def orbit_sum(a: GroupAction, v: Sequence[int]) -> list[int]:
    total = [0] * len(v)
    for m in a.elements():
        total = [x + y for x, y in zip(total, la.matvec(m, v))]
    return total
