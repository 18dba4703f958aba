"""Cross-checks of computed lattices against the bundled reference data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .bundle import Bundle, Realization, printed_lattice
from .fibration import NSModel
from .invariants import (
    action_on_discriminant,
    coinvariant_lattice,
    glued_invariant,
    invariant_sublattice,
    restrict,
)
from .isometry import is_isometric
from .lattice import Lattice, direct_sum, forms_isomorphic, format_group, overlattice_index
from .shortvec import minimal_index, minimal_vectors, norm_counts


@dataclass
class Check:
    group: str
    item: str
    expected: object
    actual: object
    ok: bool

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.group} {self.item}: expected {self.expected}, got {self.actual}"

    def to_json(self) -> dict:
        return {"group": self.group, "item": self.item, "expected": _js(self.expected),
                "actual": _js(self.actual), "ok": self.ok}


def _js(x):
    if isinstance(x, (list, tuple)):
        return [_js(y) for y in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def same_form(A: Lattice, B: Lattice) -> tuple:
    """(rank, signature, parity, det) plus isomorphism of discriminant forms."""
    basic = (A.rank, A.signature, A.is_even, A.det) == (B.rank, B.signature, B.is_even, B.det)
    return basic and forms_isomorphic(A.discriminant_group, B.discriminant_group)


def _describe(L: Lattice) -> tuple:
    return (L.rank, L.signature, "even" if L.is_even else "odd", L.det,
            format_group(L.discriminant_group.invariant_factors))


def h2_glue(model: NSModel) -> list[list[Fraction]]:
    """Glue rows of the fibration's data in NS ⊕ T coordinates."""
    out = []
    for g in model.config.glue:
        v = [Fraction(0)] * model.tr.rank
        for lab, c in g["ns"].items():
            v = [x + Fraction(c) * y for x, y in zip(v, model.vector(lab))]
        out.append(model.to_ns(v) + [Fraction(c) for c in g["t"]])
    return out


def table_checks(b: Bundle, key: str) -> Iterator[Check]:
    g = b.group(key)
    om = b.omega(key)
    t = g.table
    yield Check(key, "rank", t["rank"], om.rank, om.rank == t["rank"])
    yield Check(key, "|det|", abs(t["det"]), abs(om.det), abs(om.det) == abs(t["det"]))
    disc = om.discriminant_group.invariant_factors
    yield Check(key, "disc", format_group(t["disc"]), format_group(disc), disc == t["disc"])
    perp = printed_lattice(t["omega_perp"])
    ok = (perp.rank == 22 - om.rank and perp.signature == (3, 19 - om.rank)
          and forms_isomorphic(perp.discriminant_group, om.discriminant_group.opposite()))
    yield Check(key, f"omega_perp {t.get('omega_perp_name', '')}".strip(),
                f"rank {22 - om.rank}, signature (3, {19 - om.rank}), disc form opposite to omega",
                _describe(perp), ok)


def action_checks(b: Bundle, key: str) -> Iterator[Check]:
    g = b.group(key)
    for r in [g.realization] + g.extra:
        a = b.action(r)
        om = coinvariant_lattice(a)
        L = om.lattice()
        for gen in a.generators:
            act = action_on_discriminant(L, restrict(gen, om))
            yield Check(key, f"{r.name} {gen.name} on disc(omega)", "identity",
                        "identity" if act.is_identity else act.images, act.is_identity)


def minimum_checks(b: Bundle, key: str) -> Iterator[Check]:
    om = b.omega(key)
    n2 = norm_counts(om, 2).get(2, 0)
    yield Check(key, "norm -2 vectors", 0, n2, n2 == 0)
    mv = minimal_vectors(om)
    m = abs(mv.norms[0])
    yield Check(key, "minimum", -4, -m, m == 4)
    idx = minimal_index(om, mv.vectors)
    yield Check(key, "index of span of minimal vectors", 1, idx, idx == 1)


def invariant_checks(b: Bundle, key: str) -> Iterator[Check]:
    g = b.group(key)
    for r in [g.realization] + g.extra:
        if "ns_invariant" not in r.printed:
            continue
        inv = invariant_sublattice(b.action(r)).lattice()
        ref = printed_lattice(r.printed["ns_invariant"])
        ok = same_form(inv, ref)
        if ok and inv.rank and (ref.is_positive_definite or ref.is_negative_definite):
            ok = is_isometric(inv, ref).isometric
        yield Check(key, f"NS^G of {r.name}", _describe(ref), _describe(inv), ok)


def h2_checks(b: Bundle, key: str) -> Iterator[Check]:
    g = b.group(key)
    for r in [g.realization] + g.extra:
        if not ({"h2_invariant", "h2_index"} & set(r.printed)):
            continue
        m = b.model(r.fibration)
        if not (m.config.transcendental and m.config.glue):
            continue
        gi = glued_invariant(b.action(r), Lattice(m.config.transcendental), h2_glue(m))
        yield Check(key, f"H2 of {r.name} unimodular even", "det ±1, even",
                    f"det {gi.h2.det}, {'even' if gi.h2.is_even else 'odd'}",
                    abs(gi.h2.det) == 1 and gi.h2.is_even)
        if "h2_invariant" in r.printed:
            ref = printed_lattice(r.printed["h2_invariant"])
            inv = gi.invariant.lattice()
            yield Check(key, f"H2^G of {r.name}", _describe(ref), _describe(inv), same_form(inv, ref))
        if "h2_index" in r.printed:
            want = r.printed["h2_index"]
            yield Check(key, f"[H2^G : NS^G + T] of {r.name}", want, gi.index, gi.index == want)
            if {"h2_invariant", "ns_invariant"} <= set(r.printed):
                # the same index, read off the printed matrices alone
                ns = printed_lattice(r.printed["ns_invariant"])
                h2 = printed_lattice(r.printed["h2_invariant"])
                ratio = Fraction(ns.det * Lattice(m.config.transcendental).det, h2.det)
                got = overlattice_index(direct_sum(ns, Lattice(m.config.transcendental)), h2)
                yield Check(key, f"index implied by printed Grams of {r.name}", want,
                            f"{got} (det ratio {ratio})", got == want)


SECTIONS = {
    "table": table_checks,
    "invariant": invariant_checks,
    "h2": h2_checks,
    "action": action_checks,
    "minimum": minimum_checks,
}


def verify_all(b: Optional[Bundle] = None, sections=None) -> list[Check]:
    b = b or Bundle()
    out = []
    for name in sections or SECTIONS:
        for key in b.groups:
            out.extend(SECTIONS[name](b, key))
    return out
