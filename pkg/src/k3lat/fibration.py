"""Elliptic fibrations: trivial lattice, height pairing, torsion sections,
Néron–Severi lattice and the isometries induced by sections and base maps.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Mapping, Optional, Sequence

from . import linalg as la
from .errors import InconsistentData, SchemaError, UndefinedContribution
from .lattice import Lattice

_TYPE_RE = re.compile(r"^(?:I(\d+)(\*)?|(IV|III|II)(\*)?)$")


@dataclass(frozen=True)
class FiberType:
    """Kodaira fiber type.  ``kind`` is one of I, I*, IV, IV*, III*."""

    kind: str
    n: int = 0

    @classmethod
    def parse(cls, text: str) -> "FiberType":
        m = _TYPE_RE.match(text.strip())
        if not m:
            raise SchemaError(f"unknown fiber type {text!r}")
        if m.group(1) is not None:
            n = int(m.group(1))
            if m.group(2):
                return cls("I*", n)
            if n < 1:
                raise SchemaError("I_n needs n >= 1")
            return cls("I", n)
        kind = m.group(3) + (m.group(4) or "")
        if kind not in ("IV", "IV*", "III*"):
            raise SchemaError(f"fiber type {text!r} is not supported")
        return cls(kind)

    def __str__(self) -> str:
        if self.kind == "I":
            return f"I{self.n}"
        if self.kind == "I*":
            return f"I{self.n}*"
        return self.kind

    @property
    def euler(self) -> int:
        return {"I": self.n, "I*": self.n + 6, "IV": 4, "IV*": 8, "III*": 9}[self.kind]

    @property
    def components(self) -> int:
        return {"I": self.n, "I*": self.n + 5, "IV": 3, "IV*": 7, "III*": 8}[self.kind]

    @property
    def reducible(self) -> bool:
        return self.components > 1

    @property
    def root_name(self) -> str:
        """Root system spanned by the non-identity components."""
        if self.kind == "I":
            return f"A{self.n - 1}"
        if self.kind == "I*":
            return f"D{self.n + 4}"
        return {"IV": "A2", "IV*": "E6", "III*": "E7"}[self.kind]

    @property
    def simple_components(self) -> int:
        """Number of multiplicity-one components (the component group order)."""
        return {"I": self.n, "I*": 4, "IV": 3, "IV*": 3, "III*": 2}[self.kind]

    # Non-identity components: names, multiplicities, adjacency.
    @cached_property
    def _shape(self) -> tuple[list[str], list[int], list[tuple[str, str]]]:
        k = self.kind
        if k == "I":
            names = [f"C{i}" for i in range(1, self.n)]
            edges = [(f"C{i}", f"C{i + 1}") for i in range(1, self.n - 1)]
            return names, [1] * len(names), edges
        if k == "IV":
            return ["C1", "C2"], [1, 1], [("C1", "C2")]
        if k == "I*":
            chain = [f"T{i}" for i in range(self.n + 1)]
            names = ["C1", "C2", "C3"] + chain
            mult = [1, 1, 1] + [2] * len(chain)
            edges = [("C1", chain[0]), ("C2", chain[-1]), ("C3", chain[-1])]
            edges += list(zip(chain, chain[1:]))
            return names, mult, edges
        if k == "IV*":
            names = ["C1", "C2", "M0", "M1", "M2", "Z"]
            mult = [1, 1, 2, 2, 2, 3]
            edges = [("C1", "M1"), ("C2", "M2"), ("M0", "Z"), ("M1", "Z"), ("M2", "Z")]
            return names, mult, edges
        names = ["C1", "A1", "A2", "Z", "B2", "B1", "D"]
        mult = [1, 2, 3, 4, 3, 2, 2]
        edges = [("A1", "A2"), ("A2", "Z"), ("Z", "B2"), ("B2", "B1"), ("B1", "C1"), ("Z", "D")]
        return names, mult, edges

    @property
    def component_names(self) -> list[str]:
        return self._shape[0]

    @property
    def multiplicities(self) -> list[int]:
        return self._shape[1]

    def root_gram(self) -> list[list[int]]:
        names, _, edges = self._shape
        idx = {c: i for i, c in enumerate(names)}
        g = [[-2 if i == j else 0 for j in range(len(names))] for i in range(len(names))]
        for a, b in edges:
            g[idx[a]][idx[b]] = g[idx[b]][idx[a]] = 1
        return g

    def add(self, i: int, j: int) -> int:
        """Group law on the simple components (indices 0..simple-1)."""
        k = self.kind
        if k in ("I", "IV", "IV*", "III*"):
            return (i + j) % self.simple_components
        if self.n % 2 == 0:
            return i ^ j
        # Z/4 with the near component 1 of order two
        to = {0: 0, 2: 1, 1: 2, 3: 3}
        back = {v: u for u, v in to.items()}
        return back[(to[i] + to[j]) % 4]

    def contr(self, i: int) -> Fraction:
        if i == 0:
            return Fraction(0)
        k = self.kind
        if k == "I":
            return Fraction(i * (self.n - i), self.n)
        if k == "I*":
            return Fraction(1) if i == 1 else 1 + Fraction(self.n, 4)
        if k in ("IV", "IV*"):
            return Fraction(2, 3) if k == "IV" else Fraction(4, 3)
        return Fraction(3, 2)

    def contr_pair(self, i: int, j: int) -> Fraction:
        if i == 0 or j == 0:
            return Fraction(0)
        i, j = min(i, j), max(i, j)
        k = self.kind
        if k == "I":
            return Fraction(i * (self.n - j), self.n)
        if i == j:
            if k == "III*":
                raise UndefinedContribution("contribution for two sections on a III* fiber is undefined")
            return self.contr(i)
        if k == "I*":
            return Fraction(1, 2) if i == 1 else Fraction(1, 2) + Fraction(self.n, 4)
        if k in ("IV", "IV*"):
            return Fraction(1, 3) if k == "IV" else Fraction(2, 3)
        raise UndefinedContribution(f"no pair contribution for {self}")


@dataclass(frozen=True)
class Fiber:
    label: str
    type: FiberType


@dataclass
class SectionData:
    name: str
    order: int
    meets: dict[str, int]
    meets_zero: int = 0

    def component(self, label: str) -> int:
        return self.meets.get(label, 0)


@dataclass
class FiberConfiguration:
    fibers: list[Fiber]
    sections: list[SectionData] = field(default_factory=list)
    chi: int = 2
    name: str = ""
    source: str = ""
    torsion: Optional[list[int]] = None
    basis: Optional[list[str]] = None
    derived: dict[str, dict[str, int]] = field(default_factory=dict)
    transcendental: Optional[list[list[int]]] = None
    glue: list[dict] = field(default_factory=list)
    involutions: list[dict] = field(default_factory=list)
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def euler_sum(self) -> int:
        return sum(f.type.euler for f in self.fibers)

    @property
    def reducible(self) -> list[Fiber]:
        return [f for f in self.fibers if f.type.reducible]

    def fiber(self, label: str) -> Fiber:
        for f in self.fibers:
            if f.label == label:
                return f
        raise KeyError(label)

    def section(self, name: str) -> SectionData:
        for s in self.sections:
            if s.name == name:
                return s
        raise KeyError(name)


# --- parsing -----------------------------------------------------------------

def _need(doc: Mapping, key: str, typ, where: str):
    if key not in doc:
        raise SchemaError(f"{where}: missing {key!r}")
    val = doc[key]
    if not isinstance(val, typ) or isinstance(val, bool):
        raise SchemaError(f"{where}: {key!r} has the wrong type")
    return val


def parse_config(doc: Mapping) -> FiberConfiguration:
    if not isinstance(doc, Mapping):
        raise SchemaError("configuration must be a JSON object")
    fibers_doc = _need(doc, "fibers", list, "configuration")
    fibers, seen = [], set()
    for k, f in enumerate(fibers_doc):
        if not isinstance(f, Mapping):
            raise SchemaError(f"fiber #{k} must be an object")
        label = str(_need(f, "label", (int, str), f"fiber #{k}"))
        if label in seen:
            raise SchemaError(f"duplicate fiber label {label}")
        seen.add(label)
        fibers.append(Fiber(label, FiberType.parse(_need(f, "type", str, f"fiber {label}"))))
    by_label = {f.label: f for f in fibers}
    sections = []
    for k, s in enumerate(doc.get("sections", [])):
        if not isinstance(s, Mapping):
            raise SchemaError(f"section #{k} must be an object")
        name = _need(s, "name", str, f"section #{k}")
        order = _need(s, "order", int, f"section {name}")
        if order < 1:
            raise SchemaError(f"section {name}: order must be positive")
        meets_doc = s.get("meets", {})
        if not isinstance(meets_doc, Mapping):
            raise SchemaError(f"section {name}: 'meets' must be an object")
        meets = {}
        for lab, comp in meets_doc.items():
            lab = str(lab)
            if lab not in by_label:
                raise SchemaError(f"section {name}: unknown fiber {lab}")
            if not isinstance(comp, int) or isinstance(comp, bool):
                raise SchemaError(f"section {name}: component index must be an integer")
            ft = by_label[lab].type
            if not 0 <= comp < ft.simple_components:
                raise SchemaError(f"section {name}: fiber {lab} has no simple component {comp}")
            if comp:
                meets[lab] = comp
        mz = s.get("meets_zero", 0)
        if not isinstance(mz, int) or isinstance(mz, bool) or mz < 0:
            raise SchemaError(f"section {name}: meets_zero must be a nonnegative integer")
        sections.append(SectionData(name, order, meets, mz))
    names = {s.name for s in sections}
    derived = {}
    for d in doc.get("derived_sections", []):
        name = _need(d, "name", str, "derived section")
        combo = _need(d, "sum", Mapping, f"derived section {name}")
        for g, c in combo.items():
            if g not in names or not isinstance(c, int):
                raise SchemaError(f"derived section {name}: bad term {g!r}")
        derived[name] = dict(combo)
    tx = doc.get("transcendental")
    if tx is not None:
        from .lattice import gram_from_json
        tx = gram_from_json(tx)
    chi = doc.get("chi", 2)
    if not isinstance(chi, int) or isinstance(chi, bool):
        raise SchemaError("chi must be an integer")
    return FiberConfiguration(
        fibers=fibers,
        sections=sections,
        chi=chi,
        name=doc.get("name", ""),
        source=doc.get("source", ""),
        torsion=doc.get("torsion"),
        basis=doc.get("basis"),
        derived=derived,
        transcendental=tx,
        glue=list(doc.get("glue", [])),
        involutions=list(doc.get("involutions", [])),
        raw=dict(doc),
    )


def load_config(path: str) -> FiberConfiguration:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc}") from None
    return parse_config(doc)


# --- trivial lattice and heights ----------------------------------------------

def component_label(i: int | str, fiber_label: str) -> str:
    return f"C{i}^{fiber_label}" if isinstance(i, int) else f"{i}^{fiber_label}"


def trivial_lattice(config: FiberConfiguration) -> Lattice:
    """Gram of ⟨F, s⟩ ⊕ (negative root lattices of the reducible fibers)."""
    labels = ["F", "s"]
    blocks = [[[0, 1], [1, -config.chi]]]
    for f in config.reducible:
        labels += [f"{c}^{f.label}" for c in f.type.component_names]
        blocks.append(f.type.root_gram())
    return Lattice(la.block_diag(*blocks), labels=labels, name="Tr")


def trivial_decomposition(config: FiberConfiguration) -> str:
    """E.g. "U+A1(-1)^8"; the hyperbolic part is U exactly when χ is even."""
    parts = ["U" if config.chi % 2 == 0 else f"<F,s>(chi={config.chi})"]
    names = [f.type.root_name for f in config.reducible]
    for name in sorted(set(names), key=lambda x: (x[0], int(x[1:]))):
        k = names.count(name)
        parts.append(f"{name}(-1)" + (f"^{k}" if k > 1 else ""))
    return "+".join(parts)


def picard_rank(config: FiberConfiguration, mw_rank: int = 0) -> int:
    return mw_rank + 2 + sum(f.type.components - 1 for f in config.reducible)


def height_pairing(P: SectionData, Q: SectionData, config: FiberConfiguration,
                   chi: Optional[int] = None, intersection: Optional[int] = None) -> Fraction:
    chi = config.chi if chi is None else chi
    if P is Q or P.name == Q.name:
        h = Fraction(2 * chi + 2 * P.meets_zero)
        for f in config.reducible:
            h -= f.type.contr(P.component(f.label))
        return h
    pq = 0 if intersection is None else intersection
    h = Fraction(chi + P.meets_zero + Q.meets_zero - pq)
    for f in config.reducible:
        h -= f.type.contr_pair(P.component(f.label), Q.component(f.label))
    return h


def torsion_section_class(P: SectionData, tr: Lattice, config: FiberConfiguration
                          ) -> list[Fraction]:
    """The class of P in Tr⊗Q, from its intersections with F, s and the components."""
    rhs = [Fraction(1), Fraction(P.meets_zero)]
    for f in config.reducible:
        met = P.component(f.label)
        rhs += [Fraction(int(met != 0 and c == f"C{met}")) for c in f.type.component_names]
    x = la.matvec(tr.gram_inverse, rhs) if tr.det else la.rational_solve(tr.gram, rhs)
    if x is None:
        raise InconsistentData(f"section {P.name}: intersection data has no solution")
    if tr.norm(x) != -2:
        raise InconsistentData(f"section {P.name}: class has square {tr.norm(x)}, expected -2")
    if any((c * P.order).denominator != 1 for c in x):
        raise InconsistentData(f"section {P.name}: {P.order}·class is not integral")
    return x


# --- Mordell–Weil arithmetic --------------------------------------------------

class MordellWeil:
    """Torsion sections as integer combinations of the generator sections."""

    def __init__(self, config: FiberConfiguration):
        self.config = config
        self.gens = list(config.sections)

    def vector(self, spec) -> tuple[int, ...]:
        """Accept a section name, a derived name or a {generator: coeff} mapping."""
        names = [g.name for g in self.gens]
        if isinstance(spec, (tuple, list)):
            return tuple(int(c) for c in spec)
        if isinstance(spec, str):
            if spec == "s":
                return tuple(0 for _ in names)
            if spec in names:
                return tuple(int(n == spec) for n in names)
            if spec in self.config.derived:
                spec = self.config.derived[spec]
            else:
                raise InconsistentData(f"unknown section {spec!r}")
        out = [0] * len(names)
        for g, c in spec.items():
            if g not in names:
                raise InconsistentData(f"unknown generator section {g!r}")
            out[names.index(g)] += int(c)
        return tuple(out)

    def components(self, vec: Sequence[int]) -> dict[str, int]:
        comp = {}
        for f in self.config.reducible:
            acc = 0
            for c, g in zip(vec, self.gens):
                for _ in range(c % f.type.simple_components if f.type.kind != "I*" else c % 4):
                    acc = f.type.add(acc, g.component(f.label))
            comp[f.label] = acc
        return comp

    def is_zero(self, vec: Sequence[int]) -> bool:
        return all(v == 0 for v in self.components(vec).values())

    def order(self, vec: Sequence[int]) -> int:
        k = 1
        while not self.is_zero([k * x for x in vec]):
            k += 1
            if k > 1000:
                raise InconsistentData("section has no finite order")
        return k

    def section(self, vec: Sequence[int], name: str = "") -> SectionData:
        comp = self.components(vec)
        return SectionData(name or "+".join(f"{c}{g.name}" for c, g in zip(vec, self.gens) if c),
                           self.order(vec), {k: v for k, v in comp.items() if v}, 0)


# --- Néron–Severi -------------------------------------------------------------

class NSModel:
    """NS(X) as an overlattice of the trivial lattice, with a chosen Z-basis.

    ``basis`` rows are rational coordinates in the trivial-lattice basis.
    """

    def __init__(self, config: FiberConfiguration):
        self.config = config
        self.tr = trivial_lattice(config)
        self.mw = MordellWeil(config)
        self._tr_index = {lab: i for i, lab in enumerate(self.tr.labels)}
        self._classes: dict[tuple[int, ...], list[Fraction]] = {}
        self._sec_names = {s.name for s in config.sections}
        for s in config.sections:
            for t in config.sections:
                if s is not t and height_pairing(s, t, config) != 0:
                    raise InconsistentData(f"torsion sections {s.name}, {t.name} have nonzero height pairing")
            if height_pairing(s, s, config) != 0:
                raise InconsistentData(f"section {s.name} has nonzero height")
        gens = [list(map(Fraction, r)) for r in la.identity(self.tr.rank)]
        gens += [self.class_of(s.name) for s in config.sections]
        full = la.lattice_basis(gens)
        if config.basis:
            rows = [self.vector(lab) for lab in config.basis]
            if la.lattice_basis(rows) != full or len(rows) != self.tr.rank:
                raise InconsistentData("declared Néron–Severi basis does not span NS")
            self.basis, self.labels = rows, list(config.basis)
        else:
            self.basis, self.labels = self._greedy_basis(full)
        gram = la.congruent(self.basis, self.tr.gram)
        if not la.is_integral(gram):
            raise InconsistentData("section classes do not pair integrally")
        self.ns = Lattice(la.as_int_matrix(gram), labels=self.labels, name="NS")
        self._inv = la.inverse(self.basis)

    def _greedy_basis(self, full):
        """Exchange Tr labels for section names while keeping a Z-basis."""
        chosen = list(self.tr.labels)
        rows = [self.vector(nm) for nm in chosen]
        for sec in self.config.sections:
            v = self.vector(sec.name)
            target = la.lattice_basis(rows + [v])
            if target == la.lattice_basis(rows):
                continue
            for i in range(len(rows) - 1, 1, -1):
                trial = rows[:i] + rows[i + 1:] + [v]
                if la.lattice_basis(trial) == target:
                    rows, chosen = trial, chosen[:i] + chosen[i + 1:] + [sec.name]
                    break
            else:
                break
        if la.lattice_basis(rows) == full:
            order = sorted(range(len(rows)), key=lambda k: (chosen[k] not in ("F", "s"),
                                                            not chosen[k] in self._sec_names, k))
            return [rows[k] for k in order], [chosen[k] for k in order]
        return full, [f"e{i + 1}" for i in range(len(full))]

    def vector(self, label: str) -> list[Fraction]:
        """Tr⊗Q coordinates of F, s, a component label or a section name."""
        n = self.tr.rank
        if label in self._tr_index:
            v = [Fraction(0)] * n
            v[self._tr_index[label]] = Fraction(1)
            return v
        m = re.match(r"^C0\^(.+)$", label)
        if m:
            f = self.config.fiber(m.group(1))
            v = [Fraction(0)] * n
            v[0] = Fraction(1)
            for c, mult in zip(f.type.component_names, f.type.multiplicities):
                v[self._tr_index[f"{c}^{f.label}"]] -= mult
            return v
        return self.class_of(label)

    def class_of(self, spec) -> list[Fraction]:
        vec = self.mw.vector(spec)
        if vec not in self._classes:
            if self.mw.is_zero(vec):
                cls = self.vector("s")
            else:
                sec = self.mw.section(vec, spec if isinstance(spec, str) else "")
                cls = torsion_section_class(sec, self.tr, self.config)
            self._classes[vec] = cls
        return self._classes[vec]

    def to_ns(self, v: Sequence) -> list[Fraction]:
        """Tr⊗Q coordinates -> NS coordinates (rational)."""
        return la.vecmat(v, self._inv)

    def ns_coords(self, v: Sequence) -> list[int]:
        x = self.to_ns(v)
        if any(c.denominator != 1 for c in x):
            raise InconsistentData("class is not in NS")
        return [int(c) for c in x]

    def ns_vector(self, label: str) -> list[int]:
        return self.ns_coords(self.vector(label))

    @property
    def index(self) -> int:
        from .lattice import overlattice_index
        return overlattice_index(self.tr, self.ns)

    def _isometry_from_tr_images(self, images: list[list[Fraction]], name: str,
                                 order: Optional[int]) -> "LatticeIsometry":
        r = la.matmul(la.matmul(self.basis, images), self._inv)
        if not la.is_integral(r):
            raise InconsistentData(f"{name}: the map does not preserve NS")
        m = la.transpose(la.as_int_matrix(r))
        iso = LatticeIsometry(self.ns, m, name=name)
        if order is not None and iso.order != order:
            raise InconsistentData(f"{name}: order {iso.order}, expected {order}")
        return iso

    def tr_image(self, images: list[list[Fraction]], v: Sequence) -> list[Fraction]:
        return la.vecmat(v, images)


def build_ns(config: FiberConfiguration) -> NSModel:
    return NSModel(config)


# --- isometries ----------------------------------------------------------------

class LatticeIsometry:
    """Integer matrix M acting on coordinate columns, with Mᵀ·G·M = G."""

    def __init__(self, lattice: Lattice, matrix: Sequence[Sequence[int]], name: str = "",
                 check: bool = True):
        self.lattice = lattice
        self.matrix = [list(map(int, r)) for r in matrix]
        self.name = name
        if check and la.congruent(la.transpose(self.matrix), lattice.gram) != lattice.gram:
            raise InconsistentData(f"{name or 'map'} does not preserve the form")

    def __repr__(self):
        return f"<LatticeIsometry {self.name} order={self.order}>"

    def __mul__(self, other: "LatticeIsometry") -> "LatticeIsometry":
        return LatticeIsometry(self.lattice, la.matmul(self.matrix, other.matrix),
                               name=f"{self.name}*{other.name}", check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeIsometry) and self.matrix == other.matrix

    def apply(self, x: Sequence) -> list:
        return la.matvec(self.matrix, x)

    @cached_property
    def order(self) -> int:
        n = len(self.matrix)
        ident = la.identity(n)
        p = self.matrix
        k = 1
        while p != ident:
            p = la.matmul(p, self.matrix)
            k += 1
            if k > 120:
                raise InconsistentData(f"{self.name}: isometry has no small finite order")
        return k


def _cyclic_component_images(model: NSModel, shift: Mapping[str, int]) -> dict[str, str]:
    out = {}
    for f in model.config.reducible:
        a = shift.get(f.label, 0)
        if a and f.type.kind != "I":
            raise InconsistentData(f"translation on fiber {f.label} of type {f.type} is not supported")
        for i in range(1, f.type.components if f.type.kind == "I" else 0):
            out[f"C{i}^{f.label}"] = f"C{(i + a) % f.type.n}^{f.label}"
        if f.type.kind != "I":
            for c in f.type.component_names:
                out[f"{c}^{f.label}"] = f"{c}^{f.label}"
    return out


def translation_isometry(model: NSModel, t, name: str = "") -> LatticeIsometry:
    """The isometry σ_t of NS induced by translation by the torsion section t."""
    vec = model.mw.vector(t)
    sec = model.mw.section(vec)
    name = name or f"sigma[{t if isinstance(t, str) else sec.name}]"
    comp_images = _cyclic_component_images(model, sec.meets)
    images = []
    for lab in model.tr.labels:
        if lab == "F":
            images.append(model.vector("F"))
        elif lab == "s":
            images.append(model.class_of(vec) if any(vec) else model.vector("s"))
        else:
            images.append(model.vector(comp_images[lab]))
    iso = model._isometry_from_tr_images(images, name, model.mw.order(vec))
    # sections must follow the group law: r -> r + t
    for g in model.config.sections:
        r = model.mw.vector(g.name)
        moved = tuple(a + b for a, b in zip(r, vec))
        if model.tr_image(images, model.class_of(g.name)) != model.class_of(dict(
                (h.name, c) for h, c in zip(model.mw.gens, moved))):
            raise InconsistentData(f"{name}: image of {g.name} is not {g.name}+t")
    return iso


def base_involution_isometry(model: NSModel, table: Mapping, name: str = "") -> LatticeIsometry:
    """Isometry from an explicit swap/fix table of labels (F, s, components, sections)."""
    name = name or table.get("name", "involution")
    images: dict[str, str] = {}
    for pair in table.get("swap", []):
        if len(pair) != 2:
            raise SchemaError(f"{name}: swap entries are pairs")
        a, b = pair
        images[a], images[b] = b, a
    for a in table.get("fix", []):
        images[a] = a
    needed = set(model.tr.labels) | set(model.labels)
    missing = sorted(needed - set(images))
    if missing:
        raise InconsistentData(f"{name}: table does not cover {', '.join(missing)}")
    rows = [model.vector(images[lab]) for lab in model.tr.labels]
    iso = model._isometry_from_tr_images(rows, name, table.get("order", 2))
    for a, b in images.items():
        if model.tr_image(rows, model.vector(a)) != model.vector(b):
            raise InconsistentData(f"{name}: {a} -> {b} is not consistent with the rest of the table")
    return iso
