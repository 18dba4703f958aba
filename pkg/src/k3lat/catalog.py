"""Named definite lattices: root lattices, the Coxeter–Todd lattice K12 and
catalog files shipped under data/catalog.

Catalog entries record a ``scale_unit``: the factor by which the stored Gram
must be divided to get the normalization in which "X(n)" means "Gram times n".
"""

from __future__ import annotations

import itertools
import json
import os
import re
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import linalg as la
from .errors import MissingCatalog, SchemaError
from .lattice import Lattice, gram_from_json, root_lattice

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

# F4 = {0, 1, w, w̄} encoded as 0..3 with addition = xor; w̄ = 1 + w.
_F4_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]


def hexacode() -> list[tuple[int, ...]]:
    """The 64 words (a, b, c, φ(1), φ(w), φ(w̄)) with φ(x) = a·x² + b·x + c."""
    words = []
    for a, b, c in itertools.product(range(4), repeat=3):
        row = [a, b, c]
        for x in (1, 2, 3):
            x2 = _F4_MUL[x][x]
            row.append(_F4_MUL[a][x2] ^ _F4_MUL[b][x] ^ c)
        words.append(tuple(row))
    return words


@lru_cache(maxsize=None)
def coxeter_todd() -> Lattice:
    """K12 (minimum 4, det 729): A2⁶ glued by the hexacode via A2/2A2 ≅ F4, scaled by 1/2."""
    a2 = [[2, -1], [-1, 2]]
    cls = {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (1, 1)}
    gens = []
    for k in range(6):
        for e in ((2, 0), (0, 2)):
            v = [0] * 12
            v[2 * k], v[2 * k + 1] = e
            gens.append(v)
    for w in hexacode():
        gens.append([c for x in w for c in cls[x]])
    basis = la.hnf(gens)
    big = la.block_diag(*([a2] * 6))
    gram = la.congruent(basis, big)
    half = [[Fraction(x, 2) for x in r] for r in gram]
    return Lattice(la.as_int_matrix(half), name="K12")


def _builtin(name: str) -> Optional[tuple[Lattice, int, str]]:
    m = re.fullmatch(r"([ADE])(\d+)", name)
    if m:
        return root_lattice(m.group(1), int(m.group(2)), sign=1), 1, "root system"
    if name == "K12":
        return coxeter_todd(), 2, "constructed from the hexacode"
    return None


def load_catalog(name: str, data_dir: Optional[str] = None) -> tuple[Lattice, int, str]:
    """(lattice, scale_unit, source) for a catalog name such as K12 or L15."""
    b = _builtin(name)
    if b is not None:
        return b
    path = os.path.join(data_dir or DATA_DIR, "catalog", f"{name}.json")
    if not os.path.exists(path):
        raise MissingCatalog(f"catalog lattice {name} is not available ({path})")
    with open(path) as fh:
        doc = json.load(fh)
    for key in ("gram", "source", "name"):
        if key not in doc:
            raise SchemaError(f"{path}: missing {key!r}")
    unit = doc.get("scale_unit", 1)
    return Lattice(gram_from_json(doc["gram"]), name=doc["name"]), unit, doc["source"]


def named_lattice(spec: str, data_dir: Optional[str] = None) -> Lattice:
    """Parse "E8(-2)", "K12(-2)", "A2": catalog name with an optional scale factor."""
    m = re.fullmatch(r"\s*([A-Za-z]+[0-9.]*)\s*(?:\(\s*(-?\d+)\s*\))?\s*", spec)
    if not m:
        raise SchemaError(f"cannot parse lattice name {spec!r}")
    name, scale = m.group(1), int(m.group(2) or 1)
    L, unit, _ = load_catalog(name, data_dir)
    f = Fraction(scale, unit)
    gram = [[x * f for x in r] for r in L.gram]
    if not la.is_integral(gram):
        raise SchemaError(f"{spec} is not integral")
    return Lattice(la.as_int_matrix(gram), name=spec.strip())
