import itertools
import json
from fractions import Fraction

import pytest

from k3lat.bundle import Bundle
from k3lat.errors import InconsistentData, SchemaError, UndefinedContribution
from k3lat.fibration import (
    FiberType,
    NSModel,
    height_pairing,
    load_config,
    parse_config,
    picard_rank,
    torsion_section_class,
    translation_isometry,
    trivial_decomposition,
    trivial_lattice,
)
from k3lat.lattice import diagonal, forms_isomorphic
from conftest import fibration_path
from oracles import contr_oracle, contr_pair_oracle

TYPES = ["I2", "I3", "I4", "I5", "I6", "I7", "I8", "I9", "I0*", "I1*", "I2*", "I3*", "IV", "IV*", "III*"]
NAMES = ["z2", "z3", "z4", "z5", "z6", "z7", "z8", "z2xz2", "z2xz4", "z2xz6", "z3xz3", "z4xz4"]


def simple_component_names(ft):
    return ["C%d" % i for i in range(1, ft.simple_components)]


@pytest.mark.parametrize("text", TYPES)
def test_contr_matches_inverse_cartan(text):
    ft = FiberType.parse(text)
    names = ft.component_names
    g = ft.root_gram()
    for i, c in enumerate(simple_component_names(ft), start=1):
        assert ft.contr(i) == contr_oracle(g, names.index(c))


@pytest.mark.parametrize("text", [t for t in TYPES if t != "III*"])
def test_contr_pair_matches_inverse_cartan(text):
    ft = FiberType.parse(text)
    names = ft.component_names
    g = ft.root_gram()
    simple = simple_component_names(ft)
    for (i, a), (j, b) in itertools.combinations(enumerate(simple, start=1), 2):
        assert ft.contr_pair(i, j) == contr_pair_oracle(g, names.index(a), names.index(b))


def test_contr_pair_iii_star_same_component_undefined():
    with pytest.raises(UndefinedContribution):
        FiberType.parse("III*").contr_pair(1, 1)


@pytest.mark.parametrize("text,euler,comps,root", [
    ("I1", 1, 1, "A0"), ("I4", 4, 4, "A3"), ("I2*", 8, 7, "D6"), ("IV", 4, 3, "A2"),
    ("IV*", 8, 7, "E6"), ("III*", 9, 8, "E7"),
])
def test_fiber_type_numbers(text, euler, comps, root):
    ft = FiberType.parse(text)
    assert (ft.euler, ft.components, ft.root_name) == (euler, comps, root)
    assert abs(la_det(ft.root_gram())) == max(ft.simple_components, 1) if ft.components > 1 else True


def la_det(g):
    from k3lat import linalg as la
    return la.determinant(g) if g else 1


@pytest.mark.parametrize("bad", ["II", "I0", "Ix", "V*", ""])
def test_fiber_type_rejects(bad):
    with pytest.raises(SchemaError):
        FiberType.parse(bad)


@pytest.mark.parametrize("name", NAMES)
def test_euler_numbers_sum_to_24(name):
    assert load_config(fibration_path(name)).euler_sum == 24


@pytest.mark.parametrize("name", NAMES)
def test_every_torsion_section_has_height_zero_and_a_valid_class(name):
    cfg = load_config(fibration_path(name))
    m = NSModel(cfg)
    orders = [s.order for s in cfg.sections]
    for vec in itertools.product(*(range(o) for o in orders)):
        if m.mw.is_zero(vec):
            continue
        sec = m.mw.section(vec)
        assert height_pairing(sec, sec, cfg) == 0
        v = torsion_section_class(sec, m.tr, cfg)
        assert m.tr.norm(v) == -2
        n = m.mw.order(vec)
        assert all((n * c).denominator == 1 for c in v)


@pytest.mark.parametrize("name", NAMES)
def test_ns_index_is_torsion_order(name):
    cfg = load_config(fibration_path(name))
    m = NSModel(cfg)
    size = 1
    for t in cfg.torsion:
        size *= t
    assert m.index == size
    r = picard_rank(cfg)
    assert m.ns.rank == r and m.ns.signature == (1, r - 1) and m.ns.is_even


def test_six_i4():
    m = NSModel(load_config(fibration_path("z4xz4")))
    assert m.index == 16 and m.ns.det == -16
    assert forms_isomorphic(m.ns.discriminant_group, diagonal(-4, -4).discriminant_group)
    # t1 = 2F + s − ¼(Σ_{i≤4}(3C1+2C2+C3)^(i) + 2C1^5 + 4C2^5 + 2C3^5)
    want = {"F": 2, "s": 1}
    for i in range(1, 5):
        want.update({f"C1^{i}": Fraction(-3, 4), f"C2^{i}": Fraction(-2, 4), f"C3^{i}": Fraction(-1, 4)})
    want.update({"C1^5": Fraction(-2, 4), "C2^5": Fraction(-4, 4), "C3^5": Fraction(-2, 4)})
    got = dict(zip(m.tr.labels, m.vector("t1")))
    assert got == {lab: Fraction(want.get(lab, 0)) for lab in m.tr.labels}


def test_trivial_decompositions():
    assert trivial_decomposition(load_config(fibration_path("z2"))) == "U+A1(-1)^8"
    empty = parse_config({"fibers": [], "sections": []})
    assert trivial_decomposition(empty) == "U"
    assert trivial_lattice(empty).gram == [[0, 1], [1, -2]]


def test_schema_errors():
    with pytest.raises(SchemaError):
        parse_config({"fibers": 3})
    with pytest.raises(SchemaError):
        parse_config({"fibers": [{"label": 1, "type": "I2"}, {"label": 1, "type": "I2"}]})
    with pytest.raises(SchemaError):
        parse_config({"fibers": [{"label": 1, "type": "I2"}],
                      "sections": [{"name": "t", "order": 2, "meets": {"1": 2}}]})
    with pytest.raises(SchemaError):
        parse_config({"fibers": [{"label": 1, "type": "I2"}],
                      "sections": [{"name": "t", "order": 2, "meets": {"7": 1}}]})


def test_inconsistent_section_data():
    # one I2 fiber cannot carry a 2-torsion section
    cfg = parse_config({"fibers": [{"label": i, "type": "I2"} for i in range(1, 5)]
                        + [{"label": i, "type": "I1"} for i in range(5, 21)],
                        "sections": [{"name": "t", "order": 2, "meets": {"1": 1}}]})
    with pytest.raises(InconsistentData):
        NSModel(cfg)


@pytest.mark.parametrize("name,n", [("z2", 2), ("z3", 3), ("z5", 5), ("z7", 7), ("z8", 8)])
def test_translation_is_isometry_of_right_order(name, n):
    m = Bundle().model(name)
    g = translation_isometry(m, "t1")
    assert g.order == n
    from k3lat import linalg as la
    assert la.congruent(la.transpose(g.matrix), m.ns.gram) == m.ns.gram


def test_involution_tables_are_consistent():
    b = Bundle()
    m = b.model("z4xz4")
    for spec in ({"involution": "P1a"}, {"involution": "P1b"}):
        g = b.isometry(m, spec)
        assert g.order == 2
