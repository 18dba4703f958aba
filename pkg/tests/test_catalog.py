import json

import pytest

from k3lat import shortvec
from k3lat.catalog import coxeter_todd, hexacode, load_catalog, named_lattice
from k3lat.errors import MissingCatalog, SchemaError


def test_hexacode_weights():
    words = hexacode()
    assert len(set(words)) == 64
    weights = {}
    for w in words:
        k = sum(1 for x in w if x)
        weights[k] = weights.get(k, 0) + 1
    assert weights == {0: 1, 4: 45, 6: 18}
    # closed under addition (xor in F4)
    s = set(words)
    assert all(tuple(a ^ b for a, b in zip(u, v)) in s for u in words[:8] for v in words)


def test_coxeter_todd_invariants():
    K = coxeter_todd()
    assert K.rank == 12 and K.det == 729 and K.is_even and K.is_positive_definite
    assert K.discriminant_group.invariant_factors == [3] * 6
    assert shortvec.minimum(K) == 4
    counts = shortvec.norm_counts(K, 6)
    assert counts == {4: 378, 6: 2016}


def test_missing_catalog_entries(tmp_path):
    for name in ("L12", "L14.3", "L15", "K16.3"):
        with pytest.raises(MissingCatalog):
            load_catalog(name, str(tmp_path))


def test_catalog_file_roundtrip(tmp_path):
    (tmp_path / "catalog").mkdir()
    (tmp_path / "catalog" / "X2.json").write_text(json.dumps(
        {"name": "X2", "source": "test", "gram": [[4, 2], [2, 4]], "scale_unit": 2}))
    L = named_lattice("X2(-1)", str(tmp_path))
    assert L.gram == [[-2, -1], [-1, -2]]
    (tmp_path / "catalog" / "Y.json").write_text(json.dumps({"gram": [[2]]}))
    with pytest.raises(SchemaError):
        load_catalog("Y", str(tmp_path))


def test_bad_names():
    with pytest.raises(SchemaError):
        named_lattice("E8(-2")
    with pytest.raises(SchemaError):
        named_lattice("K12(-1)")   # K12 needs an even scale to be integral
