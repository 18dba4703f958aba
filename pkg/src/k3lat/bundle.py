"""Loader for the bundled data: fibrations, group realizations and printed references."""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .errors import SchemaError
from .fibration import (
    LatticeIsometry,
    NSModel,
    base_involution_isometry,
    load_config,
    translation_isometry,
)
from .invariants import GroupAction, coinvariant_lattice, invariant_sublattice
from .lattice import Lattice, Sublattice, gram_from_json

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


_SUPERSCRIPTS = str.maketrans({"²": "^2", "³": "^3", "⁴": "^4"})


def normalize_group(name: str) -> str:
    """Map spellings like "Z/2Z x Z/4Z", "(Z/2)^3", "z4xz4", "ℤ/7ℤ" to a registry key."""
    s = name.translate(_SUPERSCRIPTS).replace("ℤ", "Z").replace(" ", "").replace("×", "x").upper().replace("X", "x")
    s = s.replace("Z/", "Z").replace("ZZ", "Z")
    s = re.sub(r"Z(\d+)Z", r"Z\1", s)
    m = re.fullmatch(r"\(?Z(\d+)\)?\^(\d+)", s)
    if m:
        return f"Z{m.group(1)}^{m.group(2)}" if m.group(2) != "1" else f"Z{m.group(1)}"
    parts = s.split("x")
    if all(re.fullmatch(r"Z\d+", p) for p in parts) and parts:
        if len(set(parts)) == 1 and len(parts) > 1:
            return f"{parts[0]}^{len(parts)}"
        return "x".join(sorted(parts, key=lambda p: int(p[1:])))
    return s


@dataclass
class Realization:
    group: str
    name: str
    fibration: str
    generators: list
    source: str
    printed: dict = field(default_factory=dict)


@dataclass
class GroupEntry:
    key: str
    label: str
    realization: Realization
    extra: list[Realization]
    table: dict


class Bundle:
    def __init__(self, data_dir: Optional[str] = None):
        self.data_dir = data_dir or DATA_DIR
        self._models: dict[str, NSModel] = {}
        self._actions: dict[tuple[str, str], GroupAction] = {}

    # --- files ---
    def fibration_path(self, name: str) -> str:
        return os.path.join(self.data_dir, "fibrations", f"{name}.json")

    @cached_property
    def fibration_names(self) -> list[str]:
        d = os.path.join(self.data_dir, "fibrations")
        return sorted(f[:-5] for f in os.listdir(d) if f.endswith(".json"))

    def model(self, name: str) -> NSModel:
        if name not in self._models:
            self._models[name] = NSModel(load_config(self.fibration_path(name)))
        return self._models[name]

    @cached_property
    def groups(self) -> dict[str, GroupEntry]:
        path = os.path.join(self.data_dir, "groups.json")
        with open(path) as fh:
            doc = json.load(fh)
        out = {}
        for g in doc["groups"]:
            def real(r, default):
                printed = {k: v for k, v in r.items()
                           if k in ("ns_invariant", "h2_invariant", "h2_index")}
                return Realization(g["key"], r.get("name", default), r["fibration"],
                                   r["generators"], r["source"], printed)
            out[g["key"]] = GroupEntry(
                g["key"], g["label"], real(g["realization"], g["label"]),
                [real(r, r.get("name", "")) for r in g.get("extra", [])], g["table"])
        return out

    def group(self, name: str) -> GroupEntry:
        key = normalize_group(name)
        if key not in self.groups:
            raise SchemaError(f"unknown group {name!r}; known: {', '.join(self.groups)}")
        return self.groups[key]

    # --- actions ---
    def isometry(self, model: NSModel, spec: dict) -> LatticeIsometry:
        if "translation" in spec:
            return translation_isometry(model, spec["translation"])
        if "involution" in spec:
            for table in model.config.involutions:
                if table.get("name") == spec["involution"]:
                    return base_involution_isometry(model, table)
            raise SchemaError(f"no involution {spec['involution']!r} in {model.config.name}")
        raise SchemaError(f"bad generator spec {spec!r}")

    def action(self, r: Realization) -> GroupAction:
        k = (r.group, r.name)
        if k not in self._actions:
            m = self.model(r.fibration)
            gens = [self.isometry(m, s) for s in r.generators]
            self._actions[k] = GroupAction(m.ns, gens, r.group)
        return self._actions[k]

    def omega(self, name: str) -> Lattice:
        g = self.group(name)
        return coinvariant_lattice(self.action(g.realization)).lattice(name=f"Omega_{g.key}")

    def invariant(self, name: str) -> Sublattice:
        return invariant_sublattice(self.action(self.group(name).realization))


def printed_lattice(gram) -> Lattice:
    return Lattice(gram_from_json(gram))
