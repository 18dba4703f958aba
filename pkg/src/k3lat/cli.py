"""k3lat command-line front end."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .errors import K3LatError, SchemaError
from .lattice import Lattice, format_group, load_lattice

EXIT_FAIL = 1


def _emit(args, doc: dict, text: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(text))


def _bundle(args):
    from .bundle import Bundle
    return Bundle(args.data_dir)


def _gram_lines(L: Lattice) -> list[str]:
    labels = L.labels or [str(i + 1) for i in range(L.rank)]
    w = max((len(x) for x in labels), default=0)
    return [f"  {lab:>{w}}  " + " ".join(f"{x:3d}" for x in row)
            for lab, row in zip(labels, L.gram)]


def _lattice_doc(L: Lattice) -> dict:
    return {"rank": L.rank, "det": L.det, "signature": list(L.signature),
            "disc_group": L.discriminant_group.invariant_factors,
            "labels": L.labels, "gram": L.gram}


def resolve_lattice(spec: str, args) -> Lattice:
    """A JSON file path, "omega:<group>", or a catalog name such as K12(-2)."""
    if os.path.exists(spec):
        return load_lattice(spec)
    if spec.lower().startswith("omega:"):
        return _bundle(args).omega(spec.split(":", 1)[1])
    from .catalog import named_lattice
    return named_lattice(spec, args.data_dir)


# --- commands ------------------------------------------------------------------

def cmd_trivial(args) -> int:
    from .fibration import load_config, trivial_decomposition, trivial_lattice
    cfg = load_config(args.config)
    tr = trivial_lattice(cfg)
    dec = trivial_decomposition(cfg)
    doc = {"name": cfg.name, "decomposition": dec, **_lattice_doc(tr)}
    _emit(args, doc, [
        f"{cfg.name or args.config}: Tr = {dec}",
        f"rank {tr.rank}, det {tr.det}, disc {format_group(doc['disc_group'])}",
        *_gram_lines(tr),
    ])
    return 0


def cmd_ns(args) -> int:
    from .fibration import NSModel, load_config
    m = NSModel(load_config(args.config))
    ns = m.ns
    sections = {s.name: [str(x) for x in m.vector(s.name)] for s in m.config.sections}
    doc = {"name": m.config.name, "index_over_trivial": m.index, "sections_in_trivial": sections,
           **_lattice_doc(ns)}
    text = [
        f"{m.config.name or args.config}: NS",
        f"rank {ns.rank}, det {ns.det}, disc {format_group(doc['disc_group'])}, [NS:Tr] = {m.index}",
        *_gram_lines(ns),
    ]
    for name, v in sections.items():
        text.append(f"  {name} = ({', '.join(v)}) in {', '.join(m.tr.labels)}")
    _emit(args, doc, text)
    return 0


def cmd_omega(args) -> int:
    from .shortvec import minimum
    b = _bundle(args)
    g = b.group(args.group)
    om = b.omega(g.key)
    disc = om.discriminant_group.invariant_factors
    m = -minimum(om)
    doc = {"group": g.key, "label": g.label, "rank": om.rank, "det": om.det,
           "disc_group": disc, "minimum": m, "realization": g.realization.name}
    _emit(args, doc, [
        f"Omega_{g.key}: rank {om.rank}, det {om.det}, disc {format_group(disc)}, minimum {m}",
    ])
    return 0


def cmd_verify_table(args) -> int:
    from .verify import verify_all
    checks = verify_all(_bundle(args))
    failed = sum(not c.ok for c in checks)
    doc = {"checks": [c.to_json() for c in checks], "passed": len(checks) - failed,
           "failed": failed}
    _emit(args, doc, [c.line() for c in checks] + [f"{len(checks) - failed}/{len(checks)} PASS"])
    return EXIT_FAIL if failed else 0


def cmd_classify(args) -> int:
    from .classify import classify_ns, z7_embeddability
    b = _bundle(args)
    key = b.group(args.group).key
    if args.d <= 0:
        raise SchemaError("d must be positive")
    cands = classify_ns(key, args.d, b)
    doc = {"group": key, "d": args.d, "candidates": [c.to_json() for c in cands]}
    text = [f"{key}, L^2 = {2 * args.d}: {len(cands)} candidate(s)"]
    # text mode folds candidates with identical invariants into one counted line
    rows: dict[str, int] = {}
    for c in cands:
        kind = "split" if c.index == 1 else f"index {c.index}"
        row = f"{kind}: det {c.det}, disc {format_group(c.disc_factors)}, {c.obstruction}"
        rows[row] = rows.get(row, 0) + 1
    text += [f"  {row}" + (f"  (x{n})" if n > 1 else "") for row, n in rows.items()]
    if key == "Z7":
        z = z7_embeddability(args.d, args.box)
        doc["embeddability"] = z
        if z["split"]:
            text.append("embeddable: split candidate")
        elif z["index7"]:
            text.append("embeddable: index-7 candidate")
        else:
            text.append("no embeddable candidate")
    _emit(args, doc, text)
    return 0


def cmd_isometry(args) -> int:
    from .isometry import is_isometric
    L1 = resolve_lattice(args.lattice1, args)
    L2 = resolve_lattice(args.lattice2, args)
    res = is_isometric(L1, L2)
    doc = {"isometric": res.isometric, "witness": res.witness, "reason": res.reason}
    text = ["ISOMETRIC" if res.isometric else f"NOT ISOMETRIC ({res.reason})"]
    if res.witness:
        text.append("witness M with M^T G2 M = G1:")
        text += ["  " + " ".join(f"{x:3d}" for x in row) for row in res.witness]
    _emit(args, doc, text)
    return 0


def cmd_shortvec(args) -> int:
    from .shortvec import BACKEND, short_vectors
    L = resolve_lattice(args.lattice, args)
    bound = args.bound_pos if args.bound_pos is not None else args.bound
    if bound is None:
        raise SchemaError("a bound is required")
    sv = short_vectors(L, bound)
    doc = {"bound": bound, "count": len(sv), "backend": BACKEND,
           "vectors": [{"v": list(v), "norm": q} for v, q in zip(sv.vectors, sv.norms)]}
    text = [f"{len(sv)} vectors (up to sign) with |norm| <= {bound}"]
    text += [f"  {q:4d}  {' '.join(str(x) for x in v)}" for v, q in zip(sv.vectors, sv.norms)]
    _emit(args, doc, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand; on the subcommand
    # parsers they default to SUPPRESS so they do not reset a value given earlier
    def flags(parser, default):
        parser.add_argument("--json", action="store_true",
                            default=argparse.SUPPRESS if default is argparse.SUPPRESS else False,
                            help="machine-readable output")
        parser.add_argument("--data-dir", default=default, help="alternative data bundle")
        return parser

    common = flags(argparse.ArgumentParser(add_help=False), argparse.SUPPRESS)
    p = flags(argparse.ArgumentParser(
        prog="k3lat", description="Lattices of K3 surfaces with symplectic group actions"), None)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("trivial", parents=[common], help="trivial lattice of a fibration")
    s.add_argument("config")
    s.set_defaults(func=cmd_trivial)
    s = sub.add_parser("ns", parents=[common], help="Néron–Severi lattice of a fibration")
    s.add_argument("config")
    s.set_defaults(func=cmd_ns)
    s = sub.add_parser("omega", parents=[common], help="coinvariant lattice of a group")
    s.add_argument("group")
    s.set_defaults(func=cmd_omega)
    s = sub.add_parser("verify-table", parents=[common], help="check all bundled reference data")
    s.set_defaults(func=cmd_verify_table)
    s = sub.add_parser("classify", parents=[common], help="candidate NS lattices for L^2 = 2d")
    s.add_argument("group")
    s.add_argument("d", type=int)
    s.add_argument("--box", type=int, default=6, help="search radius for representations")
    s.set_defaults(func=cmd_classify)
    s = sub.add_parser("isometry", parents=[common], help="decide isometry of definite lattices")
    s.add_argument("lattice1")
    s.add_argument("lattice2")
    s.set_defaults(func=cmd_isometry)
    s = sub.add_parser("shortvec", parents=[common], help="short vectors of a definite lattice")
    s.add_argument("lattice")
    s.add_argument("bound_pos", nargs="?", type=int, metavar="bound")
    s.add_argument("--bound", type=int, default=None)
    s.set_defaults(func=cmd_shortvec)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except K3LatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return SchemaError.exit_code


if __name__ == "__main__":
    sys.exit(main())
