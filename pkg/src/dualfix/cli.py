"""Command-line interface.

Subcommands: validate, dual, dualmap, fixpoints, compare, dot, bench.
Exit codes: 0 success, 1 usage or I/O error, 2 invalid input, 3 comparison
mismatch.  All output is deterministic except the timing fields of bench.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from math import isqrt

from . import fixpoint as fixpoint_mod
from .duality import dual_map, hom_from_dual, lift_hom
from .errors import InvalidInput, NotMonotone, QuotientNotAntisymmetric, SizeBoundExceeded
from .jsonio import (
    ParseError,
    load_obj,
    map_to_obj,
    poset_from_obj,
    poset_to_obj,
    quotient_to_obj,
    table_from_obj,
)
from .lattice import ideal_lattice, is_homomorphism, join_irreducibles, lattice_from_order
from .poset import build_poset, is_monotone, iter_ideal_masks

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_MISMATCH = 3

DEFAULT_COUNT_CAP = 1 << 20


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    kind: str | None = None
    mode: str = "list"
    max_lattice: int | None = None
    count_cap: int = DEFAULT_COUNT_CAP
    output: str | None = None
    artifact: str = "counterexample.json"
    shape: str | None = None
    n: int = 0
    map_kind: str | None = None

    def __post_init__(self):
        if self.max_lattice is not None and self.max_lattice <= 0:
            raise UsageError("--max-lattice must be positive")
        if self.count_cap <= 0:
            raise UsageError("--count-cap must be positive")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def parse_args(argv) -> RunConfig:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", metavar="PATH", help="write output here instead of stdout")
    common.add_argument(
        "--max-lattice",
        type=_positive,
        metavar="N",
        help="explicit-lattice element cap (default: BIRKHOFF_MAX_LATTICE or 4096)",
    )

    parser = _Parser(prog="dualfix", description="Fix-point lattices of lattice endomorphisms, computed on the order dual.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="validate a poset, lattice, map or hom file")
    p.add_argument("kind", choices=["poset", "lattice", "map", "hom"])
    p.add_argument("file")
    p.add_argument("--poset", metavar="PATH", help="domain poset for kind=map")
    p.add_argument("--lattice", metavar="PATH", help="domain lattice for kind=hom")
    p.add_argument("--codomain", metavar="PATH", help="codomain file (defaults to the domain)")

    p = sub.add_parser("dual", parents=[common], help="object duality: poset -> ideal lattice, lattice -> join-irreducible poset")
    p.add_argument("kind", choices=["poset", "lattice"])
    p.add_argument("file")

    p = sub.add_parser("dualmap", parents=[common], help="map duality: hom -> monotone map, monotone map -> hom")
    p.add_argument("--poset", metavar="PATH")
    p.add_argument("--map", dest="map_file", metavar="PATH")
    p.add_argument("--lattice", metavar="PATH")
    p.add_argument("--hom", dest="hom_file", metavar="PATH")

    p = sub.add_parser("fixpoints", parents=[common], help="enumerate or count all fix-points")
    p.add_argument("--poset", metavar="PATH")
    p.add_argument("--map", dest="map_file", metavar="PATH")
    p.add_argument("--lattice", metavar="PATH")
    p.add_argument("--hom", dest="hom_file", metavar="PATH")
    modes = p.add_mutually_exclusive_group()
    modes.add_argument("--list", dest="mode", action="store_const", const="list", help="stream fix-points (default)")
    modes.add_argument("--count", dest="mode", action="store_const", const="count")
    modes.add_argument("--quotient", dest="mode", action="store_const", const="quotient")
    p.set_defaults(mode="list")

    p = sub.add_parser("compare", parents=[common], help="differential check: dual route vs brute force")
    p.add_argument("--poset", metavar="PATH", required=True)
    p.add_argument("--map", dest="map_file", metavar="PATH", required=True)
    p.add_argument("--artifact", metavar="PATH", default="counterexample.json")

    p = sub.add_parser("dot", parents=[common], help="render DOT graphs")
    p.add_argument("kind", choices=["poset", "lattice", "map", "quotient"])
    p.add_argument("file")
    p.add_argument("--poset", metavar="PATH", help="carrier poset for kind=map/quotient")

    p = sub.add_parser("bench", parents=[common], help="time quotient construction and fix-point counting")
    p.add_argument("--shape", choices=["chain", "antichain", "grid"], required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--map-kind", choices=["identity", "collapse", "permutation"], required=True)
    p.add_argument("--count-cap", type=_positive, default=DEFAULT_COUNT_CAP)

    ns = parser.parse_args(argv)
    inputs = {"file": getattr(ns, "file", None)}
    for role in ("poset", "lattice", "codomain"):
        inputs[role] = getattr(ns, role, None)
    inputs["map"] = getattr(ns, "map_file", None)
    inputs["hom"] = getattr(ns, "hom_file", None)
    return RunConfig(
        command=ns.command,
        inputs={k: v for k, v in inputs.items() if v is not None},
        kind=getattr(ns, "kind", None),
        mode=getattr(ns, "mode", "list"),
        max_lattice=ns.max_lattice,
        count_cap=getattr(ns, "count_cap", DEFAULT_COUNT_CAP),
        output=ns.output,
        artifact=getattr(ns, "artifact", "counterexample.json"),
        shape=getattr(ns, "shape", None),
        n=getattr(ns, "n", 0),
        map_kind=getattr(ns, "map_kind", None),
    )


def _load_poset(cfg, role):
    path = cfg.inputs.get(role)
    if path is None:
        raise UsageError(f"--{role} is required here")
    return poset_from_obj(load_obj(path))


def _load_lattice(cfg, role):
    path = cfg.inputs.get(role)
    if path is None:
        raise UsageError(f"--{role} is required here")
    return lattice_from_order(poset_from_obj(load_obj(path)), max_size=cfg.max_lattice)


def _load_phi(cfg):
    domain = _load_poset(cfg, "poset")
    codomain = poset_from_obj(load_obj(cfg.inputs["codomain"])) if "codomain" in cfg.inputs else domain
    return is_monotone(table_from_obj(load_obj(cfg.inputs["map"])), domain, codomain)


def _load_hom(cfg):
    domain = _load_lattice(cfg, "lattice")
    codomain = (
        lattice_from_order(poset_from_obj(load_obj(cfg.inputs["codomain"])), max_size=cfg.max_lattice)
        if "codomain" in cfg.inputs
        else domain
    )
    return is_homomorphism(table_from_obj(load_obj(cfg.inputs["hom"])), domain, codomain)


def cmd_validate(cfg, out) -> int:
    try:
        if cfg.kind == "poset":
            poset_from_obj(load_obj(cfg.inputs["file"]))
        elif cfg.kind == "lattice":
            lattice_from_order(poset_from_obj(load_obj(cfg.inputs["file"])), max_size=cfg.max_lattice)
        elif cfg.kind == "map":
            domain = _load_poset(cfg, "poset")
            codomain = poset_from_obj(load_obj(cfg.inputs["codomain"])) if "codomain" in cfg.inputs else domain
            is_monotone(table_from_obj(load_obj(cfg.inputs["file"])), domain, codomain)
        else:
            domain = _load_lattice(cfg, "lattice")
            codomain = (
                lattice_from_order(poset_from_obj(load_obj(cfg.inputs["codomain"])), max_size=cfg.max_lattice)
                if "codomain" in cfg.inputs
                else domain
            )
            is_homomorphism(table_from_obj(load_obj(cfg.inputs["file"])), domain, codomain)
    except InvalidInput as exc:
        print(_dumps(exc.verdict()), file=out)
        return EXIT_INVALID
    print(_dumps({"valid": True}), file=out)
    return EXIT_OK


def cmd_dual(cfg, out) -> int:
    if cfg.kind == "poset":
        base = poset_from_obj(load_obj(cfg.inputs["file"]))
        lat = ideal_lattice(base, cfg.max_lattice)
        print(_dumps(poset_to_obj(lat.order)), file=out)
    else:
        lat = lattice_from_order(poset_from_obj(load_obj(cfg.inputs["file"])), max_size=cfg.max_lattice)
        print(_dumps(poset_to_obj(join_irreducibles(lat))), file=out)
    return EXIT_OK


def cmd_dualmap(cfg, out) -> int:
    dual_side = "poset" in cfg.inputs or "map" in cfg.inputs
    primal_side = "lattice" in cfg.inputs or "hom" in cfg.inputs
    if dual_side == primal_side:
        raise UsageError("give either --poset with --map, or --lattice with --hom")
    if dual_side:
        if not ("poset" in cfg.inputs and "map" in cfg.inputs):
            raise UsageError("--poset and --map go together")
        phi = _load_phi(cfg)
        hom = hom_from_dual(phi, max_size=cfg.max_lattice)
        print(_dumps({"lattice": poset_to_obj(hom.domain.order), "hom": map_to_obj(hom.table)}), file=out)
    else:
        if not ("lattice" in cfg.inputs and "hom" in cfg.inputs):
            raise UsageError("--lattice and --hom go together")
        hom = _load_hom(cfg)
        base, lifted = lift_hom(hom, cfg.max_lattice)
        phi = dual_map(lifted)
        print(_dumps({"poset": poset_to_obj(base), "map": map_to_obj(phi.table)}), file=out)
    return EXIT_OK


def cmd_fixpoints(cfg, out) -> int:
    dual_side = "poset" in cfg.inputs or "map" in cfg.inputs
    primal_side = "lattice" in cfg.inputs or "hom" in cfg.inputs
    if dual_side == primal_side:
        raise UsageError("give either --poset with --map, or --lattice with --hom")
    if dual_side:
        if not ("poset" in cfg.inputs and "map" in cfg.inputs):
            raise UsageError("--poset and --map go together")
        phi = _load_phi(cfg)
        if not phi.is_endo():
            raise UsageError("fix-points need a self-map: codomain must equal domain")
        fx = fixpoint_mod.fixpoints_via_duality(phi)
        if cfg.mode == "list":
            for member in fx.iter_members():
                print(_dumps(list(member.members)), file=out)
        elif cfg.mode == "count":
            print(fx.count(), file=out)
        else:
            print(_dumps(quotient_to_obj(fx.quotient)), file=out)
    else:
        if not ("lattice" in cfg.inputs and "hom" in cfg.inputs):
            raise UsageError("--lattice and --hom go together")
        hom = _load_hom(cfg)
        if not hom.is_endo():
            raise UsageError("fix-points need an endomorphism: codomain must equal domain")
        quo = fixpoint_mod.hom_quotient(hom, cfg.max_lattice)
        if cfg.mode == "list":
            for qmask in iter_ideal_masks(quo.class_poset):
                names = quo.class_poset.ids_from(qmask)
                print(_dumps(fixpoint_mod.algorithm1(hom, names, quotient=quo)), file=out)
        elif cfg.mode == "count":
            print(sum(1 for _ in iter_ideal_masks(quo.class_poset)), file=out)
        else:
            print(_dumps(quotient_to_obj(quo)), file=out)
    return EXIT_OK


def cmd_compare(cfg, out) -> int:
    base = _load_poset(cfg, "poset")
    phi = is_monotone(table_from_obj(load_obj(cfg.inputs["map"])), base, base)

    components_view = None
    try:
        components = fixpoint_mod.phi_components(phi)
        components_view = quotient_to_obj(components)
    except QuotientNotAntisymmetric as exc:
        components = None
        components_view = exc.verdict()
    coequalizer = fixpoint_mod.coequalizer_general(phi)
    quotients_agree = components is not None and components == coequalizer

    lat = ideal_lattice(base, cfg.max_lattice)
    hom = hom_from_dual(phi, lat, lat)
    brute = sorted(fixpoint_mod.bruteforce_fixpoints(hom))
    dual = sorted(m.name for m in fixpoint_mod.fixpoints_via_duality(phi).iter_members())
    fixpoints_agree = brute == dual

    if quotients_agree and fixpoints_agree:
        print(_dumps({"agree": True, "classes": len(coequalizer), "fixpoints": len(dual)}), file=out)
        return EXIT_OK
    artifact = {
        "poset": poset_to_obj(base),
        "phi": map_to_obj(phi.table),
        "components": components_view,
        "coequalizer": quotient_to_obj(coequalizer),
        "dual_fixpoints": dual,
        "bruteforce_fixpoints": brute,
    }
    with open(cfg.artifact, "w", encoding="utf-8") as fh:
        fh.write(_dumps(artifact) + "\n")
    print(
        _dumps({"agree": False, "quotients_agree": quotients_agree, "fixpoints_agree": fixpoints_agree, "artifact": cfg.artifact}),
        file=out,
    )
    return EXIT_MISMATCH


def _esc(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _dot_poset(poset) -> str:
    lines = ["digraph {", "  rankdir=BT;"]
    lines += [f'  "{_esc(x)}";' for x in poset.elements]
    lines += [f'  "{_esc(lo)}" -> "{_esc(hi)}";' for lo, hi in poset.covers()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_map(phi) -> str:
    # Self-loops carry no component information and are omitted.
    lines = ["graph {"]
    lines += [f'  "{_esc(x)}";' for x in phi.domain.elements]
    edges = set()
    for i, x in enumerate(phi.domain.elements):
        j = phi.image[i]
        if j != i:
            edges.add((min(i, j), max(i, j)))
    for i, j in sorted(edges):
        lines.append(f'  "{_esc(phi.domain.elements[i])}" -- "{_esc(phi.domain.elements[j])}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_quotient(quotient) -> str:
    lines = ["digraph {", "  rankdir=BT;", "  compound=true;"]
    rep = {}
    for ci, name in enumerate(quotient.class_poset.elements):
        rep[name] = quotient.classes[ci][0]
        lines.append(f"  subgraph cluster_{ci} {{")
        lines.append(f'    label="{_esc(name)}";')
        lines += [f'    "{_esc(x)}";' for x in quotient.classes[ci]]
        lines.append("  }")
    cluster_of = {name: ci for ci, name in enumerate(quotient.class_poset.elements)}
    for lo, hi in quotient.class_poset.covers():
        lines.append(
            f'  "{_esc(rep[lo])}" -> "{_esc(rep[hi])}" [ltail=cluster_{cluster_of[lo]}, lhead=cluster_{cluster_of[hi]}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_dot(cfg, out) -> int:
    if cfg.kind == "poset":
        out.write(_dot_poset(poset_from_obj(load_obj(cfg.inputs["file"]))))
    elif cfg.kind == "lattice":
        lat = lattice_from_order(poset_from_obj(load_obj(cfg.inputs["file"])), max_size=cfg.max_lattice)
        out.write(_dot_poset(lat.order))
    else:
        base = _load_poset(cfg, "poset")
        phi = is_monotone(table_from_obj(load_obj(cfg.inputs["file"])), base, base)
        if cfg.kind == "map":
            out.write(_dot_map(phi))
        else:
            out.write(_dot_quotient(fixpoint_mod.phi_components(phi)))
    return EXIT_OK


def _bench_poset(shape, n):
    if shape == "chain":
        width = len(str(n - 1))
        ids = [f"c{i:0{width}d}" for i in range(n)]
        return build_poset(ids, list(zip(ids, ids[1:])))
    if shape == "antichain":
        width = len(str(n - 1))
        return build_poset([f"a{i:0{width}d}" for i in range(n)], [])
    rows = isqrt(n)
    cols = n // rows
    wr, wc = len(str(rows - 1)), len(str(cols - 1))
    ids = {}
    for r in range(rows):
        for c in range(cols):
            ids[r, c] = f"g{r:0{wr}d}x{c:0{wc}d}"
    pairs = []
    for r in range(rows):
        for c in range(cols):
            if r + 1 < rows:
                pairs.append((ids[r, c], ids[r + 1, c]))
            if c + 1 < cols:
                pairs.append((ids[r, c], ids[r, c + 1]))
    return build_poset(list(ids.values()), pairs)


def _bench_table(base, map_kind):
    ids = base.elements
    if map_kind == "identity":
        return {x: x for x in ids}
    if map_kind == "collapse":
        return {x: ids[0] for x in ids}
    table = {}
    for k in range(0, len(ids) - 1, 2):
        table[ids[k]] = ids[k + 1]
        table[ids[k + 1]] = ids[k]
    if len(ids) % 2:
        table[ids[-1]] = ids[-1]
    return table


def _count_ideals_capped(poset, cap):
    if (1 << poset.minimal_mask().bit_count()) > cap:
        return None
    try:
        return sum(1 for _ in iter_ideal_masks(poset, max_count=cap))
    except SizeBoundExceeded:
        return None


def _count_fixed_primal(base, phi, cap):
    """Brute-force count of fixed ideals: scan the whole ideal family."""
    if (1 << base.minimal_mask().bit_count()) > cap:
        return None
    moved = [(1 << y, 1 << phi.image[y]) for y in range(len(base)) if phi.image[y] != y]
    fixed = 0
    try:
        for m in iter_ideal_masks(base, max_count=cap):
            for ybit, imgbit in moved:
                if bool(m & imgbit) != bool(m & ybit):
                    break
            else:
                fixed += 1
    except SizeBoundExceeded:
        return None
    return fixed


def cmd_bench(cfg, out) -> int:
    base = _bench_poset(cfg.shape, cfg.n)
    try:
        phi = is_monotone(_bench_table(base, cfg.map_kind), base, base)
    except NotMonotone:
        raise UsageError(f"--map-kind {cfg.map_kind} is not monotone on shape {cfg.shape}") from None

    report = {"shape": cfg.shape, "n": cfg.n, "elements": len(base), "map_kind": cfg.map_kind}
    t0 = time.perf_counter()
    try:
        components = fixpoint_mod.phi_components(phi)
    except QuotientNotAntisymmetric:
        components = None
    t1 = time.perf_counter()
    coequalizer = fixpoint_mod.coequalizer_general(phi)
    t2 = time.perf_counter()
    report["components_seconds"] = round(t1 - t0, 6)
    report["coequalizer_seconds"] = round(t2 - t1, 6)
    report["classes"] = len(coequalizer)
    report["quotients_agree"] = components is not None and components == coequalizer

    t3 = time.perf_counter()
    dual_count = _count_ideals_capped(coequalizer.class_poset, cfg.count_cap)
    report["dual_count_seconds"] = round(time.perf_counter() - t3, 6)
    report["dual_count"] = dual_count if dual_count is not None else "skipped (count above cap)"

    t4 = time.perf_counter()
    primal_count = _count_fixed_primal(base, phi, cfg.count_cap)
    report["primal_count_seconds"] = round(time.perf_counter() - t4, 6)
    report["primal_count"] = primal_count if primal_count is not None else "skipped (primal side infeasible)"

    if dual_count is not None and primal_count is not None:
        report["counts_agree"] = dual_count == primal_count
    print(_dumps(report), file=out)
    if not report["quotients_agree"] or report.get("counts_agree") is False:
        return EXIT_MISMATCH
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "dual": cmd_dual,
    "dualmap": cmd_dualmap,
    "fixpoints": cmd_fixpoints,
    "compare": cmd_compare,
    "dot": cmd_dot,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    out = sys.stdout
    opened = None
    if cfg.output:
        try:
            opened = open(cfg.output, "w", encoding="utf-8")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        out = opened
    try:
        return _COMMANDS[cfg.command](cfg, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidInput as exc:
        print(_dumps(exc.verdict()), file=sys.stderr)
        return EXIT_INVALID
    finally:
        if opened is not None:
            opened.close()


if __name__ == "__main__":
    sys.exit(main())
