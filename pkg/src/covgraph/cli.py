"""Command-line front end.

Subcommands: validate, pullback, pi1, hom, triad.  Exit codes: 0 success,
1 validation or parse failure, 2 property falsified by a consistency
check, 3 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .covers import Category
from .files import ParseError, Workspace, serialize_cover, serialize_morphism
from .functor import TriadBounds, enumerate_hom, triad
from .graphs import ValidationError
from .pi1 import word_to_text
from .pullback import pullback


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(3, f"{self.prog}: error: {message}\n")


def build_parser():
    ap = _Parser(prog="covgraph")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="parse and validate files")
    v.add_argument("paths", nargs="+")

    pb = sub.add_parser("pullback", help="pull a cover back along a map")
    pb.add_argument("map_path")
    pb.add_argument("cover_path")
    pb.add_argument("out_path")

    p1 = sub.add_parser("pi1", help="spanning-tree presentations per component")
    p1.add_argument("paths", nargs="+")

    hm = sub.add_parser("hom", help="enumerate morphisms between two covers")
    hm.add_argument("paths", nargs="+",
                    help="files defining exactly two covers (plus any bases)")
    _common_flags(hm)

    tr = sub.add_parser("triad", help="algebraic/categorical comparison of a map")
    tr.add_argument("paths", nargs="+",
                    help="files defining the map (last morphism is used)")
    _common_flags(tr)
    return ap


def _common_flags(sp):
    sp.add_argument("--max-sheets", type=int, default=3)
    sp.add_argument("--word-length", type=int, default=12)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--category", default="cov",
                    choices=["cov", "scov", "bcov", "bscov", "all"])


def _load_all(paths):
    ws = Workspace()
    defined = []
    for path in paths:
        defined += ws.load(path)
    return ws, defined


def cmd_validate(args, out):
    # one shared workspace so later files may reference earlier graphs
    code = 0
    ws = Workspace()
    for path in args.paths:
        try:
            defined = ws.load(path)
        except (ParseError, ValidationError) as err:
            code = 1
            for p in err.problems:
                out.write(f"{path}: INVALID: {p}\n")
            continue
        for kind, name in defined:
            out.write(f"{path}: ok {kind} {name}\n")
    return code


def cmd_pullback(args, out):
    ws, _ = _load_all([args.map_path, args.cover_path])
    if not ws.morphisms:
        out.write("no morphism defined in the map file\n")
        return 1
    if not ws.covers:
        out.write("no cover defined in the cover file\n")
        return 1
    fname, f = sorted(ws.morphisms.items())[0]
    pname, p = sorted(ws.covers.items())[0]
    pb = pullback(f, p)
    text = serialize_cover(f"pullback_{pname}", pb.proj_base,
                           "pullback_total", _graph_name(ws, f.source))
    text += serialize_morphism(f"proj_top_{pname}", pb.proj_top,
                               "pullback_total", _graph_name(ws, p.total))
    with open(args.out_path, "w", encoding="utf-8") as fh:
        fh.write(text)
    out.write(f"pullback of {pname} along {fname}: "
              f"{len(pb.total.vertices)} vertices, "
              f"{pb.total.components.count} components -> {args.out_path}\n")
    return 0


def _graph_name(ws, g):
    for name, h in ws.graphs.items():
        if h is g:
            return name
    return "anonymous"


def cmd_pi1(args, out):
    ws, defined = _load_all(args.paths)
    for kind, name in defined:
        if kind != "graph":
            continue
        g = ws.graphs[name]
        for c in range(g.components.count):
            pres = g.presentation(g.base_of_component(c))
            gens = " ".join(f"g{k}={d}" for k, d in enumerate(pres.gens))
            out.write(f"{name} component {c}: base {pres.base} "
                      f"rank {pres.rank}{' ' + gens if gens else ''}\n")
    return 0


def _categories(flag):
    if flag == "all":
        return tuple(Category)
    return (Category(flag),)


def cmd_hom(args, out):
    ws, _ = _load_all(args.paths)
    if len(ws.covers) != 2:
        out.write(f"expected exactly two covers, found {len(ws.covers)}\n")
        return 1
    (n1, p1), (n2, p2) = sorted(ws.covers.items())
    for category in _categories(args.category):
        hs = enumerate_hom(p1, p2, category)
        out.write(f"hom({n1}, {n2}) in {category.value}: "
                  f"{len(hs)} morphisms\n")
        for k, t in enumerate(hs.morphisms):
            assignment = " ".join(f"{v}->{t.t.vertex_map[v]}"
                                  for v in sorted(t.t.vertex_map))
            out.write(f"  [{k}] {assignment}\n")
    return 0


def cmd_triad(args, out):
    ws, defined = _load_all(args.paths)
    morphs = [name for kind, name in defined if kind == "morphism"]
    if not morphs:
        out.write("no morphism defined\n")
        return 1
    name = morphs[-1]
    f = ws.morphisms[name]
    bounds = TriadBounds(args.max_sheets, args.word_length, args.samples,
                         args.seed)
    report = triad(f, _categories(args.category), bounds)
    out.write(f"triad {name}\n")
    out.write(f"  pi0 surjective {report.pi0_surjective} "
              f"injective {report.pi0_injective}\n")
    out.write(f"  pi1 surjective {report.pi1_surjective} "
              f"injective {report.pi1_injective}\n")
    for v in report.verdicts:
        fa = _verdict_word(v.faithful.witness is None)
        fu = _verdict_word(v.full.witness is None)
        es = _verdict_word(v.essentially_surjective.witness is None)
        out.write(f"  {v.category.value}: faithful {fa}, full {fu}, "
                  f"essentially-surjective {es} "
                  f"(sheets<={bounds.max_sheets})\n")
        for problem in v.inconsistencies:
            out.write(f"  {v.category.value}: INCONSISTENT: {problem}\n")
    return 0 if report.consistent else 2


def _verdict_word(no_witness):
    return "no-witness" if no_witness else "witnessed"


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as err:
        return err.code if err.code is not None else 3
    try:
        return {
            "validate": cmd_validate,
            "pullback": cmd_pullback,
            "pi1": cmd_pi1,
            "hom": cmd_hom,
            "triad": cmd_triad,
        }[args.command](args, out)
    except (ParseError, ValidationError) as err:
        for p in err.problems:
            out.write(f"INVALID: {p}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
