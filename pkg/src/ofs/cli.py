"""Command-line interface: ``ofs <command> ...``.

Every command prints one JSON document. Exit status is 0 on success, 1
when a check fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import calculus, io
from .axioms import validate
from .computads import cells
from .enumerator import canonical_form, enumerate_principal, enumerate_valid
from .gt import BudgetExceeded
from .model import OfsError
from .morphisms import Kind, enumerate_homs


def _budget(default: int) -> int:
    env = os.environ.get("OFS_BUDGET")
    return min(default, int(env)) if env else default


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _doc(S):
    return io.to_document(S)


def cmd_validate(args) -> int:
    S = io.load(args.file)
    if (S.relaxed_top or S.open_loops) and not args.interface:
        _emit({"valid": False, "error": "interface structure; pass --interface to check it"})
        return 1
    report = validate(S, args.mode)
    _emit(report.as_dict())
    return 0 if report.valid else 1


def cmd_size(args) -> int:
    S = io.load(args.file)
    _emit({"size": list(calculus.size(S)), "principal": calculus.is_principal(S)})
    return 0


def cmd_principal(args) -> int:
    S = io.load(args.file)
    p = calculus.is_principal(S)
    _emit({"principal": p, "size": list(calculus.size(S))})
    return 0 if p else 1


def cmd_cuts(args) -> int:
    S = io.load(args.file)
    _emit({"cuts": [c.as_dict() for c in calculus.enumerate_cuts(S)]})
    return 0


def _pick_cut(S, text: str):
    level, _, names = text.partition(":")
    if not level.isdigit() or not names:
        raise io.ParseError(f"--cut: expected K:ID, got {text!r}")
    wanted = set(names.split(","))
    cands = [c for c in calculus.enumerate_cuts(S) if c.level == int(level)]
    exact = [c for c in cands if c.lower == wanted]
    if exact:
        return exact[0]
    if len(wanted) == 1:
        hits = sorted((c for c in cands if wanted <= c.lower), key=lambda c: len(c.lower))
        if hits:
            return hits[0]
    return None


def cmd_split(args) -> int:
    S = io.load(args.file)
    cut = _pick_cut(S, args.cut)
    if cut is None:
        _emit({"error": f"no cut matches {args.cut}"})
        return 1
    down, up = calculus.split(S, cut)
    _emit({"cut": cut.as_dict(), "lower": _doc(down), "upper": _doc(up)})
    return 0


def cmd_tensor(args) -> int:
    A, B = io.load(args.a), io.load(args.b)
    try:
        sq = calculus.tensor(A, B, args.level)
    except (calculus.InterfaceMismatch, calculus.CompletionConflict) as e:
        _emit({"error": f"{type(e).__name__}: {e}"})
        return 1
    _emit(_doc(sq.tensor))
    return 0


def cmd_dom(args) -> int:
    _emit(_doc(calculus.k_domain(io.load(args.file), args.k)[0]))
    return 0


def cmd_cod(args) -> int:
    _emit(_doc(calculus.k_codomain(io.load(args.file), args.k)[0]))
    return 0


def cmd_hom(args) -> int:
    A, B = io.load(args.a), io.load(args.b)
    homs = enumerate_homs(A, B, Kind(args.kind))
    _emit({"kind": args.kind, "count": len(homs),
           "morphisms": [dict(sorted(f.mapping.items())) for f in homs]})
    return 0


def cmd_cells(args) -> int:
    S = io.load(args.file)
    try:
        cs = cells(S, args.n, _budget(args.budget))
    except BudgetExceeded as e:
        _emit({"error": f"BudgetExceeded: {e}"})
        return 1
    _emit({"count": len(cs), "cells": [
        {"level": c.level, "dim": c.shape.dim, "shape": _doc(c.shape),
         "map": dict(sorted(c.mapping.items()))} for c in cs]})
    return 0


def cmd_enumerate(args) -> int:
    faces = _budget(args.max_faces)
    if args.principal:
        cat = enumerate_principal(args.dim, faces)
    else:
        cat = enumerate_valid(args.dim, faces)
    counts = [{"dim": d, "faces": f, "count": n} for (d, f), n in cat.counts().items()]
    _emit({"counts": counts, "total": len(cat), "structures": [_doc(S) for S in cat]})
    return 0


def cmd_canon(args) -> int:
    C, key = canonical_form(io.load(args.file))
    digest = hashlib.sha256(key.encode()).hexdigest()
    _emit({"key": digest, "document": _doc(C)})
    return 0


def cmd_gtcheck(args) -> int:
    structures = [io.load(f) for f in args.files]
    fails = calculus.check_gt_laws(structures)
    _emit({"pass": not fails, "failures": [[str(x) for x in f] for f in fails]})
    return 0 if not fails else 1


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ofs", description="Ordered face structures toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the six axioms")
    s.add_argument("file")
    s.add_argument("--interface", action="store_true", help="accept relaxed interface structures")
    s.add_argument("--mode", choices=["strict", "combined"], default="strict")
    s.set_defaults(func=cmd_validate)

    for name, fn, h in (("size", cmd_size, "size vector and principality"),
                        ("principal", cmd_principal, "exit 0 iff principal"),
                        ("cuts", cmd_cuts, "list every cut"),
                        ("canon", cmd_canon, "canonical form and its digest")):
        s = sub.add_parser(name, help=h)
        s.add_argument("file")
        s.set_defaults(func=fn)

    s = sub.add_parser("split", help="split along a cut")
    s.add_argument("file")
    s.add_argument("--cut", required=True, help="K:ID (a face of the lower part) or K:ID,ID,...")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("tensor", help="glue two structures along a k-interface")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--level", type=int, required=True)
    s.set_defaults(func=cmd_tensor)

    for name, fn in (("dom", cmd_dom), ("cod", cmd_cod)):
        s = sub.add_parser(name, help=f"k-{'domain' if name == 'dom' else 'codomain'}")
        s.add_argument("file")
        s.add_argument("-k", type=int, required=True)
        s.set_defaults(func=fn)

    s = sub.add_parser("hom", help="enumerate maps of a given kind")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--kind", choices=[k.value for k in Kind], default="local")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("cells", help="n-cells of the free computad")
    s.add_argument("file")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--budget", type=int, default=5000)
    s.set_defaults(func=cmd_cells)

    s = sub.add_parser("enumerate", help="enumerate valid structures up to iso")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--max-faces", type=int, required=True)
    s.add_argument("--principal", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("gtcheck", help="run the GT-law suite over files")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_gtcheck)
    return p


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except (io.ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OfsError as e:
        _emit({"error": f"{type(e).__name__}: {e}"})
        return 1


if __name__ == "__main__":
    sys.exit(main())
