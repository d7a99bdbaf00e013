"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 domain error (a JSON object
``{"error": code, "message": text}`` is written to stderr).
"""

from __future__ import annotations

import argparse
import io
import json
import shlex
import sys
from concurrent.futures import ThreadPoolExecutor

from . import classify as cl
from . import mesh, ppa
from .automorphism import (enumerate_weakly_admissible, is_admissible,
                           is_weakly_admissible, parse_generator, parse_vertex)
from .dynkin import build_tree, coxeter_number, positive_root_count
from .errors import ArquiverError
from .zquiver import OrbitQuiver, identify_type, orbit_quotient

SCHEMA_VERSION = "1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _dump(obj) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, indent=2, sort_keys=True) + "\n"


def _tree(args):
    return build_tree(args.family, args.rank)


def _add_tree(p, families="ADE"):
    p.add_argument("--family", required=True, choices=list(families))
    p.add_argument("--rank", required=True, type=int)


# --- subcommands -------------------------------------------------------------

def cmd_dynkin(args, out):
    t = _tree(args)
    if args.format == "dot":
        out.write(t.to_dot())
        return
    info = json.loads(t.to_json())
    if t.family != "L":
        info["coxeter_number"] = coxeter_number(t)
        info["positive_root_count"] = positive_root_count(t)
    out.write(_dump(info))


def cmd_auto(args, out):
    t = _tree(args)
    if args.list is not None:
        if args.list < 1:
            raise UsageError("auto: --list needs R >= 1")
        gens = enumerate_weakly_admissible(t, args.list)
        out.write(_dump({"tree": t.name, "generators": [g.label for g in gens]}))
        return
    if args.gen is None:
        raise UsageError("auto: give --gen EXPR or --list R")
    g = parse_generator(t, args.gen)
    c, s = g.period
    info = {"tree": t.name, **g.to_dict(), "perm_order": c, "net_shift": -s,
            "is_identity": g.is_identity}
    if not g.is_identity:
        info["weakly_admissible"] = is_weakly_admissible(g)
        info["admissible"] = is_admissible(g)
    if args.apply:
        info["image"] = str(g(parse_vertex(args.apply)))
    out.write(_dump(info))


def cmd_orbit(args, out):
    if args.input:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
        q = OrbitQuiver.from_json(text)
        tree, g = identify_type(q)
        out.write(_dump({"tree": tree.name, "generator": g.label,
                         "vertex_count": len(q.vertices)}))
        return
    if args.family is None or args.rank is None or args.gen is None:
        raise UsageError("orbit: --family, --rank and --gen are required")
    t = _tree(args)
    q = orbit_quotient(t, parse_generator(t, args.gen))
    if args.format == "json":
        out.write(_dump(json.loads(q.to_json())))
    else:
        out.write(q.to_dot(f"{t.name}_quotient"))


def cmd_mesh(args, out):
    t = _tree(args)
    if args.what == "hom":
        d = mesh.hom_knit(t, parse_vertex(args.source))
        if args.format == "dot":
            out.write(d.to_dot(t))
        elif args.format == "json":
            out.write(_dump({"tree": t.name, "from": str(d.base),
                             "values": [[v.p, v.q, n] for v, n in sorted(d.values.items())]}))
        else:
            out.write(d.to_tsv())
    elif args.what == "oracle":
        n = mesh.hom_oracle(t, parse_vertex(args.source), parse_vertex(args.target),
                            method=args.method)
        out.write(_dump({"tree": t.name, "from": args.source, "to": args.target, "dim": n}))
    elif args.what == "orbit-hom":
        g = parse_generator(t, args.gen)
        n = mesh.orbit_hom(t, g, parse_vertex(args.source), parse_vertex(args.target))
        out.write(_dump({"tree": t.name, "generator": g.label, "from": args.source,
                         "to": args.target, "dim": n}))
    else:
        g = parse_generator(t, args.gen)
        verts, mat = mesh.total_hom(t, g)
        ell = {str(v): int(mat[:, j].sum()) for j, v in enumerate(verts)}
        if args.format == "json":
            out.write(_dump({"tree": t.name, "generator": g.label,
                             "vertices": [str(v) for v in verts],
                             "matrix": mat.tolist(), "l": ell}))
        else:
            out.write("\t" + "\t".join(str(v) for v in verts) + "\n")
            for v, row in zip(verts, mat.tolist()):
                out.write(str(v) + "\t" + "\t".join(map(str, row)) + "\n")


def cmd_classify(args, out):
    t = _tree(args)
    g = parse_generator(t, args.gen)
    res = cl.classify_summary(t, g, args.d_max)
    if not args.details:
        res.pop("details")
    out.write(_dump(res))


def cmd_ppa(args, out):
    f = ppa.parse_polynomial(args.f)
    if args.format == "tsv":
        alg = ppa.build_algebra(args.family, args.rank, f, args.char, args.degree_cap)
        out.write(alg.basis_tsv())
        return
    out.write(_dump(ppa.invariant_report(args.family, args.rank, f, args.char,
                                         args.degree_cap)))


def cmd_batch(args, out):
    with (sys.stdin if args.file == "-" else open(args.file)) as fh:
        queries = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]

    def one(line):
        o, e = io.StringIO(), io.StringIO()
        code = run(shlex.split(line), o, e)
        return {"query": line, "exit": code, "stdout": o.getvalue(), "stderr": e.getvalue()}

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(one, queries))
    for r in results:
        out.write(json.dumps(r, sort_keys=True) + "\n")


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="arquiver",
                description="Combinatorics of repetition quivers, orbit categories "
                            "and preprojective algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dynkin", help="tree data and invariants")
    _add_tree(d, "ADEL")
    d.add_argument("--format", choices=["json", "dot"], default="json")
    d.set_defaults(func=cmd_dynkin)

    a = sub.add_parser("auto", help="inspect an automorphism of ZDelta",
                       epilog="EXPR: terms tau, S, phi, phi(123), rho, id with ^k, "
                              "joined by * (rightmost applied first)")
    _add_tree(a)
    a.add_argument("--gen", metavar="EXPR")
    a.add_argument("--apply", metavar="P,Q", help="image of a vertex")
    a.add_argument("--list", metavar="R", type=int,
                   help="list weakly admissible generators with exponent <= R")
    a.set_defaults(func=cmd_auto)

    o = sub.add_parser("orbit", help="orbit quiver ZDelta/<g>, or identify a quiver")
    o.add_argument("--family", choices=list("ADE"))
    o.add_argument("--rank", type=int)
    o.add_argument("--gen", metavar="EXPR")
    o.add_argument("--input", metavar="FILE",
                   help="identify the quiver in this JSON file ('-' for stdin)")
    o.add_argument("--format", choices=["dot", "json"], default="dot")
    o.set_defaults(func=cmd_orbit)

    m = sub.add_parser("mesh", help="Hom dimensions in the mesh category")
    m.add_argument("what", choices=["hom", "oracle", "orbit-hom", "total"])
    _add_tree(m)
    m.add_argument("--from", dest="source", metavar="P,Q")
    m.add_argument("--to", dest="target", metavar="P,Q")
    m.add_argument("--gen", metavar="EXPR")
    m.add_argument("--method", choices=["quotient", "paths"], default="quotient")
    m.add_argument("--format", choices=["tsv", "dot", "json"], default="tsv")
    m.set_defaults(func=cmd_mesh)

    c = sub.add_parser("classify", help="standardness and CY criteria for ZDelta/<g>")
    _add_tree(c)
    c.add_argument("--gen", required=True, metavar="EXPR")
    c.add_argument("--d-max", type=int, default=24)
    c.add_argument("--details", action="store_true", help="include the per-arrow Hom data")
    c.set_defaults(func=cmd_classify)

    pp = sub.add_parser("ppa", help="deformed preprojective algebras")
    psub = pp.add_subparsers(dest="ppa_command", required=True, parser_class=_Parser)
    b = psub.add_parser("build", help="build P^f(Delta) and report invariants")
    _add_tree(b, "ADEL")
    b.add_argument("--char", type=int, default=ppa.DEFAULT_PRIME, help="prime p")
    b.add_argument("--f", default="0", metavar="POLY",
                   help='deformation in x (and y), e.g. "1*x*y + 1*y*x"')
    b.add_argument("--degree-cap", type=int)
    b.add_argument("--format", choices=["json", "tsv"], default="json",
                   help="tsv dumps the basis (source, target, length, word)")
    b.set_defaults(func=cmd_ppa)

    bt = sub.add_parser("batch", help="run one query per line of FILE")
    bt.add_argument("file", metavar="FILE")
    bt.add_argument("--jobs", type=int, default=1)
    bt.set_defaults(func=cmd_batch)
    return p


_REQUIRED = {"hom": ["source"], "oracle": ["source", "target"],
             "orbit-hom": ["gen", "source", "target"], "total": ["gen"]}


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "mesh":
            missing = [k for k in _REQUIRED[args.what] if getattr(args, k) is None]
            if missing:
                raise UsageError(f"mesh {args.what}: missing {', '.join(missing)}")
        args.func(args, out)
    except UsageError as exc:
        err.write(str(exc).rstrip() + "\n")
        return 1
    except OSError as exc:
        err.write(f"arquiver: {exc}\n")
        return 1
    except ArquiverError as exc:
        err.write(json.dumps({"error": exc.code, "message": str(exc)}, sort_keys=True) + "\n")
        return 2
    except SystemExit as exc:
        # --help and --version
        return int(exc.code or 0)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
