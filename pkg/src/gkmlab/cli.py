"""Command-line surface.

Exit codes: 0 = success / computed true, 1 = computed negative answer (not
isomorphic, infeasible, no connection, a failed check), 2 = input error,
3 = internal inconsistency (nonconstant localization sum, non-formal Betti
data).  Results go to stdout, errors to stderr.  JSON output is
deterministic byte-for-byte for identical inputs and never contains
floating point numbers; rationals are "num/den" strings.
"""

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .cohomology import betti_numbers
from .connection import (enumerate_unsigned_connections,
                         exists_signed_structure_with_connection)
from .errors import (ExprSyntaxError, GraphFormatError, NotGKMConsistentError)
from .graph import CATALOG_NAMES, catalog, isomorphic_strict, isomorphic_up_to_lattice_aut
from .localization import integrate, integrate_pontryagin
from .moment import (InfeasibilityCertificate, realize, realize_any_signs,
                     xray, xray_equal, xray_to_jsonable)
from .parsing import (parse_expr, parse_graph, parse_orientation,
                      serialize_expr, serialize_graph)
from .strata import orbit_poset, poset_isomorphic_with_labels, poset_to_jsonable
from . import papercheck

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise GraphFormatError("cannot read %s: %s" % (path, exc))


def _load_graph(path):
    return parse_graph(_read(path))


def _digest(*chunks):
    h = hashlib.sha256()
    for c in chunks:
        h.update(c.encode("utf-8"))
    return h.hexdigest()


def _frac(x):
    return str(Fraction(x))


def _emit(args, report_dict, text_lines):
    if getattr(args, "json", False):
        print(json.dumps(report_dict, indent=2))
    else:
        for line in text_lines:
            print(line)


def _report(command, digest, results, violations=(), warnings=()):
    return {"command": command, "input_digest": digest, "results": results,
            "violations": list(violations), "warnings": list(warnings)}


# -- subcommand handlers ----------------------------------------------------

def _cmd_validate(args):
    g, signed = _load_graph(args.file)
    report = g.validate()
    digest = _digest(serialize_graph(g, signed))
    results = {"ok": report.ok}
    lines = []
    for v in report.violations:
        lines.append("violation: %s" % v)
    for w in report.warnings:
        lines.append("warning: %s" % w)
    lines.append("valid GKM graph" if report.ok else "invalid: %d violation(s)"
                 % len(report.violations))
    _emit(args, _report("validate", digest, results,
                        report.violations, report.warnings), lines)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def _cmd_info(args):
    g, signed = _load_graph(args.file)
    digest = _digest(serialize_graph(g, signed))
    results = {
        "rank": g.rank,
        "valence": g.valence,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "euler_characteristic": g.euler_characteristic(),
        "complexity": g.complexity(),
        "signed": signed is not None,
    }
    lines = ["rank: %d" % g.rank,
             "valence: %d" % g.valence,
             "vertices: %d" % len(g.vertices),
             "edges: %d" % len(g.edges),
             "euler characteristic: %d" % g.euler_characteristic(),
             "complexity: %d" % g.complexity(),
             "signed structure: %s" % ("yes" if signed else "no")]
    _emit(args, _report("info", digest, results), lines)
    return EXIT_OK


def _cmd_betti(args):
    g, signed = _load_graph(args.file)
    digest = _digest(serialize_graph(g, signed))
    b = betti_numbers(g)
    results = {"betti": b}
    lines = ["b_%d = %d" % (2 * k, v) for k, v in enumerate(b)]
    lines.append("betti vector: (%s)" % ", ".join(map(str, b)))
    _emit(args, _report("betti", digest, results), lines)
    return EXIT_OK


def _cmd_connections(args):
    g, signed = _load_graph(args.file)
    digest = _digest(serialize_graph(g, signed))
    if args.signed:
        if args.sigma_plus:
            raise ValueError("--sigma-plus applies to the unsigned search only")
        ok, witness = exists_signed_structure_with_connection(g)
        if ok:
            signs, _conn = witness
            results = {"signed_structure_with_connection": True,
                       "signs": list(signs.signs)}
            _emit(args, _report("connections", digest, results),
                  ["a signed structure admits a connection",
                   "signs: %s" % (signs.signs,)])
            return EXIT_OK
        results = {"signed_structure_with_connection": False}
        _emit(args, _report("connections", digest, results),
              ["no signed structure admits a connection"])
        return EXIT_NEGATIVE
    count, _conns = enumerate_unsigned_connections(g, sigma_plus=args.sigma_plus)
    results = {"unsigned_connection_count": count,
               "sigma_plus": bool(args.sigma_plus)}
    _emit(args, _report("connections", digest, results),
          ["unsigned connections: %d" % count])
    return EXIT_OK if count >= 1 else EXIT_NEGATIVE


def _cmd_strata(args):
    g, signed = _load_graph(args.file)
    digest = _digest(serialize_graph(g, signed))
    poset = orbit_poset(g)
    results = poset_to_jsonable(poset)
    lines = ["%d strata" % len(poset)]
    for el in poset.elements:
        lines.append("  {%s} edges=%d isotropy dim=%d torsion=%s" % (
            ",".join(sorted(el.vertices)), len(el.edges),
            el.principal_isotropy.dim_identity_component,
            list(el.principal_isotropy.torsion_invariants)))
    _emit(args, _report("strata", digest, results), lines)
    return EXIT_OK


def _cmd_iso(args):
    g1, s1 = _load_graph(args.file1)
    g2, s2 = _load_graph(args.file2)
    digest = _digest(serialize_graph(g1, s1), serialize_graph(g2, s2))
    iso = (isomorphic_up_to_lattice_aut(g1, g2) if args.lattice_aut
           else isomorphic_strict(g1, g2))
    if iso is None:
        _emit(args, _report("iso", digest, {"isomorphic": False}),
              ["not isomorphic"])
        return EXIT_NEGATIVE
    results = {"isomorphic": True,
               "vertex_map": {v: iso.vertex_map[v] for v in sorted(iso.vertex_map)}}
    lines = ["isomorphic",
             "vertex map: %s" % ", ".join("%s->%s" % (v, iso.vertex_map[v])
                                          for v in sorted(iso.vertex_map))]
    if iso.matrix is not None:
        results["matrix"] = [list(r) for r in iso.matrix]
        lines.append("lattice automorphism: %s" % (iso.matrix,))
    _emit(args, _report("iso", digest, results), lines)
    return EXIT_OK


def _realization_jsonable(g, m):
    return {
        "positions": {v: [_frac(c) for c in m.positions[v]] for v in g.vertices},
        "lengths": {str(i): _frac(m.lengths[i]) for i in sorted(m.lengths)},
    }


def _cmd_realize(args):
    g, signed = _load_graph(args.file)
    digest = _digest(serialize_graph(g, signed))
    if args.any_signs:
        found = realize_any_signs(g)
        if found is None:
            _emit(args, _report("realize", digest, {"feasible": False}),
                  ["infeasible for every sign structure"])
            return EXIT_NEGATIVE
        signed, m = found
    else:
        if signed is None:
            raise GraphFormatError(
                "file carries no signed structure; use `signed edge` lines or --any-signs")
        m = realize(g, signed)
        if isinstance(m, InfeasibilityCertificate):
            _emit(args, _report("realize", digest,
                                {"feasible": False,
                                 "certificate": [[_frac(c), list(map(str, s))]
                                                 for c, s in m.combination]}),
                  [m.describe()])
            return EXIT_NEGATIVE
    results = {"feasible": True, "signs": list(signed.signs)}
    results.update(_realization_jsonable(g, m))
    lines = ["feasible"]
    lines += ["mu(%s) = (%s)" % (v, ", ".join(_frac(c) for c in m.positions[v]))
              for v in g.vertices]
    lines += ["length(%s-%s #%d) = %s" % (g.edges[i].u, g.edges[i].v, i,
                                          _frac(m.lengths[i]))
              for i in sorted(m.lengths)]
    _emit(args, _report("realize", digest, results), lines)
    if args.figure:
        from .plots import realization_figure, save_figure
        save_figure(realization_figure(g, m, title=args.file), args.figure)
    return EXIT_OK


def _xray_of_file(path):
    g, signed = _load_graph(path)
    if signed is None:
        raise GraphFormatError("%s carries no signed structure" % path)
    m = realize(g, signed)
    if isinstance(m, InfeasibilityCertificate):
        return g, signed, None, m
    return g, signed, xray(g, signed, m), m


def _cmd_xray(args):
    g, signed, x, m = _xray_of_file(args.file)
    digest = _digest(serialize_graph(g, signed))
    if x is None:
        _emit(args, _report("xray", digest, {"feasible": False}), [m.describe()])
        return EXIT_NEGATIVE
    if args.compare:
        g2, s2, x2, m2 = _xray_of_file(args.compare)
        digest = _digest(serialize_graph(g, signed), serialize_graph(g2, s2))
        if x2 is None:
            _emit(args, _report("xray", digest, {"feasible": False}),
                  [m2.describe()])
            return EXIT_NEGATIVE
        mode = "normalized" if args.normalized else "exact"
        equal = xray_equal(x, x2, mode=mode)
        _emit(args, _report("xray", digest, {"mode": mode, "equal": equal}),
              ["x-rays %s (%s mode)" % ("coincide" if equal else "differ", mode)])
        return EXIT_OK if equal else EXIT_NEGATIVE
    results = xray_to_jsonable(x)
    lines = ["%d strata" % len(x.poset)]
    for idx, el in enumerate(x.poset.elements):
        pts = " ".join("(%s)" % ",".join(_frac(c) for c in p)
                       for p in x.polytopes[idx])
        lines.append("  {%s}: %s" % (",".join(sorted(el.vertices)), pts))
    _emit(args, _report("xray", digest, results), lines)
    if args.figure:
        from .plots import save_figure, xray_figure
        save_figure(xray_figure(x, g.rank, title=args.file), args.figure)
    return EXIT_OK


def _cmd_integrate(args):
    g, signed = _load_graph(args.file)
    expr = parse_expr(args.expr, g.valence)
    digest = _digest(serialize_graph(g, signed), serialize_expr(expr))
    if args.orientation:
        orientation = parse_orientation(_read(args.orientation), g)
        value = integrate_pontryagin(g, orientation, expr)
    else:
        if signed is None:
            raise GraphFormatError(
                "file carries no signed structure; required unless --orientation is given")
        value = integrate(g, signed, expr)
    results = {"expr": serialize_expr(expr), "value": _frac(value),
               "integral": value.denominator == 1}
    lines = ["integral of %s = %s" % (serialize_expr(expr), _frac(value))]
    if value.denominator != 1:
        lines.append("warning: value is not an integer")
    _emit(args, _report("integrate", digest, results), lines)
    return EXIT_OK


def _cmd_catalog(args):
    if args.name is None:
        names = list(CATALOG_NAMES)
        if args.emit:
            written = []
            for name in names:
                g, signed = catalog(name)
                path = "%s.gkm" % name
                with open(path, "w", encoding="utf-8") as fh:
                    fh.write(serialize_graph(g, signed))
                written.append(path)
            _emit(args, _report("catalog", _digest(*names),
                                {"written": written}),
                  ["wrote %s" % p for p in written])
        else:
            _emit(args, _report("catalog", _digest(*names), {"names": names}),
                  names)
        return EXIT_OK
    try:
        g, signed = catalog(args.name)
    except KeyError as exc:
        raise GraphFormatError(str(exc))
    text = serialize_graph(g, signed)
    digest = _digest(text)
    if args.emit:
        path = "%s.gkm" % args.name.strip().lower().replace("(", "").replace(")", "")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(args, _report("catalog", digest, {"written": [path]}),
              ["wrote %s" % path])
    else:
        _emit(args, _report("catalog", digest, {"text": text}), [text.rstrip("\n")])
    if args.figure:
        from .plots import graph_figure, save_figure
        save_figure(graph_figure(g, title=args.name), args.figure)
    return EXIT_OK


def _cmd_paper_check(args):
    rows = papercheck.run_paper_check()
    if args.outdir:
        papercheck.write_report(rows, args.outdir)
    if args.json:
        print(json.dumps({"command": "paper-check",
                          "results": papercheck.rows_to_jsonable(rows)}, indent=2))
    else:
        print(papercheck.rows_to_table(rows))
        if args.outdir:
            print("report written to %s" % args.outdir)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_NEGATIVE


# -- parser ------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="gkm-lab",
        description="Exact-arithmetic analyses of GKM graphs.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=fn)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("validate", _cmd_validate, help="check the GKM graph axioms")
    p.add_argument("file")

    p = add("info", _cmd_info, help="euler characteristic, complexity, valence, rank")
    p.add_argument("file")

    p = add("betti", _cmd_betti, help="even Betti numbers from the graph")
    p.add_argument("file")

    p = add("connections", _cmd_connections, help="enumerate connections")
    p.add_argument("file")
    p.add_argument("--signed", action="store_true",
                   help="search sign structures admitting a connection")
    p.add_argument("--sigma-plus", action="store_true",
                   help="restrict the unsigned congruence to sigma = +1")

    p = add("strata", _cmd_strata, help="orbit-type stratification poset")
    p.add_argument("file")

    p = add("iso", _cmd_iso, help="graph isomorphism test")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--lattice-aut", action="store_true",
                   help="allow a GL(r,Z) change of the weight lattice")

    p = add("realize", _cmd_realize, help="momentum realization or certificate")
    p.add_argument("file")
    p.add_argument("--any-signs", action="store_true",
                   help="search all sign structures modulo global negation")
    p.add_argument("--figure", metavar="PATH",
                   help="render the momentum image to an image file")

    p = add("xray", _cmd_xray, help="x-ray of the canonical realization")
    p.add_argument("file")
    p.add_argument("--compare", metavar="FILE2", help="compare against a second graph")
    p.add_argument("--normalized", action="store_true",
                   help="compare up to translation and positive scaling")
    p.add_argument("--figure", metavar="PATH", help="render the x-ray to an image file")

    p = add("integrate", _cmd_integrate, help="localized characteristic number")
    p.add_argument("file")
    p.add_argument("--expr", required=True,
                   help="expression in c1..c9, p1..p4, eu; e.g. 'c1^2' or 'p1 + 3*c1*c1'")
    p.add_argument("--orientation", metavar="FILE",
                   help="vertex orientation file (enables unsigned Pontryagin integrals)")

    p = add("catalog", _cmd_catalog, help="list or emit the builtin graphs")
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--emit", action="store_true", help="write .gkm files")
    p.add_argument("--figure", metavar="PATH", help="render the graph to an image file")

    p = add("paper-check", _cmd_paper_check,
            help="run the full verification suite and print a pass/fail table")
    p.add_argument("--outdir", metavar="DIR",
                   help="write paper_check.csv and figures into DIR")

    return parser


def run(argv=None):
    """Parse and execute; returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except NotGKMConsistentError as exc:
        print("inconsistent: %s" % exc, file=sys.stderr)
        return EXIT_INCONSISTENT
    except (GraphFormatError, ExprSyntaxError, ValueError, KeyError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
