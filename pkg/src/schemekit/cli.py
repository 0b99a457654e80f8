"""Command-line interface.

Exit codes: 0 clean run, 1 an ``--expect``-ed property does not hold,
2 input or usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .analysis import classify, is_saturated, saturation_graph, two_valenced_k
from .constructors import affine_scheme, cyclotomic_scheme, group_scheme, orbital_scheme
from .core import indistinguishing_numbers, thin_structure
from .desargues import initial_configurations, is_desarguesian, is_linked
from .errors import SchemeError
from .io import parse_grid, parse_permutations, parse_scheme, write_scheme
from .iso import automorphism_group, schurity, separability_report
from .report import build_report, dumps, saturation_section

EXPECTABLE = ("saturated", "desarguesian", "schurian", "separable", "two-valenced", "pseudocyclic")


class InputFailure(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputFailure(f"cannot read {path}: {exc.strerror}") from None


def _load(path):
    return parse_scheme(_read(path))


def _check_expectations(wanted, facts, out):
    failed = [w for w in wanted or () if not facts.get(w)]
    for w in failed:
        print(f"expectation failed: {w}", file=out)
    return 1 if failed else 0


# --------------------------------------------------------------------------
# subcommands


def cmd_validate(args, out):
    X = _load(args.file)
    print(f"valid association scheme: n={X.n} rank={X.rank}", file=out)
    return 0


def cmd_info(args, out):
    X = _load(args.file)
    prof = classify(X)
    cs = indistinguishing_numbers(X)
    print(f"n\t{X.n}", file=out)
    print(f"rank\t{X.rank}", file=out)
    print(f"sha256\t{X.digest}", file=out)
    print(f"valencies\t{' '.join(str(int(v)) for v in X.valencies)}", file=out)
    print(f"dual\t{' '.join(str(int(v)) for v in X.dual)}", file=out)
    print(f"indistinguishing\t{' '.join(str(int(v)) for v in cs)}", file=out)
    for key, value in prof.as_dict().items():
        if key == "thin_residue":
            value = "not thin" if value is None else value["description"]
        print(f"{key}\t{value}", file=out)
    ts = thin_structure(X, strict=False)
    print(f"thin_radical\t{' '.join(map(str, sorted(ts.thin_radical)))}", file=out)
    return 0


def cmd_tensor(args, out):
    X = _load(args.file)
    c = X.tensor.c
    print("r\ts\tt\tc", file=out)
    for r in range(X.rank):
        for s in range(X.rank):
            for t in range(X.rank):
                if c[r, s, t] or args.all:
                    print(f"{r}\t{s}\t{t}\t{int(c[r, s, t])}", file=out)
    return 0


def cmd_construct(args, out):
    kind = args.kind
    params = args.params
    try:
        if kind == "affine":
            d, q = map(int, params)
            X = affine_scheme(d, q)
        elif kind == "cyclotomic":
            q, m = map(int, params)
            X = cyclotomic_scheme(q, m)
        elif kind == "group":
            (path,) = params
            X = group_scheme(parse_grid(_read(path)))
        else:
            (path,) = params
            X = orbital_scheme(parse_permutations(_read(path)))
    except ValueError as exc:
        if isinstance(exc, SchemeError):
            raise
        raise InputFailure(f"construct {kind}: bad parameters {params}") from None
    out.write(write_scheme(X))
    return 0


def cmd_saturation(args, out):
    X = _load(args.file)
    k = args.k if args.k is not None else two_valenced_k(X)
    if k is None:
        raise InputFailure("scheme is not two-valenced; pass --k")
    sec = saturation_section(X, k)
    G = saturation_graph(X, k)
    print(f"k={k} vertices={sec['vertices']} edges={sec['edges']} loops={sec['loops']}", file=out)
    if sec["saturated"]:
        print("saturated", file=out)
    else:
        print(f"NOT saturated: N({', '.join(map(str, sec['witness']))}) is empty", file=out)
    print(f"bound |S_k| > 4c(k-1): {'holds' if sec['bound_holds'] else 'fails'}", file=out)
    if args.graph:
        for x in G.vertices:
            print(f"{x}: {' '.join(map(str, sorted(G.neighbors(x))))}", file=out)
    return _check_expectations(args.expect, {"saturated": sec["saturated"]}, out)


def cmd_desargues(args, out):
    X = _load(args.file)
    res = is_desarguesian(X)
    if res.desarguesian:
        print("Desarguesian", file=out)
    else:
        f = res.failing
        print(f"NOT Desarguesian: (x,y,z,r,s)=({f.x},{f.y},{f.z},{f.r},{f.s}) is not linked", file=out)
    st = res.stats
    print(f"triples={st['triples']} configurations={st['configurations']} "
          f"loop_condition={st['loop_condition']} perspective_center={st['perspective_center']} "
          f"searched={st['searched_configurations']}", file=out)
    if args.certificates:
        print("x\ty\tz\tr\ts\tq\tu\tv\tw\tt", file=out)
        for cfg in initial_configurations(X, res.k):
            cert = is_linked(X, cfg)
            tail = "unlinked" if cert is None else "\t".join(map(str, (cert.q, cert.u, cert.v, cert.w, cert.t)))
            print("\t".join(map(str, cfg)) + "\t" + tail, file=out)
    return _check_expectations(args.expect, {"desarguesian": res.desarguesian}, out)


def cmd_aut(args, out):
    X = _load(args.file)
    aut = automorphism_group(X, list_elements=False)
    print(f"order {aut.order}", file=out)
    print(f"base {' '.join(map(str, aut.base))}", file=out)
    print(f"orbit sizes {' '.join(map(str, aut.orbit_sizes))}", file=out)
    for g in aut.generators:
        print(" ".join(map(str, g)), file=out)
    return 0


def cmd_schurian(args, out):
    X = _load(args.file)
    rep = schurity(X)
    verdict = "schurian" if rep.schurian else "NOT schurian"
    extra = "" if rep.transitive else " (Aut not transitive)"
    print(f"{verdict}{extra}: |Aut|={rep.aut_order} pair orbits={rep.pair_orbits} rank={rep.rank}", file=out)
    return _check_expectations(args.expect, {"schurian": rep.schurian}, out)


def cmd_separability(args, out):
    X = _load(args.file)
    rep = separability_report(X, seeds=args.seeds)
    verdict = "yes" if rep.auto_separable else "no"
    print(f"algebraically-auto-separable: {verdict} ({rep.realized}/{rep.algebraic_autos} realized)", file=out)
    if rep.two_point_checked:
        tried = sum(r["two_point"]["seeds"] for r in rep.per_phi)
        good = sum(r["two_point"]["succeeded"] for r in rep.per_phi)
        print(f"two-point construction ({rep.seed_mode} seeds): {good}/{tried} succeeded", file=out)
    if args.verbose:
        for row in rep.per_phi:
            print(f"phi={row['phi']} realized={row['realized']}", file=out)
    return _check_expectations(args.expect, {"separable": rep.auto_separable}, out)


def cmd_analyze(args, out):
    X = _load(args.file)
    report = build_report(X, separability=not args.no_separability, seeds=args.seeds, timing=args.timing)
    if args.figures:
        from .plotting import render_figures

        paths = render_figures(X, args.figures, two_valenced_k(X))
        report["figures"] = [p.name for p in paths]
    if args.json:
        out.write(dumps(report))
    else:
        cls = report["classification"]
        print(f"n={X.n} rank={X.rank} sha256={X.digest[:16]}", file=out)
        print(f"valency spectrum {sorted(set(cls['valency_spectrum']))}", file=out)
        for key in ("two_valenced", "quasi_thin", "quasi_thin_condition", "pseudocyclic", "one_p_scheme"):
            print(f"{key}: {cls[key]}", file=out)
        print(f"saturated: {report['saturation'].get('saturated')}", file=out)
        print(f"desarguesian: {report['desargues'].get('desarguesian')}", file=out)
        print(f"schurian: {report['schurity']['schurian']} (|Aut|={report['schurity']['aut_order']})", file=out)
        if "separability" in report:
            print(f"algebraically-auto-separable: {report['separability']['algebraically_auto_separable']}", file=out)
    facts = {
        "saturated": report["saturation"].get("saturated"),
        "desarguesian": report["desargues"].get("desarguesian"),
        "schurian": report["schurity"]["schurian"],
        "separable": report.get("separability", {}).get("algebraically_auto_separable"),
        "two-valenced": report["classification"]["two_valenced"] is not None,
        "pseudocyclic": report["classification"]["pseudocyclic"] is not None,
    }
    return _check_expectations(args.expect, facts, sys.stderr)


# --------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="schemekit", description="Association scheme analysis")
    p.add_argument("--version", action="version", version=f"schemekit {__version__}")
    p.add_argument("--threads", type=int, default=1,
                   help="cap on worker parallelism (all stages currently run sequentially)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, expect=False):
        sp = sub.add_parser(name, help=help_)
        if name != "construct":
            sp.add_argument("file", help="scheme file, or - for standard input")
        if expect:
            sp.add_argument("--expect", action="append", choices=EXPECTABLE, default=[])
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check the scheme axioms")
    add("info", cmd_info, "basic parameters and classification")
    add("tensor", cmd_tensor, "intersection numbers as tab-separated rows").add_argument(
        "--all", action="store_true", help="include zero entries")
    sp = add("construct", cmd_construct, "write a constructed scheme")
    sp.add_argument("kind", choices=("affine", "cyclotomic", "group", "orbital"))
    sp.add_argument("params", nargs="+")
    sp = add("saturation", cmd_saturation, "saturation graph and saturation test", expect=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--graph", action="store_true", help="print adjacency lists")
    sp = add("desargues", cmd_desargues, "Desarguesian test", expect=True)
    sp.add_argument("--certificates", action="store_true")
    add("aut", cmd_aut, "automorphism group")
    add("schurian", cmd_schurian, "schurity check", expect=True)
    sp = add("separability", cmd_separability, "realize algebraic automorphisms", expect=True)
    sp.add_argument("--seeds", choices=("all", "anchored", "none"), default="anchored")
    sp.add_argument("-v", "--verbose", action="store_true")
    sp = add("analyze", cmd_analyze, "full report", expect=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--figures", metavar="DIR", help="write PNG figures to DIR")
    sp.add_argument("--timing", action="store_true", help="add wall-clock timings (breaks byte stability)")
    sp.add_argument("--seeds", choices=("all", "anchored", "none"), default="anchored")
    sp.add_argument("--no-separability", action="store_true")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except (SchemeError, InputFailure) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
