"""Command line front end.

Every subcommand prints one JSON report (sorted keys, schema version
included) to standard output. Exit status: 0 on success, 1 when the
computation raised a domain error (the report is then the structured
error), 2 on a usage error. ``--out`` additionally writes the time series
of ``prox``/``lift`` and the shell counts of ``search`` as CSV, and the
JSON report for the other subcommands.
"""
import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from importlib import resources

from . import __version__
from .binaryform import fiber_shape, git_classify, multiplicity_partition, parse_form
from .dualgeom import (ImplicitCurve, LineCoords, ParametricCurve, dual_form,
                       dual_membership, dual_parametrization, high_tangency_scan,
                       implicitize, line_section, parse_curve, smoothly_branched_check)
from .errors import DualscopeError
from .hypcheck import check_hyperbolicity, genus_of
from .intsearch import SearchSpec, s_unit_search
from .polycore import ExactPoly, parse_poly, squarefree_decompose
from .proxlift import (FlatTorus, MarkedConfig, cross_ratio, degenerating_path, lift_path,
                       prox_limit_experiment, prox_p1_detail, prox_torus, roots_numeric,
                       verify_lift)

__all__ = ["dispatch", "main", "build_parser", "load_schema", "SCHEMA_VERSION", "DISPATCH",
           "COMMANDS"]

SCHEMA_VERSION = "1.0"

# which library operations each subcommand reaches
DISPATCH = {
    "dual": ["parse_poly", "dual_implicit", "dual_parametrization", "implicitize", "resultant"],
    "section": ["line_section", "dual_membership", "roots_numeric", "multiplicity_partition",
                "git_classify", "fiber_shape"],
    "stability": ["parse_poly", "multiplicity_partition", "git_classify", "fiber_shape",
                  "squarefree_decompose"],
    "scan": ["high_tangency_scan", "smoothly_branched_check"],
    "prox": ["cross_ratio", "prox_p1", "prox_torus", "degenerating_path", "lift_path",
             "prox_limit_experiment"],
    "lift": ["degenerating_path", "lift_path"],
    "check": ["genus_of", "check_hyperbolicity"],
    "search": ["s_unit_search"],
}


def load_schema(name):
    """The shipped JSON schema for a subcommand report (or ``"error"``)."""
    text = resources.files("dualscope").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _curve_flags(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--implicit", metavar="F", help='ternary form, e.g. "X^3+Y^3+Z^3"')
    g.add_argument("--parametric", metavar="x,y,z", help='components in t, e.g. "t^2,t,1"')


def _common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="PATH")


def build_parser():
    ap = _Parser(prog="dualscope", description="Dual plane curves, line sections and "
                 "integral-point diagnostics.")
    ap.add_argument("--version", action="version", version=f"dualscope {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dual", help="implicit equation of the dual curve")
    _curve_flags(p)
    _common(p)

    p = sub.add_parser("section", help="the binary form cut out by a line")
    _curve_flags(p)
    p.add_argument("--line", required=True, metavar="U,V,W")
    p.add_argument("--tol", type=float, default=1e-9, help="root accuracy")
    p.add_argument("--with-dual", action="store_true",
                   help="also evaluate the dual form at the line")
    _common(p)

    p = sub.add_parser("stability", help="multiplicities and GIT class of a binary form")
    p.add_argument("--form", required=True)
    p.add_argument("--degree", type=int)
    _common(p)

    p = sub.add_parser("scan", help="lines of high contact on a parameterised curve")
    p.add_argument("--parametric", required=True, metavar="x,y,z")
    p.add_argument("--k", type=int, required=True)
    _common(p)

    p = sub.add_parser("prox", help="proximity of a point configuration or along a path")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--points", metavar="Z1,Z2,...",
                     help="complex numbers or inf, comma separated")
    src.add_argument("--parametric", metavar="x,y,z")
    p.add_argument("--torus", metavar="W1,W2", help="lattice periods; points then live on C/L")
    p.add_argument("--line", metavar="U,V,W", help="boundary line on the dual curve")
    p.add_argument("--to", metavar="U,V,W", help="preferred far end of the path")
    p.add_argument("--steps", type=int, default=120)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--epsilon", type=float, default=1e-3)
    _common(p)

    p = sub.add_parser("lift", help="track the section roots along a degenerating path")
    _curve_flags(p)
    p.add_argument("--line", required=True, metavar="U,V,W")
    p.add_argument("--to", metavar="U,V,W")
    p.add_argument("--steps", type=int, default=120)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--tracks", action="store_true", help="include the root tracks")
    _common(p)

    p = sub.add_parser("check", help="which hyperbolicity criterion applies")
    _curve_flags(p)
    _common(p)

    p = sub.add_parser("search", help="S-unit points of bounded height off a form D")
    p.add_argument("--form", required=True, metavar="D")
    p.add_argument("--primes", default="", metavar="P1,P2,...")
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--restrict-line", metavar="U,V,W")
    p.add_argument("--threads", type=int, help="worker cap (DUALSCOPE_THREADS also caps)")
    _common(p)
    return ap


# --------------------------------------------------------------------------
# helpers

def _json(obj):
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    if hasattr(o, "to_dict"):
        return o.to_dict()
    if hasattr(o, "tolist"):
        return o.tolist()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"not serialisable: {type(o).__name__}")


def _int_list(text, what):
    try:
        return [int(x) for x in text.replace(":", ",").strip("[]() ").split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma separated integers, got {text!r}")


def _line(text, flag="--line"):
    vals = _int_list(text, flag)
    if len(vals) != 3:
        raise UsageError(f"{flag}: expected three integers U,V,W, got {text!r}")
    return LineCoords(vals)


def _curve(args):
    curve = parse_curve(args.implicit, getattr(args, "parametric", None))
    if isinstance(curve, ImplicitCurve):
        curve.smoothness(seed=args.seed)
    return curve


def _points(text):
    out = []
    for tok in text.split(","):
        tok = tok.strip().replace(" ", "")
        if tok.lower() in ("inf", "oo", "infinity"):
            out.append(None)
            continue
        try:
            out.append(complex(tok.replace("i", "j")))
        except ValueError:
            raise UsageError(f"--points: cannot read {tok!r} as a complex number")
    return out


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --------------------------------------------------------------------------
# subcommands; each returns (report, csv text or None)

def cmd_dual(args):
    curve = _curve(args)
    rep = {"input": curve.to_dict(), "seed": args.seed}
    if isinstance(curve, ParametricCurve):
        D = dual_parametrization(curve)
        G, mdeg = implicitize(D)
        curve._cache["dual"] = G
        rep["dual_parametrization"] = D.to_dict()["components"]
        rep["map_degree"] = mdeg
    else:
        G = dual_form(curve)
        rep["smoothness"] = curve.smoothness().to_dict()
    rep.update({"dual": str(G), "degree": G.degree,
                "route": G.info.get("route"), "chart_checks": G.info.get("chart_checks", [])})
    return rep, None


def cmd_section(args):
    curve = _curve(args)
    L = _line(args.line)
    sec = line_section(curve, L)
    shape = fiber_shape(sec)
    cfg = roots_numeric(sec, target_accuracy=args.tol, seed=args.seed)
    rep = {"input": curve.to_dict(), "line": L.to_list(), "section": str(sec),
           "degree": sec.degree, "partition": multiplicity_partition(sec).as_list(),
           "tangent": dual_membership(curve, L), "fiber_shape": shape.to_dict(),
           "roots": cfg.to_json(), "seed": args.seed}
    rep["class"] = git_classify(sec) if sec.degree >= 3 else None
    if args.with_dual:
        G = dual_form(curve)
        rep["dual_value"] = str(G.evaluate(L.to_list()))
    return rep, None


def cmd_stability(args):
    f = parse_form(args.form, args.degree)
    part = multiplicity_partition(f)
    used = parse_poly(args.form).used_vars()
    var = sorted(used)[0] if used else "u"
    # the affine part carries every root except [1:0]
    dec = squarefree_decompose(ExactPoly.from_univariate(f.affine(), var), var)
    sqf = {"content": str(dec.content), "var": var,
           "parts": [{"factor": str(g), "multiplicity": m} for g, m in dec.parts]}
    rep = {"form": str(f), "degree": f.degree, "partition": part.as_list(),
           "fiber_shape": fiber_shape(f).to_dict(), "squarefree": sqf,
           "multiplicity_at_infinity": f.multiplicity_at_infinity()}
    rep["class"] = git_classify(f) if f.degree >= 3 else None
    return rep, None


def cmd_scan(args):
    P = ParametricCurve.parse(args.parametric)
    scan = high_tangency_scan(P, args.k)
    branch = smoothly_branched_check(P)
    return {"input": P.to_dict(), "scan": scan.to_dict(), "branching": branch.to_dict()}, None


def cmd_prox(args):
    if args.points is not None:
        if args.line or args.to:
            raise UsageError("--line/--to only apply with --parametric")
        pts = _points(args.points)
        if args.torus:
            periods = _points(args.torus)
            if len(periods) != 2 or None in periods or None in pts:
                raise UsageError("--torus needs two finite periods and finite points")
            T = FlatTorus(*periods)
            val = prox_torus(T, pts)
            return {"model": "torus", "prox": val, "n": len(pts),
                    "periods": [[T.w1.real, T.w1.imag], [T.w2.real, T.w2.imag]]}, None
        cfg = MarkedConfig.of(pts)
        rep = {"model": "sphere", "n": len(pts), "points": cfg.to_json()}
        if len(pts) == 4:
            cr = cross_ratio(*cfg.points)
            rep["cross_ratio"] = [cr.real + 0.0, cr.imag + 0.0]     # no -0.0
        val, diag = prox_p1_detail(cfg)
        rep.update({"prox": val, "diagonal": diag})
        return rep, None
    if not args.line:
        raise UsageError("--parametric needs --line (a boundary line on the dual)")
    if args.torus:
        raise UsageError("--torus only applies with --points")
    P = ParametricCurve.parse(args.parametric)
    L0 = _line(args.line)
    L1 = _line(args.to, "--to") if args.to else None
    path = degenerating_path(P, L0, seed=args.seed, L1=L1)
    series = prox_limit_experiment(P, path, steps=args.steps, tol=args.tol,
                                   epsilon=args.epsilon, seed=args.seed)
    rep = {"model": "path", "input": P.to_dict(), "path": path.to_dict(),
           "lift": series.path.to_dict(), "experiment": series.to_dict(),
           "series": [{"t": t, "prox": v, "max_radius": r}
                      for t, v, r in zip(series.times, series.prox, series.max_radius)],
           "seed": args.seed}
    return rep, series.to_csv()


def cmd_lift(args):
    curve = _curve(args)
    L0 = _line(args.line)
    L1 = _line(args.to, "--to") if args.to else None
    path = degenerating_path(curve, L0, seed=args.seed, L1=L1)
    lift = lift_path(curve, path, steps=args.steps, tol=args.tol, seed=args.seed)
    rep = {"input": curve.to_dict(), "path": path.to_dict(),
           "lift": lift.to_dict(include_tracks=args.tracks),
           "verify_max_chordal": verify_lift(lift, tol=args.tol), "seed": args.seed}
    vals = lift.values()
    rows = []
    for t, row in zip(lift.times, vals):
        for i, z in enumerate(row):
            rows.append([repr(float(t)), i, repr(float(z.real)), repr(float(z.imag))])
    return rep, _csv(["t", "track", "re", "im"], rows)


def cmd_check(args):
    curve = _curve(args)
    v = check_hyperbolicity(curve)
    return {"input": curve.to_dict(), "genus": genus_of(curve), "verdict": v.to_dict(),
            "seed": args.seed}, None


def cmd_search(args):
    primes = _int_list(args.primes, "--primes") if args.primes else []
    line = None
    if args.restrict_line:
        line = _int_list(args.restrict_line, "--restrict-line")
        if len(line) != 3:
            raise UsageError("--restrict-line: expected three integers U,V,W")
    spec = SearchSpec(args.form, primes, args.height, line)
    rep = s_unit_search(spec, workers=args.threads)
    return rep.to_dict(), rep.shells_csv()


COMMANDS = {"dual": cmd_dual, "section": cmd_section, "stability": cmd_stability,
            "scan": cmd_scan, "prox": cmd_prox, "lift": cmd_lift, "check": cmd_check,
            "search": cmd_search}


def _reject_unknown(parser, argv):
    """Name an unknown ``--flag`` before argparse complains about anything
    else (such as a missing required flag)."""
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    cmd = next((a for a in argv if not a.startswith("-")), None)
    if cmd not in sub.choices:
        return
    known = set(sub.choices[cmd]._option_string_actions)
    bad = [a.split("=", 1)[0] for a in argv
           if a.startswith("--") and a.split("=", 1)[0] not in known]
    if bad:
        raise UsageError(f"dualscope {cmd}: unrecognized arguments: {' '.join(bad)}")


def dispatch(argv, stdout=None, stderr=None):
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        parser = build_parser()
        _reject_unknown(parser, argv)
        args = parser.parse_args(argv)
        report, table = COMMANDS[args.command](args)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 2
    except DualscopeError as exc:
        stdout.write(_json({"schema_version": SCHEMA_VERSION, "status": "error",
                            "error": exc.to_dict()}))
        return 1
    except SystemExit as exc:       # --help and --version
        return int(exc.code or 0)
    report = dict(report, schema_version=SCHEMA_VERSION, command=args.command, status="ok")
    text = _json(report)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(table if table is not None else text)
        except OSError as exc:
            stderr.write(f"usage error: --out: {exc}\n")
            return 2
    stdout.write(text)
    return 0


def main(argv=None):
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())

