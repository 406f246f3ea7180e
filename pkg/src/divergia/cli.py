"""Command-line front end.

Every command emits a machine-readable document (JSON by default, CSV for
plot-ready tables) with its parameters echoed into the header, so any
number produced here is self-describing.  Exit codes: 0 success, 2 bad
parameters, 1 construction failure (with a structured error document on
stderr).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .dimension import box_dimension, moran_dimension
from .errors import DivergiaError, ParameterError
from .ifs import CantorParams, cantor_nest, uniform_cantor
from .intervals import IntervalUnion
from .jarnik import JarnikParams, LiouvilleParams, jarnik_family, \
    liouville_family
from .maxfam import anydh_family, default_grid, divergence_estimate, \
    max_family_check
from .qam import Exp, Log, Power, comparability, exp_rate_family, \
    power_mean, qa_mean, ratio_report
from .scalars import format_scalar


def _parse_number(text: str, backend: str):
    """Parse a scalar, keeping it exact unless the float backend is forced."""
    if backend == "float":
        return float(Fraction(text))
    try:
        return Fraction(text)
    except ValueError as exc:
        raise ParameterError(f"cannot parse number {text!r}") from exc


def _backend(args) -> str:
    return getattr(args, "backend", None) or \
        os.environ.get("DIVERGIA_BACKEND", "exact")


def _emit(args, document, csv_rows=None, csv_header=None):
    fmt = getattr(args, "format", "json")
    out = getattr(args, "output", None)
    if fmt == "csv" and csv_rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf)
        if csv_header:
            writer.writerow(csv_header)
        writer.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(document, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _as_backend(iu: IntervalUnion, backend: str) -> IntervalUnion:
    if backend != "float" or not iu.exact:
        return iu
    lo, hi = iu.domain
    return IntervalUnion((float(lo), float(hi)),
                         [(float(a), float(b)) for a, b in iu.components],
                         exact=False)


def _set_rows(sets):
    rows = []
    for name, iu in sets:
        for a, b in iu.components:
            rows.append([name, format_scalar(a), format_scalar(b)])
    return rows


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_cantor(args):
    backend = _backend(args)
    theta = _parse_number(args.theta, backend)
    eps = _parse_number(args.eps, backend) if args.eps is not None else None
    params = CantorParams(theta, eps)
    nest = cantor_nest(params)
    builder = (lambda n: uniform_cantor(params, n)) if args.uniform \
        else nest.level
    levels = [(f"level_{n}", _as_backend(builder(n), backend))
              for n in range(args.levels + 1)]
    doc = {
        "command": "cantor", "theta": format_scalar(theta),
        "eps": format_scalar(params.eps), "ratio": format_scalar(params.m),
        "uniform": bool(args.uniform), "backend": backend,
        "levels": {name: iu.to_json() for name, iu in levels},
    }
    _emit(args, doc, csv_rows=_set_rows(levels),
          csv_header=["level", "a", "b"])


def _family_from_tag(tag: str, args, backend: str):
    theta = _parse_number(args.theta, backend) if args.theta else None
    if tag == "liouville":
        return liouville_family(LiouvilleParams(q_max=args.q_max))
    if tag == "jarnik":
        if theta is None:
            raise ParameterError("jarnik family needs --theta")
        return jarnik_family(JarnikParams(theta, q_max=args.q_max))
    if tag == "anydh":
        if theta is None:
            raise ParameterError("anydh family needs --theta")
        return anydh_family(theta,
                            liouville_params=LiouvilleParams(
                                q_max=args.q_max))
    if tag == "cantor-tietze":
        if theta is None:
            raise ParameterError("cantor-tietze family needs --theta")
        from .funcs import tietze_family
        return tietze_family(cantor_nest(CantorParams(theta)),
                             tag=f"cantor-tietze(theta={theta})")
    raise ParameterError(
        f"unknown family tag {tag!r}; choose from cantor-tietze, "
        f"liouville, jarnik, anydh")


def cmd_jarnik(args):
    backend = _backend(args)
    if args.liouville:
        fam = liouville_family(LiouvilleParams(q_max=args.q_max))
    else:
        theta = _parse_number(args.theta, backend)
        fam = jarnik_family(JarnikParams(theta, q_max=args.q_max))
    pw = fam.rule(args.n)
    cuts = default_grid(fam.domain, points=10, q_max=1)
    integrals = [[format_scalar(a), format_scalar(b),
                  float(pw.integral(a, b))]
                 for a, b in zip(cuts, cuts[1:])]
    doc = {
        "command": "jarnik", "family": fam.tag, "n": args.n,
        "knots": pw.to_json()["knots"],
        "subinterval_integrals": integrals,
    }
    _emit(args, doc,
          csv_rows=[[format_scalar(x), format_scalar(y)]
                    for x, y in zip(pw.xs, pw.ys)],
          csv_header=["x", "y"])


def cmd_check(args):
    backend = _backend(args)
    fam = _family_from_tag(args.family, args, backend)
    report = max_family_check(fam, M=args.M, n_max=args.N)
    _emit(args, {"command": "check", **report.to_json()})
    return 0


def cmd_iset(args):
    backend = _backend(args)
    fam = _family_from_tag(args.family, args, backend)
    est = divergence_estimate(fam, M=args.M, N=args.N)
    rows = [[format_scalar(x), float(v), int(f)]
            for x, v, f in zip(est.points, est.values, est.flags)]
    _emit(args, {"command": "iset", **est.to_json()},
          csv_rows=rows, csv_header=["x", "value", "flagged"])


def cmd_anydh(args):
    backend = _backend(args)
    theta = _parse_number(args.theta, backend)
    fam = anydh_family(theta,
                       liouville_params=LiouvilleParams(q_max=args.q_max))
    report = max_family_check(fam, M=args.M, n_max=args.N)
    _emit(args, {"command": "anydh", **report.to_json()})


def cmd_liouville(args):
    args.liouville = True
    cmd_jarnik(args)


def cmd_dim(args):
    if args.moran:
        ratios = [float(Fraction(t)) for t in args.moran.split(",")]
        s = moran_dimension(ratios)
        _emit(args, {"command": "dim", "method": "moran",
                     "ratios": ratios, "dimension": s})
        return
    if not args.input:
        raise ParameterError("dim needs either --moran or --input")
    with open(args.input) as fh:
        A = IntervalUnion.from_json(json.load(fh))
    if args.scales == "auto":
        shortest = min((b - a for a, b in A.components if b > a),
                       default=None)
        finest = float(shortest) if shortest else 1e-4
        scales, d = [], 0.25
        while d >= finest and len(scales) < 12:
            scales.append(d)
            d /= 2
        if len(scales) < 4:
            scales = [2.0 ** -k for k in range(2, 6)]
    else:
        scales = [float(Fraction(t)) for t in args.scales.split(",")]
    shortest = min((float(b - a) for a, b in A.components if b > a),
                   default=0.0)
    warn = None
    if shortest and min(scales) < shortest:
        warn = ("finest scale undercuts the shortest component; counts "
                "saturate below that scale")
    est = box_dimension(A, scales)
    doc = {"command": "dim", "method": "box-counting", **est.to_json()}
    if warn:
        doc["warning"] = warn
    _emit(args, doc,
          csv_rows=[[float(d), n] for d, n in est.counts],
          csv_header=["delta", "count"])


def _parse_generator(text: str):
    kind, _, param = text.partition(":")
    kind = kind.strip().lower()
    if kind == "power":
        return Power(float(Fraction(param)))
    if kind == "log":
        return Log()
    if kind == "exp":
        return Exp(float(Fraction(param)))
    raise ParameterError(
        f"unknown generator {text!r}; use power:P, log, or exp:C")


def cmd_qam_mean(args):
    gen = _parse_generator(args.gen)
    values = [float(Fraction(t)) for t in args.tuple.split(",")]
    doc = {"command": "qam mean", "generator": args.gen, "tuple": values}
    if args.gen.startswith("power:"):
        doc["power_mean"] = power_mean(gen.p, values)
    doc["mean"] = qa_mean(gen, values)
    _emit(args, doc)


def cmd_qam_maximal(args):
    if args.family != "exp:n":
        raise ParameterError(
            f"unsupported family {args.family!r}; only exp:n is built in")
    fam = exp_rate_family()
    lo, hi = fam.domain
    x, y, z = lo, (lo + hi) / 2, hi
    report = ratio_report(fam, x, y, z, args.N)
    doc = {
        "command": "qam maximal", "family": args.family, "N": args.N,
        "probe": [x, y, z],
        "final_quotient": report.quotients[-1][1],
        "tolerance": report.tol,
        "qa_maximal_indicator": report.qa_maximal_indicator,
    }
    _emit(args, doc)


def cmd_qam_compare(args):
    F = _parse_generator(args.first)
    G = _parse_generator(args.second)
    lo, hi = (float(Fraction(t)) for t in args.domain.split(","))
    grid = [lo + (hi - lo) * k / 32 for k in range(33)]
    grid = [g for g in grid if F.in_domain(g) and G.in_domain(g)]
    verdict = comparability(F, G, grid, seed=args.seed)
    _emit(args, {
        "command": "qam compare", "first": args.first, "second": args.second,
        "relation": verdict.relation,
        "mean_checks_agree": verdict.mean_checks_agree,
        "verdict": str(verdict),
    })


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divergia",
        description="Constructions around divergence sets of monotone "
                    "function families and their Hausdorff dimension.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--output", "-o", help="write to file instead of stdout")
        p.add_argument("--backend", choices=["exact", "float"],
                       help="overrides DIVERGIA_BACKEND (default exact)")
        if fmt:
            p.add_argument("--format", choices=["json", "csv"],
                           default="json")

    p = sub.add_parser("cantor", help="levels of the two-map nest")
    p.add_argument("--theta", required=True)
    p.add_argument("--eps")
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--uniform", action="store_true",
                   help="middle-removal variant of the construction")
    common(p)
    p.set_defaults(func=cmd_cantor)

    p = sub.add_parser("jarnik", help="rational-neighborhood family")
    p.add_argument("--theta")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--q-max", type=int, default=100)
    p.add_argument("--liouville", action="store_true",
                   help="use the zero-dimension variant")
    common(p)
    p.set_defaults(func=cmd_jarnik)

    p = sub.add_parser("liouville", help="zero-dimension family")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--q-max", type=int, default=50)
    common(p)
    p.set_defaults(func=cmd_liouville)

    p = sub.add_parser("anydh", help="max-family with prescribed dimension")
    p.add_argument("--theta", required=True)
    p.add_argument("--M", type=float, default=10)
    p.add_argument("--N", type=int, default=30)
    p.add_argument("--q-max", type=int, default=50)
    common(p, fmt=False)
    p.set_defaults(func=cmd_anydh)

    p = sub.add_parser("check", help="max-family surrogate report")
    p.add_argument("--family", required=True,
                   help="cantor-tietze | liouville | jarnik | anydh")
    p.add_argument("--theta")
    p.add_argument("--M", type=float, default=10)
    p.add_argument("--N", type=int, default=30)
    p.add_argument("--q-max", type=int, default=50)
    common(p, fmt=False)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("iset", help="divergence-set estimate on a grid")
    p.add_argument("--family", required=True)
    p.add_argument("--theta")
    p.add_argument("--M", type=float, default=10)
    p.add_argument("--N", type=int, default=30)
    p.add_argument("--q-max", type=int, default=50)
    common(p)
    p.set_defaults(func=cmd_iset)

    p = sub.add_parser("dim", help="dimension of a set")
    p.add_argument("--moran", help="comma-separated contraction ratios")
    p.add_argument("--input", help="interval-union JSON file")
    p.add_argument("--scales", default="auto",
                   help="'auto' or comma-separated deltas")
    common(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("qam", help="quasiarithmetic means")
    qsub = p.add_subparsers(dest="qam_command", required=True)

    q = qsub.add_parser("mean")
    q.add_argument("--gen", required=True, help="power:P | log | exp:C")
    q.add_argument("--tuple", required=True, help="comma-separated values")
    common(q, fmt=False)
    q.set_defaults(func=cmd_qam_mean)

    q = qsub.add_parser("maximal")
    q.add_argument("--family", default="exp:n")
    q.add_argument("--N", type=int, default=50)
    common(q, fmt=False)
    q.set_defaults(func=cmd_qam_maximal)

    q = qsub.add_parser("compare")
    q.add_argument("--first", required=True)
    q.add_argument("--second", required=True)
    q.add_argument("--domain", default="1,2")
    q.add_argument("--seed", type=int, default=0)
    common(q, fmt=False)
    q.set_defaults(func=cmd_qam_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ParameterError as exc:
        sys.stderr.write(json.dumps(
            {"error": "parameter", "message": str(exc)}) + "\n")
        return 2
    except DivergiaError as exc:
        sys.stderr.write(json.dumps(
            {"error": "construction", "message": str(exc)}) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
