"""Batch command-line front end.

Every subcommand prints one JSON object with stable key order:

    {"input": ..., "result": ..., "certificates": [...],
     "provenance": {"module": ..., "op": ...}}

Rationals are encoded as JSON integers when integral and as "a/b" strings
otherwise; +infinity is the string "+inf".  Exit codes: 0 success, 2
precondition/certificate failure, 1 parse errors.  `batch` reads JSON-lines
argv arrays from stdin and emits one envelope per line.  The environment
variable ULTRAMETRIC_PRECISION overrides the default precision budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import hensel, padic, polygons, polytopes, series, svg, valuations
from .errors import UltrametricError
from .parsing import (
    InputSyntaxError,
    parse_multipoly,
    parse_point,
    parse_rational,
    parse_series_text,
    parse_system,
    parse_univariate,
)
from .valuations import INF, Infinity, Place


def _default_precision() -> int:
    try:
        return int(os.environ.get("ULTRAMETRIC_PRECISION", "10"))
    except ValueError:
        return 10


def enc(x):
    """JSON encoding of exact values."""
    if isinstance(x, Infinity):
        return "+inf"
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return [enc(v) for v in x]
    if isinstance(x, dict):
        return {k: enc(v) for k, v in x.items()}
    if isinstance(x, padic.PadicNumber):
        return _enc_padic(x)
    return x


def _enc_padic(x: padic.PadicNumber):
    if x.is_exact_zero:
        return {"zero": True}
    if x.is_zero_like:
        return {"zero_at_precision": x.val}
    return {
        "valuation": x.val,
        "unit": x.unit,
        "precision": x.prec,
        "repr": f"{x.unit}*{x.p}^{x.val} + O({x.p}^{x.abs_prec})",
    }


def envelope(inputs: dict, result, certificates: list, module: str, op: str) -> dict:
    return {
        "input": enc(inputs),
        "result": enc(result),
        "certificates": enc(certificates),
        "provenance": {"module": module, "op": op},
    }


def _polygon_result(ng: polygons.NewtonPolygon) -> dict:
    return {
        "order": ng.order,
        "vertices": [[m, v] for m, v in ng.vertices],
        "slopes": [s.slope for s in ng.segments],
        "lengths": [s.length for s in ng.segments],
    }


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        super().__init__(*a, **kw)
        # let values like -63/8 pass as arguments, not flags
        import re

        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")

    def error(self, message):
        raise InputSyntaxError(message)


def build_parser() -> argparse.ArgumentParser:
    default_prec = _default_precision()
    top = _Parser(prog="ultrametric", description=__doc__)
    sub = top.add_subparsers(dest="cmd", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        return p

    p = add("vp", help="p-adic valuation of a rational")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--value", required=True)

    p = add("product-formula", help="check the product formula for a rational")
    p.add_argument("--value", required=True)
    p.add_argument("--guard", type=int, default=10**9)

    p = add("padic", help="ring operations and digit expansions in Q_p")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--precision", type=int, default=default_prec)
    p.add_argument("--op", choices=["add", "sub", "mul", "div"])
    p.add_argument("--x", required=True)
    p.add_argument("--y")
    p.add_argument("--digits", type=int)

    p = add("teichmuller", help="Teichmuller representative of a unit residue")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--unit", type=int, required=True)
    p.add_argument("--precision", type=int, default=default_prec)

    p = add("sqrt", help="square root in Q_p, if one exists")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--value", required=True)
    p.add_argument("--precision", type=int, default=default_prec)

    p = add("hensel", help="Newton lift of an approximate root")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--target", type=int, default=default_prec)

    p = add("hensel-system", help="multivariate Newton over Z_p^n")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--polys", required=True, help="semicolon-separated")
    p.add_argument("--start", required=True, help="comma-separated")
    p.add_argument("--target", type=int, default=default_prec)

    p = add("lift-factor", help="lift an approximate coprime factorization")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--target", type=int, default=default_prec)

    p = add("resultant", help="Sylvester resultant at formal degrees")
    p.add_argument("--poly", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--pdeg", type=int, required=True)
    p.add_argument("--qdeg", type=int, required=True)
    p.add_argument("--prime", type=int)
    p.add_argument("--k", type=int, help="reduce mod prime**k")

    p = add("polygon", help="Newton polygon of a polynomial or generator")
    p.add_argument("--prime", type=int)
    p.add_argument("--poly", required=True)
    p.add_argument("--trivial", action="store_true", help="use the trivial place")
    p.add_argument("--certify", action="store_true",
                   help="attach Eisenstein / pure-slope certificates")
    p.add_argument("--format", choices=["json", "tsv"], default="json")

    p = add("slope-factor", help="slope factorization over Q_p")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--target", type=int, default=default_prec)

    p = add("series-norm", help="Gauss norm of a truncated series")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--series", required=True)
    p.add_argument("--radius-exp", default="0")
    p.add_argument("--trunc", type=int)

    p = add("weierstrass", help="Weierstrass preparation of a truncated series")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--series", required=True)
    p.add_argument("--radius-exp", default="0")
    p.add_argument("--trunc", type=int)
    p.add_argument("--budget", type=int, default=series.DEFAULT_WEIERSTRASS_BUDGET)

    p = add("strassmann", help="zero-count bound in the closed ball")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--series", required=True)
    p.add_argument("--radius-exp", default="0")
    p.add_argument("--trunc", type=int)

    p = add("series-polygon", help="polygon of a truncated series")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--series", required=True)
    p.add_argument("--format", choices=["json", "tsv"], default="json")

    p = add("polytope", help="Newton polytope of a bivariate polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--hint", action="store_true",
                   help="attach the Minkowski indecomposability hint")
    p.add_argument("--format", choices=["json", "tsv"], default="json")

    p = add("render", help="render polygon/polytope JSON to SVG")
    p.add_argument("--input", help="JSON file (default: stdin)")
    p.add_argument("--output", help="SVG file (default: stdout)")

    add("batch", help="read JSON-lines argv arrays from stdin")
    return top


def _series_arg(args) -> series.TruncatedSeries:
    coeffs = parse_series_text(args.series, args.prime)
    s = parse_rational(args.radius_exp)
    M = getattr(args, "trunc", None)
    return series.TruncatedSeries.make(args.prime, coeffs, s, M=M)


def dispatch(args) -> dict:
    cmd = args.cmd

    if cmd == "vp":
        a = parse_rational(args.value)
        return envelope(
            {"prime": args.prime, "value": args.value},
            valuations.vp(a, args.prime),
            [],
            "valuations",
            "vp",
        )

    if cmd == "product-formula":
        a = parse_rational(args.value)
        holds, breakdown = valuations.product_formula_check(a, args.guard)
        rows = [
            {"place": "real" if pl.kind == "real" else f"p={pl.p}", "value": v}
            for pl, v in breakdown
        ]
        return envelope(
            {"value": args.value},
            {"holds": holds, "breakdown": rows},
            [],
            "valuations",
            "product_formula_check",
        )

    if cmd == "padic":
        x = padic.PadicNumber.from_rational(parse_rational(args.x), args.prime, args.precision)
        if args.digits is not None:
            return envelope(
                {"prime": args.prime, "x": args.x, "digits": args.digits,
                 "precision": args.precision},
                padic.digits(x, args.digits),
                [],
                "padic",
                "digits",
            )
        if not args.op or args.y is None:
            raise InputSyntaxError("padic needs --op and --y, or --digits")
        y = padic.PadicNumber.from_rational(parse_rational(args.y), args.prime, args.precision)
        return envelope(
            {"prime": args.prime, "op": args.op, "x": args.x, "y": args.y,
             "precision": args.precision},
            padic.padic_ring_op(args.op, x, y),
            [],
            "padic",
            "padic_ring_op",
        )

    if cmd == "teichmuller":
        t = padic.teichmuller(args.unit, args.prime, args.precision)
        return envelope(
            {"prime": args.prime, "unit": args.unit, "precision": args.precision},
            f"{t.residue(args.precision)} mod {args.prime ** args.precision}",
            [{"kind": "root-of-unity", "order": args.prime - 1}],
            "padic",
            "teichmuller",
        )

    if cmd == "sqrt":
        x = padic.PadicNumber.from_rational(
            parse_rational(args.value), args.prime, args.precision
        )
        r = padic.padic_sqrt(x)
        return envelope(
            {"prime": args.prime, "value": args.value, "precision": args.precision},
            "no-root" if r is None else r,
            [],
            "padic",
            "padic_sqrt",
        )

    if cmd == "hensel":
        coeffs = parse_univariate(args.poly)
        phi = hensel.PadicPolynomial.make(args.prime, coeffs)
        start = padic.PadicNumber.from_rational(
            parse_rational(args.start), args.prime, max(1, args.target)
        )
        root, iters = hensel.newton_lift(phi, start, args.target)
        return envelope(
            {"prime": args.prime, "poly": args.poly, "start": args.start,
             "target": args.target},
            root,
            [{"kind": "quadratic-convergence", "iterations": iters}],
            "hensel",
            "newton_lift",
        )

    if cmd == "hensel-system":
        systems, variables = parse_system(args.polys)
        sysm = hensel.MultiPadicSystem.make(args.prime, systems)
        start = parse_point(args.start)
        if len(start) != sysm.n:
            raise InputSyntaxError(
                f"start point has {len(start)} coordinates for {sysm.n} variables"
            )
        root = hensel.newton_system(sysm, start, args.target)
        return envelope(
            {"prime": args.prime, "polys": args.polys, "variables": variables,
             "start": args.start, "target": args.target},
            {"point": list(root), "modulus": f"{args.prime}^{args.target}"},
            [],
            "hensel",
            "newton_system",
        )

    if cmd == "lift-factor":
        phi = hensel.PadicPolynomial.make(args.prime, parse_univariate(args.poly))
        psi0 = hensel.PadicPolynomial.make(args.prime, parse_univariate(args.psi))
        eta0 = hensel.PadicPolynomial.make(args.prime, parse_univariate(args.eta))
        psi, eta = hensel.lift_factorization(phi, psi0, eta0, args.target)
        return envelope(
            {"prime": args.prime, "poly": args.poly, "psi": args.psi,
             "eta": args.eta, "target": args.target},
            {"psi": list(psi.coeffs), "eta": list(eta.coeffs),
             "modulus": f"{args.prime}^{args.target}"},
            [],
            "hensel",
            "lift_factorization",
        )

    if cmd == "resultant":
        P = parse_univariate(args.poly)
        Q = parse_univariate(args.q)
        from . import resultants

        if args.prime is not None and args.k is not None:
            den = max(c.denominator for c in P + Q)
            if den != 1:
                raise InputSyntaxError("modular resultants need integer coefficients")
            value = resultants.resultant_mod(
                [int(c) for c in P], [int(c) for c in Q],
                args.pdeg, args.qdeg, args.prime, args.k,
            )
            result = {"value": value, "modulus": f"{args.prime}^{args.k}"}
        else:
            result = resultants.resultant(P, Q, args.pdeg, args.qdeg)
        return envelope(
            {"poly": args.poly, "q": args.q, "pdeg": args.pdeg, "qdeg": args.qdeg},
            result,
            [],
            "resultants",
            "resultant",
        )

    if cmd == "polygon":
        if args.trivial:
            place = Place.trivial()
        else:
            if args.prime is None:
                raise InputSyntaxError("polygon needs --prime or --trivial")
            place = Place.padic(args.prime)
        coeffs = parse_series_text(args.poly, args.prime or 2)
        phi = polygons.ValuedPoly.make(coeffs, place)
        ng = polygons.polygon(phi)
        certs = []
        if args.certify:
            if phi.is_monic() and phi.coeffs[0] != 0:
                cert = polygons.pure_slope_irreducible(phi)
                certs.append(
                    {"kind": "pure-slope", "irreducible": cert.irreducible,
                     "r": cert.r, "d": cert.d, "reason": cert.reason}
                )
                certs.append({"kind": "eisenstein",
                              "satisfied": polygons.eisenstein_check(phi)})
        return envelope(
            {"prime": args.prime, "poly": args.poly,
             "place": "trivial" if args.trivial else f"p={args.prime}"},
            _polygon_result(ng),
            certs,
            "polygons",
            "polygon",
        )

    if cmd == "slope-factor":
        phi = polygons.ValuedPoly.make(
            parse_univariate(args.poly), Place.padic(args.prime)
        )
        factors = polygons.slope_factorization(phi, args.target)
        rows = [
            {"coeffs": list(f.coeffs), "slope": f.slope, "degree": f.degree}
            for f in factors
        ]
        certs = [
            {"kind": "pure-slope-factor", "slope": f.slope, "degree": f.degree}
            for f in factors
        ]
        return envelope(
            {"prime": args.prime, "poly": args.poly, "target": args.target},
            {"factors": rows, "modulus": f"{args.prime}^{args.target}"},
            certs,
            "polygons",
            "slope_factorization",
        )

    if cmd == "series-norm":
        phi = _series_arg(args)
        w, n = series.gauss_norm_v(phi)
        return envelope(
            {"prime": args.prime, "series": args.series, "radius_exp": args.radius_exp},
            {"w": w, "argmin_last": n},
            [],
            "series",
            "gauss_norm_v",
        )

    if cmd == "weierstrass":
        phi = _series_arg(args)
        P, unit = series.weierstrass_prepare(phi, args.budget)
        return envelope(
            {"prime": args.prime, "series": args.series,
             "radius_exp": args.radius_exp, "budget": args.budget},
            {"P": list(P), "unit": list(unit.coeffs), "degree": len(P) - 1},
            [{"kind": "unit-cofactor", "is_unit": series.is_unit(unit)}],
            "series",
            "weierstrass_prepare",
        )

    if cmd == "strassmann":
        phi = _series_arg(args)
        return envelope(
            {"prime": args.prime, "series": args.series, "radius_exp": args.radius_exp},
            series.strassmann_bound(phi),
            [],
            "series",
            "strassmann_bound",
        )

    if cmd == "series-polygon":
        args.radius_exp = "0"
        args.trunc = None
        phi = _series_arg(args)
        ng = series.series_polygon(phi)
        return envelope(
            {"prime": args.prime, "series": args.series},
            _polygon_result(ng),
            [],
            "series",
            "series_polygon",
        )

    if cmd == "polytope":
        terms, variables = parse_multipoly(args.poly)
        if len(variables) != 2:
            raise InputSyntaxError(f"polytope needs two variables, got {variables}")
        phi = polytopes.MultiPoly.make(2, terms)
        hull = polytopes.polytope2(phi)
        certs = []
        if args.hint:
            hint = polytopes.indecomposable_hint(hull)
            certs.append({"kind": "minkowski-decomposition", "hint": hint.kind})
        return envelope(
            {"poly": args.poly, "variables": variables},
            {"vertices": [list(v) for v in hull.vertices]},
            certs,
            "polytopes",
            "polytope2",
        )

    raise InputSyntaxError(f"unknown command {cmd!r}")


def _to_tsv(env: dict) -> str:
    result = env["result"]
    lines = []
    if "vertices" in result:
        for v in result["vertices"]:
            lines.append("vertex\t" + "\t".join(str(x) for x in v))
    for key in ("slopes", "lengths"):
        if key in result:
            lines.append(key[:-1] + "s\t" + "\t".join(str(x) for x in result[key]))
    if not lines:
        lines = [f"{k}\t{v}" for k, v in result.items()] if isinstance(result, dict) else [str(result)]
    return "\n".join(lines) + "\n"


def _run_render(args, out) -> int:
    raw = sys.stdin.read() if not args.input else open(args.input).read()
    doc = json.loads(raw)
    result = doc.get("result", doc)
    if "slopes" in result:
        vertices = [(m, Fraction(str(v))) for m, v in result["vertices"]]
        slopes = [Fraction(str(s)) for s in result["slopes"]]
        content = svg.render_polygon_svg(vertices, slopes)
    elif "vertices" in result:
        content = svg.render_polytope_svg([tuple(v) for v in result["vertices"]])
    else:
        raise InputSyntaxError("input JSON is neither a polygon nor a polytope")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(content)
        print(json.dumps({"written": args.output, "bytes": len(content)}), file=out)
    else:
        out.write(content)
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InputSyntaxError as e:
        print(f"ultrametric: parse error: {e}", file=sys.stderr)
        return 1

    if args.cmd == "batch":
        worst = 0
        for line in sys.stdin:
            line = line.strip()
            if not line:
                continue
            try:
                sub_argv = json.loads(line)
                sub_args = parser.parse_args([str(a) for a in sub_argv])
                env = dispatch(sub_args)
                print(json.dumps(env), file=out)
            except (InputSyntaxError, json.JSONDecodeError, ValueError) as e:
                print(json.dumps({"error": {"code": "parse-error", "message": str(e)}}), file=out)
                worst = max(worst, 1)
            except UltrametricError as e:
                print(json.dumps({"error": {"code": e.code, "message": str(e)}}), file=out)
                worst = max(worst, 2) if worst != 1 else worst
        return worst

    try:
        if args.cmd == "render":
            return _run_render(args, out)
        env = dispatch(args)
    except InputSyntaxError as e:
        print(f"ultrametric: parse error: {e}", file=sys.stderr)
        return 1
    except UltrametricError as e:
        print(json.dumps({"error": {"code": e.code, "message": str(e)}}), file=out)
        return 2
    fmt = getattr(args, "format", "json")
    if fmt == "tsv":
        out.write(_to_tsv(env))
    else:
        print(json.dumps(env), file=out)
    return 0


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
