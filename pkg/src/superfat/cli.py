"""Command-line interface.

Exit status: 0 on success, 2 when a self-checking command finds a mismatch,
1 on usage, parse or input errors.  ``--json`` prints a stable report; the
same invocation with the same seed prints byte-identical output.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import apolarity, experiments, secants, zerodim
from .fields import FieldError, field_from_tag
from .grobner import IdealError, minimal_generator_degrees, quotient_dimension
from .ioparse import (
    ParseError, dumps_report, format_polynomial, jsonable, make_report, make_ring,
    parse_ideal, parse_point, parse_polynomial,
)
from .polyring import GradingError, UnknownVariable

OK, USAGE, MISMATCH = 0, 1, 2
DEFAULT_TRIALS = 3


class Mismatch(Exception):
    """Raised internally to turn a failed self-check into exit status 2."""


# ---------------------------------------------------------------------------
# helpers

def _trials(args) -> int:
    if args.trials is not None:
        return args.trials
    env = os.environ.get("SUPERFAT_TRIALS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise argparse.ArgumentTypeError(f"SUPERFAT_TRIALS must be an integer, got {env!r}") from None
        if n < 1:
            raise argparse.ArgumentTypeError("SUPERFAT_TRIALS must be positive")
        return n
    return DEFAULT_TRIALS


def _field(args):
    return field_from_tag(args.field)


def _ring(args, default_vars: str):
    return make_ring(args.vars or default_vars, args.field)


def _ideal(args, default_vars="x,y"):
    ring = _ring(args, default_vars)
    return parse_ideal(args.ideal, ring)


def _int_range(text: str) -> list:
    """"5" or "1..30" (inclusive)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}") from None


def _degree(text: str):
    parts = [p.strip() for p in text.split(",")]
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree {text!r}") from None
    if len(vals) == 1:
        return vals[0]
    if len(vals) == 2:
        return tuple(vals)
    raise argparse.ArgumentTypeError("degree is an integer or a bidegree d1,d2")


def _emit(args, command: str, inputs: dict, result: dict, anchor: str, seed=None):
    if args.json:
        print(dumps_report(make_report(command, inputs, args.field, seed, result, anchor)))
        return
    print(f"# {command}: {anchor}")
    if seed is not None:
        print(f"seed: {seed}")
    for k, v in jsonable(result).items():
        if isinstance(v, list) and v and all(isinstance(x, str) for x in v):
            v = "[" + ", ".join(v) + "]"
        print(f"{k}: {v}")


def _verify(ok: bool):
    if not ok:
        raise Mismatch()


# ---------------------------------------------------------------------------
# scheme commands

def cmd_check(args):
    I = _ideal(args)
    rep = zerodim.symmetry_degree(I)
    result = {"symmetric": rep.symmetric, "m": rep.m, "length": rep.length, "superfat": rep.superfat,
              "min_order": rep.min_order, "contains_fat_point": rep.contains_fat_point,
              "minimal_generator_degrees": minimal_generator_degrees(I) if I.is_homogeneous() else None}
    if rep.witness:
        result["witness"] = rep.witness
    _emit(args, "check", {"vars": args.vars or "x,y", "ideal": args.ideal}, result,
          "m-symmetric criterion; superfat iff length m^n")


def cmd_length(args):
    I = _ideal(args)
    result = {"quotient_dimension": quotient_dimension(I).dimension}
    try:
        result["length_at_origin"] = zerodim.length_at_origin(I)
    except zerodim.SchemeError as exc:
        result["length_at_origin"] = None
        result["note"] = str(exc)
    if args.direction:
        a = parse_point(args.direction, I.ring.field)
        result["direction"] = list(a)
        result["line_length"] = zerodim.line_intersection_length(I, a)
    _emit(args, "length", {"vars": args.vars or "x,y", "ideal": args.ideal, "direction": args.direction},
          result, "length of a zero-dimensional scheme; restriction to lines")


def cmd_hull(args):
    I = _ideal(args)
    rep = zerodim.symmetry_degree(I)
    hull = zerodim.superfat_hull(I, args.seed)
    check = zerodim.symmetry_degree(hull)
    n = I.ring.nvars
    ok = hull.issubset(I) and check.symmetric and check.m == rep.m and check.length == rep.m ** n
    _emit(args, "hull", {"vars": args.vars or "x,y", "ideal": args.ideal},
          {"hull": hull, "m": check.m, "length": check.length, "contained_in_input": hull.issubset(I),
           "ok": ok}, "every m-symmetric scheme lies in an m-superfat one", args.seed)
    _verify(ok)


def cmd_square_form(args):
    I = _ideal(args)
    res = zerodim.two_superfat_square_form(I)
    if isinstance(res, zerodim.ExtensionRequired):
        result = {"extension_required": True, "pencil": list(res.pencil),
                  "quadratic": list(res.coefficients), "discriminant": res.discriminant}
    else:
        result = {"extension_required": False, "l1": res.l1, "l2": res.l2,
                  "certified": res.ideal() == I}
    _emit(args, "square-form", {"vars": args.vars or "x,y", "ideal": args.ideal}, result,
          "a 2-superfat point is a 2-square (l1^2, l2^2)")


def cmd_hypercube(args):
    default = ",".join(f"x{i}" for i in range(1, len(args.forms.strip("[]").split(",")) + 1))
    ring = _ring(args, default)
    forms = list(parse_ideal(args.forms, ring).gens)
    I = zerodim.hypercube_ideal(forms, args.m)
    rep = zerodim.symmetry_degree(I)
    expected = args.m ** ring.nvars
    ok = rep.length == expected and rep.superfat
    _emit(args, "hypercube", {"forms": args.forms, "m": args.m},
          {"ideal": I, "length": rep.length, "expected": expected, "superfat": rep.superfat, "ok": ok},
          "the m-hypercube is m-superfat of length m^n")
    _verify(ok)


def cmd_smooth_family(args):
    res = zerodim.smoothing_check(args.m, args.n, args.t, _field(args))
    _emit(args, "smooth-family", {"m": args.m, "n": args.n, "t": args.t}, res,
          "hypercubes are limits of m^n reduced points")
    _verify(res["ok"])


def cmd_union(args):
    res = zerodim.union_of_squares_check(args.m, _field(args))
    _emit(args, "union", {"m": args.m}, res, "2m-1 suitable m-squares cut out the fat point (2m-1)P")
    _verify(res["ok"])


def cmd_perp_union(args):
    res = zerodim.perpendicular_union_check(_field(args))
    _emit(args, "perp-union", {}, res, "two perpendicular 2-squares meet in (x^2+y^2, x^3, x^2 y)")
    _verify(res["ok"])


def cmd_binomial(args):
    rows = [(m, i, zerodim.binomial_identity(m, i)) for m in _int_range(args.m) for i in _int_range(args.i)]
    bad = [(m, i, v) for m, i, v in rows if v]
    _emit(args, "binomial", {"m": args.m, "i": args.i},
          {"checked": len(rows), "nonzero": bad, "ok": not bad},
          "alternating binomial sum vanishes (union of squares lemma)")
    _verify(not bad)


# ---------------------------------------------------------------------------
# apolarity commands

def cmd_perp(args):
    I = _ideal(args, "x0,x1,x2")
    P = apolarity.perp_space(I, args.degree, args.convention)
    _emit(args, "perp", {"vars": args.vars or "x0,x1,x2", "ideal": args.ideal, "degree": args.degree},
          {"dim": P.dim, "basis": P.basis}, "inverse system of a scheme spans its linear span")


def cmd_catalecticant(args):
    ring = _ring(args, "x0,x1,x2")
    F = parse_polynomial(args.form, ring)
    C = apolarity.catalecticant(F, args.split)
    _emit(args, "catalecticant", {"vars": args.vars or "x0,x1,x2", "form": args.form, "split": args.split},
          {"rows": [format_polynomial(ring.monomial(e)) for e in C.rows],
           "cols": [format_polynomial(ring.monomial(e)) for e in C.cols],
           "matrix": [list(r) for r in C.matrix.data], "rank": C.rank(),
           "nonzero": sorted(C.nonzero_positions())},
          "catalecticant of a form on the second osculating variety")


def cmd_member(args):
    I = _ideal(args, "x0,x1,x2")
    F = parse_polynomial(args.form, I.ring)
    P = apolarity.perp_space(I, args.degree)
    _emit(args, "member", {"vars": args.vars or "x0,x1,x2", "ideal": args.ideal, "form": args.form,
                           "degree": args.degree},
          {"member": apolarity.span_membership(F, P), "perp_dim": P.dim},
          "a form lies in the span of a scheme iff it is apolar to its ideal")


def cmd_tau2_normal(args):
    ring = _ring(args, "x0,x1,x2")
    F = parse_polynomial(args.form, ring)
    ell = parse_polynomial(args.ell, ring)
    G = parse_polynomial(args.conic, ring)
    T = apolarity.tau2_normal_form(F, ell, G)
    result = {"case": T.case, "ell": T.ell, "factors": list(T.factors), "restriction": T.restriction}
    if T.square_ideal is not None:
        d = ring.degree_of(next(iter(F.terms)))
        result["square_ideal"] = T.square_ideal
        result["in_square_span"] = apolarity.span_membership(F, apolarity.perp_space(T.square_ideal, d))
    if T.discriminant is not None:
        result["discriminant"] = T.discriminant
    _emit(args, "tau2-normal", {"form": args.form, "ell": args.ell, "conic": args.conic}, result,
          "normal forms on the second osculating variety of V_d")


def cmd_qq_monomial(args):
    ring = _ring(args, "x0,x1,x2")
    a = parse_point(args.point, ring.field)
    if len(a) != 4:
        raise argparse.ArgumentTypeError("--point needs four coordinates a0,a1,a2,a3")
    ells = list(parse_ideal(args.ells, ring).gens) if args.ells else [ring.var(v) for v in
                                                                       (ring.variables[2], ring.variables[0],
                                                                        ring.variables[1])]
    Q = apolarity.qq_monomialize(a, ells, args.d)
    _emit(args, "qq-monomial", {"point": args.point, "d": args.d},
          {"case": Q.case, "form": Q.form, "substitution": list(Q.substitution), "scalar": Q.scalar,
           "factors": list(Q.factors), "verified": Q.verified, "in_tangent_plane": Q.in_tangent_plane},
          "points of the quadric in a 2-square span are l0^(d-2) l1 l2")
    _verify(Q.verified)


# ---------------------------------------------------------------------------
# secant commands

def cmd_secant(args):
    field = _field(args)
    pm = secants.build(args.variety, args.d, field)
    r = secants.secant_dimension(pm, args.s, args.seed, _trials(args))
    known = experiments.KNOWN_SECANTS.get((args.variety, args.s))
    expected = known(args.d) if known else None
    ok = r.agree and (expected is None or r.dim == expected)
    _emit(args, "secant", {"variety": args.variety, "d": args.d, "s": args.s},
          {"dim": r.dim, "trial_dims": list(r.trial_dims), "agreeing": r.agreeing, "ambient": r.ambient,
           "expected_generic": r.expected, "reference_value": expected, "ok": ok},
          "Terracini dimension of secant varieties", args.seed)
    _verify(ok)


def cmd_fill(args):
    r = secants.fill_degree_check(args.d, args.seed, _trials(args), _field(args))
    _emit(args, "fill", {"d": args.d}, r, "least s with sigma_s(tau2(V_d)) filling the ambient space", args.seed)
    _verify(r.verified)


def cmd_quadric_check(args):
    res = secants.quadric_incidence_check(args.d, args.kind, args.seed, field=_field(args))
    _emit(args, "quadric-check", {"d": args.d, "kind": args.kind}, res,
          "the span of a 2-square meets the variety in a rank 4 quadric", args.seed)
    _verify(res["ok"])


# ---------------------------------------------------------------------------
# experiments

def cmd_hf_squares(args):
    ts = range(0, args.t_max + 1) if args.t_max is not None else None
    prof = experiments.generic_square_hilbert(args.s, ts, args.seed)
    _emit(args, "hf-squares", {"s": args.s, "t_max": args.t_max}, prof.as_dict(),
          "generic 2-squares in the plane have H(t) = min{4s, C(t+2,2)} (conjectural)", args.seed)
    _verify(prof.matches and prof.monotone)


def cmd_hf_superfat(args):
    r = experiments.superfat_hf_search(args.m, _trials(args), args.seed)
    _emit(args, "hf-superfat", {"m": args.m},
          {"maximal": r.maximal, "attained": f"{r.attained}/{r.trials}", "best": r.best,
           "profiles": r.profiles, "field": r.field},
          "m-superfat points with maximal Hilbert function exist (conjectural)", args.seed)


def cmd_sweep(args):
    ranges = {}
    for item in args.range or []:
        key, _, val = item.partition("=")
        if not val:
            raise argparse.ArgumentTypeError(f"--range expects key=value, got {item!r}")
        ranges[key] = val if key == "variety" else (int(val) if key == "s" else _int_range(val))
    table = experiments.sweep(args.kind, ranges, args.seed, args.timings, _trials(args))
    _emit(args, "sweep", {"kind": args.kind, "ranges": {k: str(v) for k, v in sorted(ranges.items())}},
          {"rows": table.rows, "all_pass": table.all_pass}, f"{args.kind} sweep", args.seed)
    _verify(table.all_pass)


# ---------------------------------------------------------------------------
# parser

def _common(p, vars_help=None):
    p.add_argument("--field", default="Q", help="Q, Qi or Fp:<prime> (default Q)")
    p.add_argument("--vars", default=None, help=vars_help or "variables, e.g. x,y or s0,s1;t0,t1")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("--trials", type=int, default=None,
                   help=f"random trials (default {DEFAULT_TRIALS}, or $SUPERFAT_TRIALS)")


COMMANDS = [
    ("check", cmd_check, "Decide m-symmetry of a scheme at the origin. Verifies the criterion "
     "'m-symmetric iff the tangent cones have no common line' and 'superfat iff length m^n'."),
    ("length", cmd_length, "Length at the origin, optionally along a line direction."),
    ("hull", cmd_hull, "Embed an m-symmetric scheme in an m-superfat one (superfat hull theorem)."),
    ("square-form", cmd_square_form, "Normal form of a 2-superfat point: it is a 2-square (l1^2, l2^2)."),
    ("hypercube", cmd_hypercube, "Build (l1^m,...,ln^m); verifies the hypercube is m-superfat of length m^n."),
    ("smooth-family", cmd_smooth_family, "Hypercube smoothing family; verifies m^n points and the t -> 0 limit."),
    ("union", cmd_union, "Union of 2m-1 squares theorem: the intersection is the fat point (2m-1)P."),
    ("perp-union", cmd_perp_union, "Two perpendicular 2-squares intersect in (x^2+y^2, x^3, x^2*y)."),
    ("binomial", cmd_binomial, "Alternating binomial identity used for the union of squares theorem."),
    ("perp", cmd_perp, "Apolar inverse system (I_d)^perp: span of the scheme in the Veronese embedding."),
    ("catalecticant", cmd_catalecticant, "Catalecticant matrix of a form (second osculating variety pattern)."),
    ("member", cmd_member, "Span membership test F in <nu_d(Z)> via apolarity (W-state corollary)."),
    ("tau2-normal", cmd_tau2_normal, "Normal form of l^(d-2) G on the second osculating variety tau2(V_d)."),
    ("qq-monomial", cmd_qq_monomial, "Points on the quadric of a 2-square span are l0^(d-2) l1 l2 (cuckoo variety)."),
    ("secant", cmd_secant, "Terracini secant dimension; checks the stated dimensions for q2, qq2, tau2, QQ."),
    ("fill", cmd_fill, "Fill degree of secants of tau2(V_d), including the d = 4 hypersurface exception."),
    ("quadric-check", cmd_quadric_check, "Quadric of a 2-square span and its contact with V_d / V_(d,d)."),
    ("hf-squares", cmd_hf_squares, "Hilbert function of s generic 2-squares vs min{4s, C(t+2,2)} (conjecture)."),
    ("hf-superfat", cmd_hf_superfat, "Search for m-superfat points with maximal Hilbert function (conjecture)."),
    ("sweep", cmd_sweep, "Parameter sweeps: union, binomial, fill, secant."),
]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superfat", description="Exact computations with superfat points, "
                                     "apolarity and secant varieties.")
    sub = parser.add_subparsers(dest="command", required=True)
    ps = {}
    for name, fn, text in COMMANDS:
        p = sub.add_parser(name, help=text.split(".")[0], description=text)
        _common(p)
        p.set_defaults(func=fn)
        ps[name] = p
    for name in ("check", "length", "hull", "square-form"):
        ps[name].add_argument("--ideal", required=True, help='ideal, e.g. "[x^2, y^2]"')
    ps["length"].add_argument("--direction", help="line direction, e.g. 1,2")
    ps["hypercube"].add_argument("--forms", required=True, help='independent linear forms, e.g. "[x1, x1+x2]"')
    ps["hypercube"].add_argument("--m", type=int, required=True)
    ps["smooth-family"].add_argument("--m", type=int, required=True)
    ps["smooth-family"].add_argument("--n", type=int, required=True)
    ps["smooth-family"].add_argument("--t", type=int, default=1)
    ps["union"].add_argument("--m", type=int, required=True)
    ps["binomial"].add_argument("--m", default="1..30", help="integer or range a..b")
    ps["binomial"].add_argument("--i", default="1..30", help="integer or range a..b")
    for name in ("perp", "member"):
        ps[name].add_argument("--ideal", required=True)
        ps[name].add_argument("--degree", type=_degree, required=True, help="d or d1,d2")
    ps["perp"].add_argument("--convention", choices=("apolar", "plain"), default="apolar")
    ps["member"].add_argument("--form", required=True)
    ps["catalecticant"].add_argument("--form", required=True)
    ps["catalecticant"].add_argument("--split", type=_degree, required=True, help="row degree k or k1,k2")
    ps["tau2-normal"].add_argument("--form", required=True)
    ps["tau2-normal"].add_argument("--ell", required=True)
    ps["tau2-normal"].add_argument("--conic", required=True)
    ps["qq-monomial"].add_argument("--point", required=True, help="a0,a1,a2,a3 with a0*a3 = a1*a2")
    ps["qq-monomial"].add_argument("--d", type=int, required=True)
    ps["qq-monomial"].add_argument("--ells", help='"[l0, l1, l2]" (default [x2, x0, x1])')
    ps["secant"].add_argument("--variety", required=True, choices=sorted(secants.BUILDERS))
    ps["secant"].add_argument("--d", type=int, required=True)
    ps["secant"].add_argument("--s", type=int, default=2)
    ps["fill"].add_argument("--d", type=int, required=True)
    ps["quadric-check"].add_argument("--d", type=int, required=True)
    ps["quadric-check"].add_argument("--kind", choices=("veronese", "segre"), default="veronese")
    ps["hf-squares"].add_argument("--s", type=int, required=True)
    ps["hf-squares"].add_argument("--t-max", type=int, default=None)
    ps["hf-superfat"].add_argument("--m", type=int, required=True)
    ps["sweep"].add_argument("--kind", required=True, choices=sorted(experiments.SWEEP_LIMITS))
    ps["sweep"].add_argument("--range", action="append",
                             help="key=value, e.g. m=1..5, d=2..5, variety=q2, s=2 (repeatable)")
    ps["sweep"].add_argument("--timings", action="store_true", help="include wall-clock timings")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except Mismatch:
        return MISMATCH
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except (argparse.ArgumentTypeError, FieldError, UnknownVariable, GradingError, IdealError,
            zerodim.SchemeError, apolarity.DegreeMismatch, apolarity.NotDivisible,
            apolarity.NotOnQuadric, secants.ParamError, experiments.RangeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    return OK


if __name__ == "__main__":
    sys.exit(main())
