"""Zero-dimensional schemes at the origin: lengths, m-symmetry, superfat points.

All ideals are affine, in the chart where the point of interest is the
origin.  A scheme is m-symmetric when every line through the origin meets
it with length exactly m; it is m-superfat when, in addition, its length is
the largest possible, m^n.

m-symmetry is decided through tangent cones: with m the least order of a
generator, the restriction of the ideal to the line spanned by ``a`` has
length m exactly when some generator's degree-m component does not vanish
at ``a``.  So the scheme is m-symmetric iff those components have no common
zero other than 0, i.e. the ideal they generate has a finite quotient.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from math import comb
from typing import Sequence

from .fields import QQ, QQI, Field, FieldError, Gaussian, PrimeField
from .grobner import Ideal, krull_dimension, maximal_ideal, quotient_dimension
from .linalg import Subspace, rank_rows
from .polyring import INFINITY, GradedPiece, Polynomial, PolyRing


class SchemeError(ValueError):
    """Base class for invalid input to the zero-dimensional routines."""


class ZeroIdealError(SchemeError):
    pass


class NotSupportedAtOrigin(SchemeError):
    pass


class NotZeroDimensional(SchemeError):
    pass


class NonIsolatedOrigin(SchemeError):
    pass


class DependentForms(SchemeError):
    pass


class HullError(SchemeError):
    pass


class NotSuperfat(SchemeError):
    pass


class FieldTooSmall(SchemeError):
    pass


MAX_HULL_ATTEMPTS = 20
HULL_COEFF_BOUND = 100


# ---------------------------------------------------------------------------
# records

@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    m: int | None
    length: int
    contains_fat_point: bool
    superfat: bool
    nvars: int
    min_order: int
    witness: dict | None = None


@dataclass(frozen=True)
class SquarePair:
    """Two independent linear forms; the square ideal is (l1^m, l2^m)."""

    l1: Polynomial
    l2: Polynomial
    m: int = 2

    def ideal(self) -> Ideal:
        return Ideal(self.l1.ring, [self.l1 ** self.m, self.l2 ** self.m])


@dataclass(frozen=True)
class ExtensionRequired:
    """The rank-one members of the pencil aF + bG are not defined over the field.

    ``coefficients`` are (A, B, C) of A a^2 + B ab + C b^2, whose roots [a:b]
    give the perfect squares; ``discriminant`` is B^2 - 4AC.
    """

    coefficients: tuple
    discriminant: object
    field: str
    pencil: tuple


# ---------------------------------------------------------------------------
# checks shared by the routines below

def _require_nonzero(I: Ideal):
    if I.is_zero():
        raise ZeroIdealError("the zero ideal does not define a zero-dimensional scheme")


def _require_origin(I: Ideal):
    _require_nonzero(I)
    origin = (I.ring.field.zero,) * I.ring.nvars
    for g in I.gens:
        if g.evaluate(origin):
            raise NotSupportedAtOrigin(f"generator {g} does not vanish at the origin")


def _as_direction(ring: PolyRing, a: Sequence) -> tuple:
    if len(a) != ring.nvars:
        raise ValueError(f"direction needs {ring.nvars} coordinates")
    a = tuple(ring.field(x) if not ring.field.contains(x) else x for x in a)
    if not any(a):
        raise ValueError("zero direction does not span a line")
    return a


# ---------------------------------------------------------------------------
# lengths

def line_intersection_length(I: Ideal, a: Sequence):
    """Length at the origin of the scheme cut by the line t -> t*a."""
    a = _as_direction(I.ring, a)
    _require_nonzero(I)
    return min(g.restrict_to_line(a).order() for g in I.gens)


def _local_length(I: Ideal, max_n: int):
    """Certified (length, N) with dim k[x]/(I + m^N) = length at the origin."""
    _require_origin(I)
    ring = I.ring
    mm = maximal_ideal(ring)
    n_exp = max(g.degree() for g in I.gens) + 1
    prev = None
    while n_exp <= max_n:
        v = quotient_dimension(I + mm ** n_exp).dimension
        if prev is not None and v == prev and v < n_exp:
            return v, n_exp
        prev = v
        n_exp *= 2
    raise NonIsolatedOrigin(
        f"local length did not stabilize up to m^{max_n} (last value {prev}); "
        "the origin is probably not an isolated point")


def length_at_origin(I: Ideal, max_n: int = 64) -> int:
    """dim of the local ring of V(I) at the origin."""
    return _local_length(I, max_n)[0]


def local_component(I: Ideal, max_n: int = 64) -> Ideal:
    """The origin-primary component of I, computed as I + m^N."""
    v, n_exp = _local_length(I, max_n)
    J = I + maximal_ideal(I.ring) ** n_exp
    return Ideal(I.ring, J.groebner())


def is_supported_at_origin(I: Ideal) -> bool:
    """True when V(I) is exactly the origin (as a scheme of finite length)."""
    _require_origin(I)
    q = quotient_dimension(I)
    if not q.finite:
        return False
    return length_at_origin(I) == q.dimension


# ---------------------------------------------------------------------------
# symmetry

def tangent_cone_ideal(I: Ideal, m: int | None = None) -> Ideal:
    """Ideal of the degree-m components of the generators (m = least order by default)."""
    if m is None:
        m = min(g.order() for g in I.gens)
    return Ideal(I.ring, [g.homogeneous_component(m) for g in I.gens])


def _sympy_coeff(c):
    import sympy

    if isinstance(c, Gaussian):
        return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)
    if isinstance(c, Fraction):
        return sympy.Rational(c.numerator, c.denominator)
    return sympy.Integer(int(c))


def _from_sympy(x, field: Field):
    import sympy

    if isinstance(field, PrimeField):
        x = sympy.Rational(x)
        return field(Fraction(int(x.p), int(x.q)))
    re, im = sympy.re(x), sympy.im(x)
    re = Fraction(int(sympy.Rational(re).p), int(sympy.Rational(re).q))
    im = Fraction(int(sympy.Rational(im).p), int(sympy.Rational(im).q))
    if field == QQI:
        return Gaussian(re, im)
    if im:
        return None
    return re


def _common_directions(forms: list, ring: PolyRing) -> list:
    """Field-rational common zeros (up to scale) of binary forms, found by factoring."""
    if ring.nvars != 2 or not forms:
        return []
    import sympy

    field = ring.field
    zero, one = field.zero, field.one
    found = []
    if all(not f.evaluate((zero, one)) for f in forms):
        found.append((zero, one))
    t = sympy.Symbol("t")
    opts: dict = {}
    if isinstance(field, PrimeField):
        opts = {"modulus": field.p}
    elif field == QQI:
        opts = {"extension": sympy.I}
    polys = []
    for f in forms:
        expr = sum((_sympy_coeff(c) * t ** e[1] for e, c in f.terms.items()), sympy.Integer(0))
        polys.append(sympy.Poly(expr, t, **opts))
    g = reduce(lambda a, b: a.gcd(b), polys)
    if g.degree() <= 0:
        return found
    for fac, _ in g.factor_list()[1]:
        if fac.degree() == 1:
            a1, a0 = fac.all_coeffs()
            root = _from_sympy(sympy.simplify(-a0.as_expr() / a1.as_expr()) if not opts.get("modulus")
                               else -sympy.Integer(int(a0)) * sympy.mod_inverse(int(a1), field.p), field)
            if root is not None:
                found.append((one, root))
    return found


def symmetry_degree(I: Ideal) -> SymmetryReport:
    """Decide whether V(I) (supported at the origin) is m-symmetric, and for which m."""
    _require_origin(I)
    q = quotient_dimension(I)
    if not q.finite:
        raise NotZeroDimensional("the quotient ring is infinite-dimensional")
    length = q.dimension
    if length_at_origin(I) != length:
        raise NotSupportedAtOrigin("V(I) has points other than the origin; use local_component first")
    ring = I.ring
    n = ring.nvars
    m = min(g.order() for g in I.gens)
    cones = tangent_cone_ideal(I, m)
    cone_q = quotient_dimension(cones)
    symmetric = cone_q.finite
    witness = None
    if not symmetric:
        witness = {"kind": "tangent_cone", "tangent_cone_ideal": list(cones.gens),
                   "krull_dimension": krull_dimension(cones)}
        for a in _common_directions(list(cones.gens), ring):
            k = line_intersection_length(I, a)
            if k != m:
                witness["direction"] = a
                witness["line_length"] = k
                break
    return SymmetryReport(
        symmetric=symmetric,
        m=m if symmetric else None,
        length=length,
        contains_fat_point=True,  # every generator has order >= m by the choice of m
        superfat=symmetric and length == m ** n,
        nvars=n,
        min_order=m,
        witness=witness,
    )


def fat_point_length(m: int, n: int) -> int:
    """Length of the fat point mP in n-space."""
    return comb(m + n - 1, n)


# ---------------------------------------------------------------------------
# constructions

def _linear_coeffs(form: Polynomial) -> list:
    ring = form.ring
    if any(sum(e) != 1 for e in form.terms):
        raise DependentForms(f"{form} is not a linear form")
    row = [ring.field.zero] * ring.nvars
    for e, c in form.terms.items():
        row[e.index(1)] = c
    return row


def hypercube_ideal(forms: Sequence[Polynomial], m: int) -> Ideal:
    """(l1^m, ..., ln^m) for n independent linear forms in n variables."""
    if m < 1:
        raise ValueError("m must be positive")
    forms = list(forms)
    if not forms:
        raise DependentForms("need at least one linear form")
    ring = forms[0].ring
    if len(forms) != ring.nvars:
        raise DependentForms(f"need {ring.nvars} forms, got {len(forms)}")
    rows = [_linear_coeffs(f) for f in forms]
    if rank_rows(rows, ring.field, ring.nvars) != ring.nvars:
        raise DependentForms("linear forms are dependent")
    return Ideal(ring, [f ** m for f in forms])


def _random_combination(polys: list, rng: random.Random, field: Field, ring: PolyRing) -> tuple:
    coeffs = [field.random(rng, HULL_COEFF_BOUND) for _ in polys]
    acc = ring.zero
    for c, p in zip(coeffs, polys):
        if c:
            acc = acc + p.scale(c)
    return coeffs, acc


def superfat_hull(I: Ideal, seed: int = 0) -> Ideal:
    """An m-superfat ideal J contained in I (so V(J) contains V(I)).

    Follows the classical construction: pick n random combinations K_i of the
    order-m generators whose tangent cones form a regular sequence, then keep
    the component of (K_1, ..., K_n) at the origin.
    """
    report = symmetry_degree(I)
    if not report.symmetric:
        raise HullError("input is not m-symmetric")
    ring = I.ring
    n, m = ring.nvars, report.m
    field = ring.field
    # generators of order m with independent tangent cones
    piece = GradedPiece(ring, m)
    chosen, rows = [], []
    for g in I.gens:
        if g.order() != m:
            continue
        v = list(piece.vector(g.homogeneous_component(m)))
        if rank_rows(rows + [v], field, piece.dim) > len(rows):
            rows.append(v)
            chosen.append(g)
    rng = random.Random(seed)
    attempts = 0
    ks: list = []
    last_failure = None
    while len(ks) < n:
        if attempts >= MAX_HULL_ATTEMPTS:
            raise HullError(f"no generic combination found in {MAX_HULL_ATTEMPTS} attempts: {last_failure}")
        attempts += 1
        _, k = _random_combination(chosen, rng, field, ring)
        cones = Ideal(ring, [h.homogeneous_component(m) for h in ks + [k]])
        if k.order() != m or krull_dimension(cones) != n - len(ks) - 1:
            last_failure = f"tangent cones of {len(ks) + 1} combinations are not a regular sequence"
            continue
        ks.append(k)
    J = Ideal(ring, ks)
    _, n_j = _local_length(J, 64)
    n_exp = max(n_j, report.length)
    hull = Ideal(ring, (J + maximal_ideal(ring) ** n_exp).groebner())
    check = symmetry_degree(hull)
    if not (hull.issubset(I) and check.symmetric and check.m == m and check.length == m ** n):
        raise HullError("constructed ideal failed its postconditions")
    return hull


def two_superfat_square_form(I: Ideal):
    """Write a 2-superfat ideal in two variables as (l1^2, l2^2).

    Returns a SquarePair, or ExtensionRequired when the square roots needed
    are not in the base field.
    """
    ring = I.ring
    if ring.nvars != 2:
        raise NotSuperfat("square normal form is for two variables")
    report = symmetry_degree(I)
    if not (report.superfat and report.m == 2):
        raise NotSuperfat("input is not 2-superfat")
    field = ring.field
    piece = GradedPiece(ring, 2)
    # a 2-superfat ideal equals the ideal of its two quadratic tangent cones
    cones = Subspace([piece.vector(g.homogeneous_component(2)) for g in I.gens if g.order() == 2],
                     piece.dim, field)
    F, G = (piece.poly(v) for v in cones.basis)
    # binary quadric (alpha, beta, gamma) has rank one iff beta^2 = 4 alpha gamma
    a1, b1, c1 = piece.vector(F)
    a2, b2, c2 = piece.vector(G)
    A = b1 * b1 - 4 * a1 * c1
    B = 2 * b1 * b2 - 4 * (a1 * c2 + a2 * c1)
    C = b2 * b2 - 4 * a2 * c2
    disc = B * B - 4 * A * C
    if A:
        r = field.sqrt(disc)
        if r is None:
            return ExtensionRequired((A, B, C), disc, field.name, (F, G))
        roots = [((-B + r) / (2 * A), field.one), ((-B - r) / (2 * A), field.one)]
    else:
        # [1:0] is a root; the other one solves B a + C b = 0
        roots = [(field.one, field.zero), (-C, B)]
    forms = []
    x, y = ring.gens
    for a, b in roots:
        q = F.scale(a) + G.scale(b)
        alpha, beta, gamma = piece.vector(q)
        if alpha:
            forms.append(x + y.scale(beta / (2 * alpha)))
        else:
            forms.append(y)
    pair = SquarePair(forms[0], forms[1], 2)
    if pair.ideal() != I:
        raise NotSuperfat("pencil squares do not regenerate the ideal")
    return pair


def smoothing_family(m: int, n: int, t, ring: PolyRing | None = None) -> Ideal:
    """(F_1, ..., F_n) with F_i = x_i (x_i + t) ... (x_i + (m-1) t): m^n grid points."""
    if ring is None:
        ring = PolyRing(tuple(f"x{i}" for i in range(1, n + 1)) if n > 3 else ("x", "y", "z")[:n])
    if ring.nvars != n:
        raise ValueError("ring must have n variables")
    field = ring.field
    t = field(t) if not field.contains(t) else t
    if not t:
        raise ValueError("t must be nonzero")
    if field.characteristic and field.characteristic <= m:
        raise FieldTooSmall(f"characteristic {field.characteristic} does not separate {m} points")
    gens = []
    for v in ring.gens:
        f = ring.one
        for k in range(m):
            f = f * (v + ring.constant(t * k))
        gens.append(f)
    return Ideal(ring, gens)


def smoothing_points(m: int, n: int, t, field: Field = QQ) -> list:
    t = field(t) if not field.contains(t) else t
    import itertools

    return [tuple(-k * t for k in ks) for ks in itertools.product(range(m), repeat=n)]


def smoothing_limit(m: int, n: int, ring: PolyRing | None = None) -> tuple:
    """The family with t as a variable, and its specialisation at t = 0."""
    base = smoothing_family(m, n, 1, ring)
    big = base.ring.extend(["t"])
    tt = big.var("t")
    gens = []
    for v in base.ring.variables:
        xv = big.var(v)
        f = big.one
        for k in range(m):
            f = f * (xv + tt * k)
        gens.append(f)
    at_zero = [g.substitute({"t": 0}).change_ring(big) for g in gens]
    return gens, at_zero


def smoothing_check(m: int, n: int, t=1, field: Field = QQ) -> dict:
    """Verify the smoothing family: colength m^n, m^n distinct zeros, limit (x_i^m)."""
    ring = PolyRing(tuple(f"x{i}" for i in range(1, n + 1)), field)
    fam = smoothing_family(m, n, t, ring)
    q = quotient_dimension(fam)
    pts = smoothing_points(m, n, t, field)
    vanish = all(not g.evaluate(p) for g in fam.gens for p in pts)
    distinct = len(set(pts)) == len(pts)
    gens, at_zero = smoothing_limit(m, n, ring)
    big = gens[0].ring
    expected = [big.var(v) ** m for v in ring.variables]
    limit_ok = at_zero == expected
    return {"m": m, "n": n, "t": t, "dimension": q.dimension, "expected": m ** n,
            "points_vanish": vanish, "points_distinct": distinct, "limit_ok": limit_ok,
            "ok": q.dimension == m ** n and vanish and distinct and len(pts) == m ** n and limit_ok}


# ---------------------------------------------------------------------------
# unions of squares

def _xy_ring(field: Field) -> PolyRing:
    return PolyRing(("x", "y"), field)


def union_squares(m: int, field: Field = QQ) -> list:
    """The 2m-1 square ideals (x^m, l_i^m), (x^m, y^m), (l_i^m, y^m) with l_i = x + i y."""
    if m < 1:
        raise ValueError("m must be positive")
    if field.characteristic and field.characteristic < m:
        raise FieldTooSmall("field has too few elements for distinct l_i = x + i y")
    R = _xy_ring(field)
    x, y = R.gens
    ls = [x + y.scale(field(i)) for i in range(1, m)]
    squares = [Ideal(R, [x ** m, l ** m]) for l in ls]
    squares.append(Ideal(R, [x ** m, y ** m]))
    squares.extend(Ideal(R, [l ** m, y ** m]) for l in ls)
    return squares


def union_of_squares_check(m: int, field: Field = QQ, full_up_to: int = 3) -> dict:
    """Check that the 2m-1 squares intersect in the fat point (x, y)^(2m-1)."""
    from .grobner import ideal_intersection, truncated_intersection

    squares = union_squares(m, field)
    R = squares[0].ring
    fat = maximal_ideal(R) ** (2 * m - 1)
    contained = all(fat.issubset(S) for S in squares)
    if m >= 2:
        trunc = truncated_intersection(squares, 2 * m - 2).dim
    else:
        trunc = 0
    result = {"m": m, "squares": len(squares), "fat_contained": contained,
              "degree": 2 * m - 2, "truncated_dim": trunc}
    ok = contained and trunc == 0
    if m <= full_up_to:
        inter = reduce(ideal_intersection, squares)
        result["intersection"] = inter.groebner()
        result["intersection_equals_fat"] = inter == fat
        ok = ok and result["intersection_equals_fat"]
    result["ok"] = ok
    return result


def perpendicular_union(pairs: Sequence[tuple], field: Field = QQ) -> Ideal:
    """Intersection of the square ideals (l1^2, l2^2) over the given pairs of linear forms."""
    from .grobner import ideal_intersection

    if not pairs:
        raise ValueError("need at least one pair")
    ideals = [Ideal(l1.ring, [l1 ** 2, l2 ** 2]) for l1, l2 in pairs]
    return reduce(ideal_intersection, ideals)


def perpendicular_union_check(field: Field = QQ) -> dict:
    """Intersect the squares of (x, y) and (x - y, x + y) and compare with (x^2+y^2, x^3, x^2 y)."""
    R = _xy_ring(field)
    x, y = R.gens
    single = perpendicular_union([(x, y)], field)
    both = perpendicular_union([(x, y), (x - y, x + y)], field)
    target = Ideal(R, [x ** 2 + y ** 2, x ** 3, x ** 2 * y])
    rep = symmetry_degree(both)
    return {
        "single_pair_strictly_larger": target.issubset(single) and single != target,
        "intersection": both.groebner(),
        "equals_target": both == target,
        "length": rep.length,
        "symmetric": rep.symmetric,
        "ok": both == target and rep.length == 5 and not rep.symmetric,
    }


def binomial_identity(m: int, i: int) -> int:
    """sum_j (-1)^j C(m+j-1, j) C(m, i-j), which vanishes for all m, i >= 1."""
    if m < 1 or i < 1:
        raise ValueError("m and i must be positive")
    return sum((-1) ** j * comb(m + j - 1, j) * comb(m, i - j) for j in range(i + 1))
