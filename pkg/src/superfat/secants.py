"""Parameterized varieties in graded pieces and Terracini secant dimensions.

A ParamMap is a polynomial in parameters and ring variables; fixing the
parameters gives a form, i.e. a point of the affine cone over the variety.
Tangent spaces are spanned by the partial derivatives in the parameters, and
the dimension of the s-th secant variety at a generic point is the rank of
the union of s such spans at random parameter points (Terracini).  Random
points only ever give lower bounds for the generic rank, so each
computation keeps the best of several trials and reports how many agreed.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .apolarity import QQMonomial, perp_space, qq_form, qq_monomialize
from .fields import QQ, Field, PrimeField
from .grobner import Ideal
from .linalg import Matrix, Subspace, rank_rows
from .polyring import GradedPiece, Polynomial, PolyRing, monomials_of_degree

PARAM_BOUND = 50
DEFAULT_TRIALS = 3


class ParamError(ValueError):
    pass


@dataclass
class ParamMap:
    """Polynomial map from parameter space into a graded piece of ``ring``."""

    name: str
    params: tuple
    ring: PolyRing
    degree: object
    expr: Polynomial
    expected_dim: int
    blocks: tuple = ()  # parameter index groups on which the map is homogeneous

    @cached_property
    def piece(self) -> GradedPiece:
        return GradedPiece(self.ring, self.degree)

    @property
    def ambient_dim(self) -> int:
        """Projective dimension of the target space."""
        return self.piece.dim - 1

    @cached_property
    def _compiled(self):
        k = len(self.params)
        index = self.piece.index

        def compile_poly(f):
            return [(e[:k], index[e[k:]], c) for e, c in f.terms.items()]

        base = compile_poly(self.expr)
        derivs = [compile_poly(self.expr.derivative(p)) for p in self.params]
        return base, derivs

    def _eval(self, compiled, point) -> list:
        field = self.ring.field
        vec = [field.zero] * self.piece.dim
        for pe, idx, c in compiled:
            v = c
            for x, k in zip(point, pe):
                if k:
                    v = v * x ** k
            vec[idx] = vec[idx] + v
        return vec

    def _point(self, point) -> tuple:
        if len(point) != len(self.params):
            raise ParamError(f"{self.name} takes {len(self.params)} parameters, got {len(point)}")
        field = self.ring.field
        return tuple(x if field.contains(x) else field(x) for x in point)

    def image(self, point) -> Polynomial:
        point = self._point(point)
        return self.piece.poly(self._eval(self._compiled[0], point))

    def jacobian_rows(self, point) -> list:
        point = self._point(point)
        return [self._eval(d, point) for d in self._compiled[1]]

    def random_point(self, rng: random.Random) -> tuple:
        field = self.ring.field
        return tuple(field.random(rng, PARAM_BOUND) for _ in self.params)

    def with_field(self, field: Field) -> "ParamMap":
        ring = self.ring.with_field(field)
        big = PolyRing(self.expr.ring.variables, field)
        expr = Polynomial(big, {e: field(c) for e, c in self.expr.terms.items()})
        return ParamMap(self.name, self.params, ring, self.degree, expr, self.expected_dim, self.blocks)


@dataclass(frozen=True)
class TangentSpan:
    point: tuple
    subspace: Subspace
    image: tuple

    @property
    def dim(self) -> int:
        return self.subspace.dim


def tangent_span(pm: ParamMap, point) -> TangentSpan:
    """Affine cone over the tangent space at the image of ``point``."""
    rows = pm.jacobian_rows(point)
    img = tuple(pm._eval(pm._compiled[0], pm._point(point)))
    return TangentSpan(tuple(point), Subspace(rows, pm.piece.dim, pm.ring.field), img)


@dataclass(frozen=True)
class SecantResult:
    variety: str
    s: int
    dim: int
    trial_dims: tuple
    agreeing: int
    expected: int
    ambient: int
    seed: int
    field: str

    @property
    def agree(self) -> bool:
        return self.agreeing == len(self.trial_dims)


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent, order-free random stream for one trial."""
    return random.Random(f"{seed}:{trial}")


def secant_dimension(pm: ParamMap, s: int, seed: int = 0, trials: int = DEFAULT_TRIALS,
                     field: Field | None = None) -> SecantResult:
    """Projective dimension of sigma_s(X) at s random points, best of ``trials``."""
    if s < 1:
        raise ParamError("s must be at least 1")
    if trials < 1:
        raise ParamError("need at least one trial")
    if field is not None and field != pm.ring.field:
        pm = pm.with_field(field)
    dims = []
    for t in range(trials):
        rng = trial_rng(seed, t)
        rows = []
        for _ in range(s):
            rows.extend(pm.jacobian_rows(pm.random_point(rng)))
        dims.append(rank_rows(rows, pm.ring.field, pm.piece.dim) - 1)
    best = max(dims)
    expected = min(pm.ambient_dim, s * (pm.expected_dim + 1) - 1)
    return SecantResult(pm.name, s, best, tuple(dims), dims.count(best), expected,
                        pm.ambient_dim, seed, pm.ring.field.name)


# ---------------------------------------------------------------------------
# builders

def _linear(big: PolyRing, coeffs: Sequence[str], xs: Sequence[str]) -> Polynomial:
    acc = big.zero
    for c, x in zip(coeffs, xs):
        acc = acc + big.var(c) * big.var(x)
    return acc


def _make(name, params, ring, degree, expr_fn, expected, blocks, field):
    big = PolyRing(tuple(params) + ring.variables, field)
    expr = expr_fn(big)
    return ParamMap(name, tuple(params), ring, degree, expr, expected, blocks)


def veronese(n: int, d: int, field: Field = QQ) -> ParamMap:
    """nu_d of P^(n-1): (a . x)^d."""
    if n < 1 or d < 1:
        raise ParamError("need n >= 1 and d >= 1")
    xs = tuple(f"x{i}" for i in range(n))
    ring = PolyRing(xs, field)
    ps = tuple(f"a{i}" for i in range(n))
    return _make(f"veronese({n},{d})", ps, ring, d,
                 lambda big: _linear(big, ps, xs) ** d, n - 1, (tuple(range(n)),), field)


def _ternary(field):
    return PolyRing(("x0", "x1", "x2"), field)


def tau2(d: int, field: Field = QQ) -> ParamMap:
    """Second osculating variety of V_d as the image of (l, G) -> l^(d-2) G."""
    if d < 2:
        raise ParamError("tau2 needs d >= 2")
    ring = _ternary(field)
    xs = ring.variables
    ls = ("l0", "l1", "l2")
    conics = monomials_of_degree(3, 2)
    gs = tuple(f"g{i}" for i in range(len(conics)))

    def build(big):
        G = big.zero
        for g, e in zip(gs, conics):
            G = G + big.var(g) * big.monomial((0,) * 9 + e)
        return _linear(big, ls, xs) ** (d - 2) * G

    return _make(f"tau2({d})", ls + gs, ring, d, build, 7, ((0, 1, 2), tuple(range(3, 9))), field)


def QQ_variety(d: int, field: Field = QQ) -> ParamMap:
    """Forms l0^(d-2) l1 l2."""
    if d < 3:
        raise ParamError("QQ needs d >= 3")
    ring = _ternary(field)
    xs = ring.variables
    names = [tuple(f"{c}{i}" for i in range(3)) for c in ("a", "b", "c")]

    def build(big):
        l0, l1, l2 = (_linear(big, ns, xs) for ns in names)
        return l0 ** (d - 2) * l1 * l2

    return _make(f"QQ({d})", sum(names, ()), ring, d, build, 6, ((0, 1, 2), (3, 4, 5), (6, 7, 8)), field)


def _biring(field):
    return PolyRing(("s0", "s1", "t0", "t1"), field, blocks=(2, 2))


def segre_veronese(d1: int, d2: int | None = None, field: Field = QQ) -> ParamMap:
    """nu_(d1,d2) of P^1 x P^1: (a s)^d1 (c t)^d2."""
    d2 = d1 if d2 is None else d2
    if d1 < 1 or d2 < 1:
        raise ParamError("need positive bidegree")
    ring = _biring(field)

    def build(big):
        return _linear(big, ("a0", "a1"), ("s0", "s1")) ** d1 * _linear(big, ("c0", "c1"), ("t0", "t1")) ** d2

    return _make(f"segre_veronese({d1},{d2})", ("a0", "a1", "c0", "c1"), ring, (d1, d2), build, 2,
                 ((0, 1), (2, 3)), field)


def q2(d: int, field: Field = QQ) -> ParamMap:
    """Spans of 2-squares on V_(d,d): m_s^(d-1) m_t^(d-1) n with n in R_(1,1)."""
    if d < 2:
        raise ParamError("q2 needs d >= 2")
    ring = _biring(field)
    ns = ("n00", "n01", "n10", "n11")

    def build(big):
        ms = _linear(big, ("a0", "a1"), ("s0", "s1"))
        mt = _linear(big, ("c0", "c1"), ("t0", "t1"))
        n = big.zero
        for name, (i, j) in zip(ns, ((0, 0), (0, 1), (1, 0), (1, 1))):
            n = n + big.var(name) * big.var(f"s{i}") * big.var(f"t{j}")
        return ms ** (d - 1) * mt ** (d - 1) * n

    return _make(f"q2({d})", ("a0", "a1", "c0", "c1") + ns, ring, (d, d), build, 5,
                 ((0, 1), (2, 3), (4, 5, 6, 7)), field)


def qq2(d: int, field: Field = QQ) -> ParamMap:
    """m_s^(d-1) n_s m_t^(d-1) n_t."""
    if d < 2:
        raise ParamError("qq2 needs d >= 2")
    ring = _biring(field)

    def build(big):
        ms = _linear(big, ("a0", "a1"), ("s0", "s1"))
        ns = _linear(big, ("b0", "b1"), ("s0", "s1"))
        mt = _linear(big, ("c0", "c1"), ("t0", "t1"))
        nt = _linear(big, ("e0", "e1"), ("t0", "t1"))
        return ms ** (d - 1) * ns * mt ** (d - 1) * nt

    return _make(f"qq2({d})", ("a0", "a1", "b0", "b1", "c0", "c1", "e0", "e1"), ring, (d, d), build, 4,
                 ((0, 1), (2, 3), (4, 5), (6, 7)), field)


BUILDERS = {
    "veronese": lambda d, field=QQ: veronese(3, d, field),
    "tau2": tau2,
    "QQ": QQ_variety,
    "segre-veronese": lambda d, field=QQ: segre_veronese(d, d, field),
    "q2": q2,
    "qq2": qq2,
}


def build(variety: str, d: int, field: Field = QQ) -> ParamMap:
    try:
        return BUILDERS[variety](d, field=field)
    except KeyError:
        raise ParamError(f"unknown variety {variety!r}; choose from {sorted(BUILDERS)}") from None


# ---------------------------------------------------------------------------
# checks

def fill_degree_formula(d: int) -> int:
    return math.ceil(Fraction(d * d + 3 * d + 2, 16))


@dataclass(frozen=True)
class FillReport:
    d: int
    s_formula: int
    s_fill: int
    ambient: int
    dims: dict
    exceptional: bool
    verified: bool


def fill_degree_check(d: int, seed: int = 0, trials: int = DEFAULT_TRIALS, field: Field = QQ) -> FillReport:
    """Least s with sigma_s(tau2(V_d)) filling P^N, against the closed formula (d = 4 excepted)."""
    if d < 3:
        raise ParamError("fill degree check needs d >= 3")
    pm = tau2(d, field)
    N = pm.ambient_dim
    s_formula = fill_degree_formula(d)
    exceptional = d == 4
    s_fill = 3 if exceptional else s_formula
    dims = {}
    ok = True
    for s in range(1, s_fill + 1):
        r = secant_dimension(pm, s, seed, trials)
        dims[s] = r.dim
        ok = ok and r.agree
    if exceptional:
        ok = ok and dims[2] == 13 and dims[3] == N
    else:
        # below the fill degree the dimension is the expected 8s - 1
        ok = ok and dims[s_fill] == N and all(dims[s] == 8 * s - 1 < N for s in range(1, s_fill))
    return FillReport(d, s_formula, s_fill, N, dims, exceptional, ok)


def _quadratic_form_rank(coeffs: dict, n: int, field: Field) -> int:
    """Rank of the symmetric matrix of sum c_ij a_i a_j (i <= j), char != 2."""
    two = field(2)
    m = [[field.zero] * n for _ in range(n)]
    for (i, j), c in coeffs.items():
        if i == j:
            m[i][i] = m[i][i] + c
        else:
            m[i][j] = m[i][j] + c / two
            m[j][i] = m[j][i] + c / two
    return rank_rows(m, field, n)


def _sample_quadric(rng: random.Random, field: Field) -> tuple:
    a0 = field.random(rng, PARAM_BOUND)
    while not a0:
        a0 = field.random(rng, PARAM_BOUND)
    a1, a2 = field.random(rng, PARAM_BOUND), field.random(rng, PARAM_BOUND)
    return a0, a1, a2, a1 * a2 / a0


def _rank_one_factor(M, field):
    """(u, v) with M = u v^T for a 2x2 matrix of rank one, else None."""
    (a, b), (c, e) = M
    if a * e != b * c:
        return None
    if a or b:
        row, scale_idx = (a, b), 0
    else:
        row, scale_idx = (c, e), 1
    piv = row[0] if row[0] else row[1]
    j = 0 if row[0] else 1
    col = (M[0][j] / piv, M[1][j] / piv)
    return col, row


def quadric_incidence_check(d: int, kind: str = "veronese", seed: int = 0, samples: int = 20,
                            field: Field = QQ) -> dict:
    """Quadric inside the span of a 2-square and its contact with the embedded surface."""
    rng = random.Random(seed)
    if kind == "veronese":
        if d < 3:
            raise ParamError("Veronese case needs d >= 3")
        ring = _ternary(field)
        x0, x1, x2 = ring.gens
        basis = [x2 ** d, x2 ** (d - 1) * x0, x2 ** (d - 1) * x1, x2 ** (d - 2) * x0 * x1]
        perp = perp_space(Ideal(ring, [x0 ** 2, x1 ** 2]), d)
        ells = (x2, x0, x1)
        tangent = tangent_span(veronese(3, d, field), (0, 0, 1))
        base_point = None
    elif kind == "segre":
        if d < 2:
            raise ParamError("Segre-Veronese case needs d >= 2")
        ring = _biring(field)
        s0, s1, t0, t1 = ring.gens
        head = s0 ** (d - 1) * t0 ** (d - 1)
        basis = [head * s0 * t0, head * s0 * t1, head * s1 * t0, head * s1 * t1]
        perp = perp_space(Ideal(ring, [s1 ** 2, t1 ** 2]), (d, d))
        tangent = tangent_span(segre_veronese(d, d, field), (1, 0, 1, 0))
    else:
        raise ParamError("kind must be 'veronese' or 'segre'")
    piece = perp.piece
    span = Subspace([piece.vector(b) for b in basis], piece.dim, field)
    basis_ok = span == perp.subspace and perp.dim == 4
    # a0*a3 - a1*a2 in the coordinates of ``basis``
    q_rank = _quadratic_form_rank({(0, 3): field.one, (1, 2): -field.one}, 4, field)

    def form_of(a):
        f = ring.zero
        for c, b in zip(a, basis):
            if c:
                f = f + b.scale(c)
        return f

    samples_ok = True
    degenerate_ok = True
    for k in range(samples):
        a = _sample_quadric(rng, field)
        if k % 4 == 3:
            # points with a0 = 0 on the quadric
            a = (field.zero, field.zero, a[2], a[3] if a[3] else field.one)
        if kind == "veronese":
            cert = qq_monomialize(a, ells, d)
            samples_ok = samples_ok and cert.verified and cert.form == form_of(a)
        else:
            fac = _rank_one_factor(((a[0], a[1]), (a[2], a[3])), field)
            u, v = fac
            ls = s0.scale(u[0]) + s1.scale(u[1])
            lt = t0.scale(v[0]) + t1.scale(v[1])
            samples_ok = samples_ok and head * ls * lt == form_of(a)
        # a3 = 0 samples land in the tangent plane of the surface at the base point
        deg = (a[0], a[1], field.zero, field.zero) if k % 2 else (a[0], field.zero, a[2], field.zero)
        f = form_of(deg)
        if kind == "veronese":
            cert = qq_monomialize(deg, ells, d)
            degenerate_ok = degenerate_ok and cert.verified and cert.in_tangent_plane
        degenerate_ok = degenerate_ok and tangent.subspace.contains(piece.vector(f))
    # tangent plane of the surface = {a3 = 0} inside the span, meeting the quadric in two lines
    plane = Subspace([piece.vector(b) for b in basis[:3]], piece.dim, field)
    tangent_ok = tangent.subspace == plane
    section_rank = _quadratic_form_rank({(1, 2): -field.one}, 3, field)
    # the quadric's own tangent plane at the base point (1, 0, 0, 0) is a3 = 0 as well
    gradient = (field.zero, field.zero, field.zero, field.one)
    return {
        "kind": kind, "d": d,
        "perp_basis_ok": basis_ok,
        "quadric_rank": q_rank,
        "samples_factor": samples_ok,
        "degenerate_in_tangent": degenerate_ok,
        "tangent_plane_is_a3_zero": tangent_ok,
        "tangent_section_rank": section_rank,
        "quadric_tangent_at_base": gradient,
        "ok": basis_ok and q_rank == 4 and samples_ok and degenerate_ok and tangent_ok and section_rank == 2,
    }


def terracini_intersection(pm: ParamMap, seed: int = 0) -> dict:
    """dim W, dim W', dim (W ∩ W') and dim (W + W') at two random points."""
    rng = trial_rng(seed, 0)
    W1 = tangent_span(pm, pm.random_point(rng)).subspace
    W2 = tangent_span(pm, pm.random_point(rng)).subspace
    return {"dim_W": W1.dim, "dim_W2": W2.dim, "dim_intersection": (W1 & W2).dim, "dim_sum": (W1 + W2).dim}
