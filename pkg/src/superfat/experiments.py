"""Seeded experimental campaigns: Hilbert functions of square and superfat configurations, and sweeps.

Everything here is reproducible from (parameters, seed): each trial draws
from its own random stream derived from the seed and the trial index.
Outcomes of open questions are reported as evidence, never asserted.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from math import comb

from .fields import GF, QQ, Field
from .grobner import GREVLEX, Ideal, quotient_dimension, truncated_intersection
from .polyring import PolyRing
from .secants import build, fill_degree_check, secant_dimension, trial_rng
from .zerodim import (
    binomial_identity, local_component, union_of_squares_check,
)

COORD_BOUND = 50
FALLBACK_PRIME = 32003

# desk-scale limits for sweeps
SWEEP_LIMITS = {"union": 5, "binomial": 30, "fill": 8, "secant": 8}


class RangeError(ValueError):
    pass


@dataclass
class HFProfile:
    """Hilbert function of a scheme, compared with an expected profile."""

    scheme: str
    values: list  # (t, H(Z, t))
    expected: list  # (t, expected value)
    length: int
    field: str
    seed: int

    @property
    def verdicts(self) -> list:
        return [(t, h == e) for (t, h), (_, e) in zip(self.values, self.expected)]

    @property
    def matches(self) -> bool:
        return all(ok for _, ok in self.verdicts)

    @property
    def monotone(self) -> bool:
        hs = [h for _, h in self.values]
        return all(a <= b for a, b in zip(hs, hs[1:])) and all(h <= self.length for h in hs)

    def as_dict(self) -> dict:
        return {"scheme": self.scheme, "H": dict(self.values), "expected": dict(self.expected),
                "length": self.length, "field": self.field, "seed": self.seed,
                "matches": self.matches, "monotone": self.monotone}


def _line_through(p, rng: random.Random, field: Field, ring: PolyRing):
    """Random linear form vanishing at the projective point p (cross product with a random vector)."""
    while True:
        u = [field.random(rng, COORD_BOUND) for _ in range(3)]
        c = (p[1] * u[2] - p[2] * u[1], p[2] * u[0] - p[0] * u[2], p[0] * u[1] - p[1] * u[0])
        if any(c):
            return ring.linear_form(c)


def random_square_configuration(s: int, rng: random.Random, field: Field, ring: PolyRing) -> list:
    """s homogeneous square ideals (l1^2, l2^2), both lines through a random point."""
    out = []
    for _ in range(s):
        p = [field.random(rng, COORD_BOUND) for _ in range(3)]
        while not any(p):
            p = [field.random(rng, COORD_BOUND) for _ in range(3)]
        l1 = _line_through(p, rng, field, ring)
        l2 = _line_through(p, rng, field, ring)
        while rank_two(l1, l2, field) < 2:
            l2 = _line_through(p, rng, field, ring)
        out.append(Ideal(ring, [l1 * l1, l2 * l2]))
    return out


def rank_two(l1, l2, field) -> int:
    from .linalg import rank_rows

    vec = lambda f: [f.coeff(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    return rank_rows([vec(l1), vec(l2)], field, 3)


def _square_hf(s: int, ts, seed: int, field: Field, budget: float | None):
    ring = PolyRing(("x0", "x1", "x2"), field)
    squares = random_square_configuration(s, random.Random(f"squares:{s}:{seed}"), field, ring)
    start = time.monotonic()
    values = []
    for t in ts:
        dim_rt = comb(t + 2, 2)
        values.append((t, dim_rt - truncated_intersection(squares, t).dim))
        if budget is not None and time.monotonic() - start > budget:
            return None
    return values


def default_t_range(s: int) -> range:
    """0 up to the first degree where min{4s, C(t+2,2)} reaches 4s.

    H is nondecreasing and bounded by the length 4s, so once the value 4s
    is attained it persists in all higher degrees.
    """
    t = 0
    while comb(t + 2, 2) < 4 * s:
        t += 1
    return range(0, t + 1)


def generic_square_hilbert(s: int, t_range=None, seed: int = 0, field: Field | None = None,
                           budget: float = 30.0) -> HFProfile:
    """H(Z, t) for s random 2-square points of the plane against min{4s, C(t+2, 2)}.

    Runs over Q unless ``field`` is given; if the rational computation
    exceeds ``budget`` seconds it is redone over GF(32003).
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    ts = list(t_range if t_range is not None else default_t_range(s))
    if field is None:
        values = _square_hf(s, ts, seed, QQ, budget)
        used = QQ
        if values is None:
            used = GF(FALLBACK_PRIME)
            values = _square_hf(s, ts, seed, used, None)
    else:
        used = field
        values = _square_hf(s, ts, seed, field, None)
    expected = [(t, min(4 * s, comb(t + 2, 2))) for t in ts]
    return HFProfile(f"{s} generic 2-squares in P^2", values, expected, 4 * s, used.name, seed)


def affine_hilbert_function(I: Ideal, t_max: int) -> list:
    """H(t) of the projective closure: standard monomials of degree <= t (graded order)."""
    q = quotient_dimension(I, GREVLEX)
    if not q.finite:
        raise ValueError("ideal is not zero-dimensional")
    counts = [0] * (t_max + 1)
    for e in q.standard_monomials:
        d = sum(e)
        for t in range(d, t_max + 1):
            counts[t] += 1
    return counts


def _random_binary_form(ring, m, rng, field):
    x, y = ring.gens
    f = ring.zero
    for k in range(m + 1):
        f = f + (x ** (m - k) * y ** k).scale(field.random(rng, COORD_BOUND))
    return f


def random_superfat(m: int, rng: random.Random, field: Field = QQ, extra: int = 1) -> Ideal:
    """Local complete intersection at the origin of two random order-m curves."""
    ring = PolyRing(("x", "y"), field)
    while True:
        F, G = _random_binary_form(ring, m, rng, field), _random_binary_form(ring, m, rng, field)
        if not F or not G or not quotient_dimension(Ideal(ring, [F, G])).finite:
            continue
        f, g = F, G
        for k in range(1, extra + 1):
            f = f + _random_binary_form(ring, m + k, rng, field)
            g = g + _random_binary_form(ring, m + k, rng, field)
        return local_component(Ideal(ring, [f, g]))


@dataclass
class SuperfatSearch:
    m: int
    trials: int
    seed: int
    field: str
    maximal: list
    attained: int
    best: list
    profiles: list = dc_field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.attained > 0


def maximal_hf(length: int, t_max: int) -> list:
    return [min(comb(t + 2, 2), length) for t in range(t_max + 1)]


def superfat_hf_search(m: int, trials: int = 5, seed: int = 0, field: Field | None = None) -> SuperfatSearch:
    """Look for m-superfat points of the plane with maximal Hilbert function.

    Defaults to GF(32003): over Q the local components of random curves
    suffer heavy coefficient growth (minutes already for m = 3).
    """
    field = field or GF(FALLBACK_PRIME)
    if m < 2:
        raise ValueError("m must be at least 2")
    t_max = 2 * m
    target = maximal_hf(m * m, t_max)
    profiles = []
    attained = 0
    best = None
    for k in range(trials):
        rng = trial_rng(seed, k)
        I = random_superfat(m, rng, field)
        hf = affine_hilbert_function(I, t_max)
        profiles.append(hf)
        if hf == target:
            attained += 1
        if best is None or hf > best:
            best = hf
    return SuperfatSearch(m, trials, seed, field.name, target, attained, best, profiles)


# ---------------------------------------------------------------------------
# sweeps

@dataclass
class SweepTable:
    kind: str
    seed: int
    rows: list

    @property
    def all_pass(self) -> bool:
        return all(r["pass"] for r in self.rows)


# expected secant dimensions that are known in closed form, keyed by (variety, s)
KNOWN_SECANTS = {
    ("q2", 2): lambda d: 8 if d == 2 else 11,
    ("qq2", 2): lambda d: 7 if d == 2 else 9,
    ("tau2", 1): lambda d: 7,
    ("QQ", 1): lambda d: 6,
    ("q2", 1): lambda d: 5,
    ("qq2", 1): lambda d: 4,
}


def _check_range(kind, values):
    limit = SWEEP_LIMITS[kind]
    bad = [v for v in values if v < 1 or v > limit]
    if bad:
        raise RangeError(f"{kind} sweep parameters must lie in 1..{limit}, got {bad}")


def sweep(kind: str, ranges: dict, seed: int = 0, timings: bool = False, trials: int = 3) -> SweepTable:
    """Run one family of checks over a parameter range.

    ranges: union {"m"}, binomial {"m", "i"}, fill {"d"}, secant {"d", "variety", "s"}.
    """
    if kind not in SWEEP_LIMITS:
        raise RangeError(f"unknown sweep kind {kind!r}")
    rows = []

    def timed(fn):
        t0 = time.perf_counter()
        out = fn()
        return out, round(time.perf_counter() - t0, 4)

    if kind == "union":
        ms = list(ranges.get("m", range(1, 6)))
        _check_range(kind, ms)
        for m in ms:
            res, dt = timed(lambda: union_of_squares_check(m))
            rows.append({"m": m, "pass": res["ok"], "seconds": dt})
    elif kind == "binomial":
        ms, is_ = list(ranges.get("m", range(1, 31))), list(ranges.get("i", range(1, 31)))
        _check_range(kind, ms + is_)
        for m in ms:
            for i in is_:
                v, dt = timed(lambda: binomial_identity(m, i))
                rows.append({"m": m, "i": i, "value": v, "pass": v == 0, "seconds": dt})
    elif kind == "fill":
        ds = list(ranges.get("d", range(3, 9)))
        _check_range(kind, ds)
        if any(d < 3 for d in ds):
            raise RangeError("fill sweep needs d >= 3")
        for d in ds:
            r, dt = timed(lambda: fill_degree_check(d, seed, trials))
            rows.append({"d": d, "s_formula": r.s_formula, "s_fill": r.s_fill, "dims": r.dims,
                         "exceptional": r.exceptional, "pass": r.verified, "seconds": dt})
    else:
        variety = ranges.get("variety", "q2")
        s = int(ranges.get("s", 2))
        ds = list(ranges.get("d", range(2, 6)))
        _check_range(kind, ds)
        known = KNOWN_SECANTS.get((variety, s))
        for d in ds:
            r, dt = timed(lambda: secant_dimension(build(variety, d), s, seed, trials))
            expected = known(d) if known else None
            ok = r.agree and (expected is None or r.dim == expected)
            rows.append({"variety": variety, "d": d, "s": s, "dim": r.dim, "expected": expected,
                         "trial_dims": list(r.trial_dims), "pass": ok, "seconds": dt})
    if not timings:
        for r in rows:
            r.pop("seconds")
    return SweepTable(kind, seed, rows)
