from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from superfat.fields import GF, QQ
from superfat.grobner import (
    Ideal, ideal_contains, ideal_intersection, krull_dimension, maximal_ideal, quotient_dimension,
    truncated_intersection,
)
from superfat.polyring import LEX, PolyRing

R = PolyRing(("x", "y", "z"))
x, y, z = R.gens
SX = sympy.symbols("x y z")


def _as_dicts(polys):
    return {frozenset((e, Fraction(c)) for e, c in p.terms.items()) for p in polys}


def _sympy_gb(gens, order):
    exprs = [sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(s ** k for s, k in zip(SX, e))
                 for e, c in g.terms.items()) for g in gens]
    G = sympy.groebner(exprs, *SX, order=order, domain="QQ")
    out = set()
    for g in G.exprs:
        d = sympy.Poly(g, *SX).as_dict()
        out.add(frozenset((e, Fraction(int(c.p), int(c.q))) for e, c in d.items()))
    return out


small = st.integers(-3, 3)
terms = st.lists(st.tuples(st.tuples(*[st.integers(0, 2)] * 3), small), min_size=1, max_size=3)
poly = terms.map(lambda ts: sum((R.monomial(e, c) for e, c in ts), R.zero))


@settings(max_examples=40, deadline=None)
@given(st.lists(poly, min_size=1, max_size=3))
def test_reduced_basis_matches_sympy(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    I = Ideal(R, gens)
    assert _as_dicts(I.groebner()) == _sympy_gb(gens, "grevlex")


def test_lex_basis_matches_sympy():
    gens = [x ** 2 + y * z - 1, x * y - z ** 2, y ** 3 - x]
    assert _as_dicts(Ideal(R, gens).groebner(LEX)) == _sympy_gb(gens, "lex")


@settings(max_examples=40, deadline=None)
@given(st.lists(poly, min_size=1, max_size=3), poly)
def test_generators_and_multiples_are_members(gens, h):
    gens = [g for g in gens if g]
    if not gens:
        return
    I = Ideal(R, gens)
    assert all(I.contains(g) for g in gens)
    assert I.contains(gens[0] * h)


def test_quotient_and_krull():
    S = PolyRing(("x", "y"))
    a, b = S.gens
    I = Ideal(S, [a ** 2, b ** 3])
    q = quotient_dimension(I)
    assert q.finite and q.dimension == 6
    assert krull_dimension(I) == 0
    assert krull_dimension(Ideal(S, [a])) == 1
    assert not quotient_dimension(Ideal(S, [a * b])).finite


def test_intersection_by_elimination():
    S = PolyRing(("x", "y"))
    a, b = S.gens
    I = ideal_intersection(Ideal(S, [a ** 2, b]), Ideal(S, [a, b ** 2]))
    assert I == Ideal(S, [a ** 2, a * b, b ** 2])


def test_truncated_intersection_matches_full():
    S = PolyRing(("x", "y", "z"))
    a, b, c = S.gens
    I1, I2 = Ideal(S, [a ** 2, b ** 2]), Ideal(S, [(a - c) ** 2, (b + c) ** 2])
    full = ideal_intersection(I1, I2)
    for d in range(1, 5):
        assert truncated_intersection([I1, I2], d) == full.piece(d)


def test_containment_and_powers():
    S = PolyRing(("x", "y"))
    m = maximal_ideal(S)
    assert ideal_contains(m, m ** 3)
    assert not ideal_contains(m ** 3, m)
    assert (m ** 2) == Ideal(S, [S.var("x") ** 2, S.var("x") * S.var("y"), S.var("y") ** 2])


def test_over_prime_field():
    S = PolyRing(("x", "y"), GF(7))
    a, b = S.gens
    assert quotient_dimension(Ideal(S, [a ** 7 - a, b ** 7 - b])).dimension == 49
