from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from superfat.fields import QQ
from superfat.polyring import (
    GradedPiece, GradingError, PolyRing, UnknownVariable, apolar_pairing, monomials_of_degree,
)

R = PolyRing(("x", "y", "z"))
x, y, z = R.gens

coeff = st.integers(-5, 5)
polys = st.lists(st.tuples(st.tuples(*[st.integers(0, 3)] * 3), coeff), max_size=5).map(
    lambda ts: sum((R.monomial(e, c) for e, c in ts), R.zero))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f - f).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_leibniz(f, g):
    assert (f * g).derivative("x") == f.derivative("x") * g + f * g.derivative("x")


def test_piece_dimensions():
    for d in range(6):
        assert GradedPiece(R, d).dim == comb(d + 2, 2)
    B = PolyRing(("s0", "s1", "t0", "t1"), blocks=(2, 2))
    assert GradedPiece(B, (2, 3)).dim == 3 * 4
    assert monomials_of_degree(3, -1) == ()


def test_descending_lex_order_of_pieces():
    assert GradedPiece(R, 2).monomials[:3] == ((2, 0, 0), (1, 1, 0), (1, 0, 1))


def test_tangent_cone_and_order():
    f = x ** 3 + y ** 2 + x * y
    assert f.order() == 2
    assert f.tangent_cone() == y ** 2 + x * y
    assert R.zero.order() == float("inf")


def test_apolar_pairing_factorials():
    assert apolar_pairing(x ** 3, x ** 3) == 6
    assert apolar_pairing(x * y, x * y) == 1
    assert apolar_pairing(x ** 2, x * y) == 0


def test_substitute_and_restrict():
    f = x ** 2 - y
    assert f.substitute({"y": x ** 2}) == R.zero
    line = f.restrict_to_line((1, 1, 0))
    assert line.ring.nvars == 1


def test_errors():
    with pytest.raises(UnknownVariable):
        R.var("w")
    with pytest.raises(GradingError):
        GradedPiece(R, 2).vector(x ** 3)
