import random

import pytest
from hypothesis import given, settings, strategies as st

from superfat.apolarity import (
    DegreeMismatch, NotDivisible, NotOnQuadric, catalecticant, perp_space, qq_form, qq_monomialize,
    span_membership, tau2_normal_form,
)
from superfat.fields import QQ, QQI
from superfat.grobner import Ideal
from superfat.ioparse import make_ring, parse_ideal, parse_polynomial
from superfat.polyring import GradedPiece

R = make_ring("x0,x1,x2")
x0, x1, x2 = R.gens


def test_perp_complements_ideal_piece():
    I = parse_ideal("[x0^2 + x1*x2, x1^3]", R)
    for d in range(1, 6):
        assert perp_space(I, d).dim + I.piece(d).dim == GradedPiece(R, d).dim


@pytest.mark.parametrize("gens", ["[x0^2, x1^2]", "[x1^2, x0*x1, x0^3]", "[x0*x1*x2, x2^4]"])
def test_perp_convention_independent_for_monomial_ideals(gens):
    I = parse_ideal(gens, R)
    for d in range(2, 6):
        assert perp_space(I, d, "apolar").subspace == perp_space(I, d, "plain").subspace


def test_pairing_convention_matters_for_general_ideals():
    I = parse_ideal("[x0^2 - x1*x2]", R)
    assert perp_space(I, 2, "apolar").subspace != perp_space(I, 2, "plain").subspace


def test_catalecticant_examples():
    d = 5
    for a in range(d + 1):
        assert catalecticant(x0 ** d, a).rank() == 1
    B = make_ring("x0,x1")
    C = catalecticant(parse_polynomial("x0^3*x1", B), 1)
    assert [list(r) for r in C.matrix.data] == [[0, 6, 0, 0], [6, 0, 0, 0]]
    assert C.rank() == 2
    with pytest.raises(DegreeMismatch):
        catalecticant(x0 ** 2, 3)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=10, max_size=10), st.integers(0, 3))
def test_catalecticant_transpose_rank(cs, a):
    F = sum((m.scale(QQ(c)) for m, c in zip(GradedPiece(R, 3).basis_polys(), cs)), R.zero)
    if not F:
        return
    assert catalecticant(F, a).rank() == catalecticant(F, 3 - a).rank()


def test_span_membership():
    P = perp_space(parse_ideal("[x0^2, x1^2]", R), 4)
    assert span_membership(x2 ** 4, P)
    assert not span_membership(x0 ** 4, P)
    with pytest.raises(DegreeMismatch):
        span_membership(x2 ** 3, P)


def test_tau2_cases():
    T = tau2_normal_form(x2 ** 2 * x0 * x1, x2, x0 * x1)
    assert T.case == "square-free" and set(T.factors) == {x0, x1}
    T = tau2_normal_form(x2 ** 2 * (x2 * x1 + x0 ** 2), x2, x2 * x1 + x0 ** 2)
    assert T.case == "double" and T.factors == (x0,)
    G = x0 ** 2 - x1 ** 2
    T = tau2_normal_form(x2 ** 2 * G, x2, G)
    assert T.case == "square-free" and set(T.factors) == {x0 - x1, x0 + x1}
    assert span_membership(x2 ** 2 * G, perp_space(T.square_ideal, 4))
    G = x0 ** 2 + x1 ** 2
    assert tau2_normal_form(x2 ** 2 * G, x2, G).case == "extension-required"
    Ri = make_ring("x0,x1,x2", "Qi")
    a0, a1, a2 = Ri.gens
    assert tau2_normal_form(a2 ** 2 * (a0 ** 2 + a1 ** 2), a2, a0 ** 2 + a1 ** 2).case == "square-free"
    assert tau2_normal_form(x2 ** 3 * x2, x2, x2 ** 2).case == "tangent"
    with pytest.raises(NotDivisible):
        tau2_normal_form(x0 ** 4, x2, x0 * x1)


def test_tau2_with_slanted_ell():
    ell = x0 + x1 + x2
    G = x0 * x1 + x2 ** 2
    T = tau2_normal_form(ell ** 3 * G, ell, G)
    assert T.case in ("square-free", "double", "extension-required")
    if T.square_ideal is not None:
        assert span_membership(ell ** 3 * G, perp_space(T.square_ideal, 5))


@settings(max_examples=40, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(3, 6))
def test_qq_monomialize_on_quadric(a0, a1, a2, d):
    if a0 == 0:
        pt = (0, 0, a2, a1) if a1 else (0, a1, 0, a2)
    else:
        pt = (QQ(a0), QQ(a1), QQ(a2), QQ(a1) * a2 / a0)
    cert = qq_monomialize(pt, (x2, x0, x1), d)
    assert cert.verified
    assert cert.form == qq_form(pt, (x2, x0, x1), d)
    assert cert.in_tangent_plane == (pt[3] == 0)


def test_qq_off_quadric():
    with pytest.raises(NotOnQuadric):
        qq_monomialize((1, 1, 1, 2), (x2, x0, x1), 4)
