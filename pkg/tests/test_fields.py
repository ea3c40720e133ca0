from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superfat.fields import GF, QQ, QQI, FieldError, FieldMismatch, Gaussian, ModP, field_from_tag, sqrt_mod_p

P = 32003
rationals = st.fractions(max_denominator=50)
gaussians = st.builds(Gaussian, rationals, rationals)
residues = st.integers(0, P - 1).map(lambda v: ModP(v, P))


@given(gaussians, gaussians, gaussians)
def test_gaussian_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == 1


@given(residues, residues)
def test_modp_division_roundtrip(a, b):
    if b:
        assert (a / b) * b == a


def test_i_squared():
    assert QQI.i * QQI.i == -1
    assert QQI.sqrt(QQI(-1)) in (QQI.i, -QQI.i)


def test_sqrt_in_each_field():
    assert QQ.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert QQ.sqrt(QQ(2)) is None
    assert QQ.sqrt(QQ(-1)) is None
    F = GF(P)
    r = F.sqrt(F(2))
    assert r is None or r * r == F(2)
    # 32003 = 3 mod 4, so -1 is a non-residue
    assert sqrt_mod_p(F(-1)) is None
    assert GF(13).sqrt(GF(13)(-1)) ** 2 == GF(13)(-1)


def test_field_tags():
    assert field_from_tag("Q") is QQ
    assert field_from_tag("Qi") is QQI
    assert field_from_tag("Fp:7") == GF(7)
    for bad in ("R", "Fp:8", "Fp:x"):
        with pytest.raises(FieldError):
            field_from_tag(bad)


def test_mixing_fields_is_rejected():
    with pytest.raises(FieldMismatch):
        ModP(1, 5) + ModP(1, 7)
    with pytest.raises(FieldMismatch):
        QQ(QQI.i)


def test_fraction_into_gf():
    F = GF(7)
    assert F(Fraction(1, 2)) * 2 == 1
    with pytest.raises(ZeroDivisionError):
        F(Fraction(1, 7))
