import random

import pytest

from superfat.fields import GF, QQ
from superfat.secants import (
    ParamError, QQ_variety, build, fill_degree_check, fill_degree_formula, q2, qq2, quadric_incidence_check,
    secant_dimension, segre_veronese, tangent_span, tau2, terracini_intersection, veronese,
)


def test_veronese_classical():
    # Alexander-Hirschowitz exception: sigma_5(V_4) is defective in P^14
    assert secant_dimension(veronese(3, 4), 5).dim == 13
    assert secant_dimension(veronese(3, 3), 3).dim == 8
    assert secant_dimension(veronese(2, 4), 2).dim == 3  # rational normal curve


def test_image_dimensions():
    assert secant_dimension(tau2(4), 1).dim == 7
    assert secant_dimension(QQ_variety(4), 1).dim == 6
    assert secant_dimension(segre_veronese(2, 2), 1).dim == 2
    assert secant_dimension(q2(3), 1).dim == 5
    assert secant_dimension(qq2(3), 1).dim == 4


def test_image_is_in_tangent_span():
    pm = tau2(5)
    T = tangent_span(pm, pm.random_point(random.Random(2)))
    assert T.subspace.contains(T.image)


def test_prime_field_agrees_with_rationals():
    for pm in (q2(3), qq2(2), tau2(4)):
        assert secant_dimension(pm, 2, field=GF(32003)).dim == secant_dimension(pm, 2).dim


def test_trials_are_reproducible():
    a = secant_dimension(qq2(4), 2, seed=11, trials=4)
    b = secant_dimension(qq2(4), 2, seed=11, trials=4)
    assert a == b and a.agree


def test_terracini_intersection_q2():
    ti = terracini_intersection(q2(2), seed=5)
    assert (ti["dim_W"], ti["dim_W2"], ti["dim_intersection"], ti["dim_sum"]) == (6, 6, 3, 9)


def test_fill_formula():
    assert [fill_degree_formula(d) for d in range(3, 9)] == [2, 2, 3, 4, 5, 6]
    r = fill_degree_check(4)
    assert r.exceptional and r.s_fill == 3 and r.dims[2] == 13 and r.verified


@pytest.mark.parametrize("d, kind", [(3, "veronese"), (5, "veronese"), (2, "segre"), (4, "segre")])
def test_quadric_incidence(d, kind):
    res = quadric_incidence_check(d, kind, seed=d)
    assert res["ok"] and res["quadric_rank"] == 4 and res["tangent_section_rank"] == 2


def test_builder_errors():
    with pytest.raises(ParamError):
        build("nope", 3)
    with pytest.raises(ParamError):
        QQ_variety(2)
    with pytest.raises(ParamError):
        secant_dimension(q2(2), 0)
    with pytest.raises(ParamError):
        q2(2).image((1, 2))
