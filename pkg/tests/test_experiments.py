from math import comb

import pytest

from superfat.experiments import (
    RangeError, affine_hilbert_function, generic_square_hilbert, maximal_hf, superfat_hf_search, sweep,
)
from superfat.fields import GF
from superfat.ioparse import make_ring, parse_ideal


def test_square_hilbert_small_cases():
    assert generic_square_hilbert(1, range(0, 4)).values == [(0, 1), (1, 3), (2, 4), (3, 4)]
    assert generic_square_hilbert(6, range(5, 6)).values == [(5, 21)]


def test_square_hilbert_never_exceeds_bound():
    for seed in range(20):
        prof = generic_square_hilbert(3, range(0, 6), seed=seed)
        assert all(h <= min(12, comb(t + 2, 2)) for t, h in prof.values)
        assert prof.monotone


def test_square_hilbert_prime_field_and_reproducible():
    a = generic_square_hilbert(4, seed=3, field=GF(32003))
    assert a.field == "Fp:32003" and a.matches
    assert generic_square_hilbert(4, seed=3).values == generic_square_hilbert(4, seed=3).values


def test_hypercube_hilbert_function():
    R = make_ring("x,y")
    assert affine_hilbert_function(parse_ideal("[x^3, y^3]", R), 6) == [1, 3, 6, 8, 9, 9, 9]
    assert maximal_hf(9, 6) == [1, 3, 6, 9, 9, 9, 9]


def test_superfat_search():
    r = superfat_hf_search(2, trials=3, seed=1)
    assert r.found and r.best == [1, 3, 4, 4, 4]
    r3 = superfat_hf_search(3, trials=2, seed=0)
    assert all(p[-1] == 9 for p in r3.profiles)
    assert r3.field == "Fp:32003"


def test_sweeps():
    assert sweep("union", {"m": range(1, 4)}).all_pass
    assert sweep("binomial", {}).all_pass
    t = sweep("secant", {"variety": "q2", "d": [2, 3, 4, 5]})
    assert [r["dim"] for r in t.rows] == [8, 11, 11, 11]
    assert "seconds" not in t.rows[0]
    assert "seconds" in sweep("fill", {"d": [3]}, timings=True).rows[0]


def test_sweep_limits():
    with pytest.raises(RangeError):
        sweep("union", {"m": [6]})
    with pytest.raises(RangeError):
        sweep("fill", {"d": [9]})
    with pytest.raises(RangeError):
        sweep("bogus", {})
