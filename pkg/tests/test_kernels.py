import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from superfat import _kernels

P = 32003


@st.composite
def int_matrices(draw):
    r, c = draw(st.integers(1, 8)), draw(st.integers(1, 8))
    vals = draw(st.lists(st.integers(0, P - 1), min_size=r * c, max_size=r * c))
    a = np.array(vals, dtype=np.int64).reshape(r, c)
    if draw(st.booleans()) and r > 1:
        a[-1] = (a[0] * 5) % P  # force a dependent row
    return a


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")
@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_numba_matches_numpy(a):
    r1, p1 = _kernels.rref_modp_numpy(a.copy(), P)
    r2, p2 = _kernels.rref_modp_numba(a.copy(), P)
    assert np.array_equal(r1, r2)
    assert list(p1) == list(p2)


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_rref_is_reduced(a):
    r, piv = _kernels.rref_modp(a.copy(), P)
    for k, j in enumerate(piv):
        assert r[k, j] == 1
        assert all(r[i, j] == 0 for i in range(r.shape[0]) if i != k)
    assert not r[len(piv):].any()


def test_rank_small_prime():
    a = np.array([[1, 2], [2, 4]], dtype=np.int64)
    assert _kernels.rank_modp(a, 7) == 1
    assert _kernels.rank_modp(np.array([[1, 2], [3, 4]], dtype=np.int64), 2) == 1


def test_env_var_selects_numpy_backend():
    env = dict(os.environ, SUPERFAT_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", "from superfat import _kernels; print(_kernels.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
