"""Dense Gauss-Jordan elimination over GF(p) on int64 arrays.

Two interchangeable implementations: a numba ``@njit`` scalar loop and a
vectorised numpy one.  The numba path is used when numba imports and the
environment variable ``SUPERFAT_NUMBA`` is not ``0``.  Both return identical
results (the reduced row echelon form is unique).

Residues must satisfy ``p < 2**31`` so that products fit in int64.
"""
from __future__ import annotations

import os

import numpy as np

MAX_MODULUS = 2**31

try:  # pragma: no cover - depends on the environment
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def _env_wants_numba() -> bool:
    return os.environ.get("SUPERFAT_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


USE_NUMBA = HAVE_NUMBA and _env_wants_numba()


def _inv_mod(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


def rref_modp_numpy(a: np.ndarray, p: int):
    """Return ``(R, pivots)`` with R the reduced row echelon form of ``a`` mod p."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * _inv_mod(m[r, c], p)) % p
        factors = m[:, c].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(factors[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, np.array(pivots, dtype=np.int64)


if HAVE_NUMBA:

    @njit(cache=True)
    def _pow_mod(a, e, p):  # pragma: no cover - compiled
        result = 1
        a %= p
        while e > 0:
            if e & 1:
                result = (result * a) % p
            a = (a * a) % p
            e >>= 1
        return result

    @njit(cache=True)
    def _rref_modp_jit(m, p):  # pragma: no cover - compiled
        rows, cols = m.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if m[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    tmp = m[r, j]
                    m[r, j] = m[piv, j]
                    m[piv, j] = tmp
            inv = _pow_mod(m[r, c], p - 2, p)
            for j in range(cols):
                m[r, j] = (m[r, j] * inv) % p
            for i in range(rows):
                if i != r:
                    f = m[i, c]
                    if f != 0:
                        for j in range(c, cols):
                            m[i, j] = (m[i, j] - f * m[r, j]) % p
            pivots[r] = c
            r += 1
        return pivots[:r]

    def rref_modp_numba(a: np.ndarray, p: int):
        m = np.array(a, dtype=np.int64) % p
        pivots = _rref_modp_jit(m, np.int64(p))
        return m, pivots

else:  # pragma: no cover
    rref_modp_numba = None


def rref_modp(a, p: int, use_numba: bool | None = None):
    """Dispatch to the numba or numpy elimination (``use_numba=None`` follows the env flag)."""
    if p >= MAX_MODULUS:
        raise ValueError(f"modulus {p} too large for int64 kernels")
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("rref_modp expects a 2-d array")
    if a.size == 0:
        return a.copy() % p, np.zeros(0, dtype=np.int64)
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba and rref_modp_numba is not None:
        return rref_modp_numba(a, p)
    return rref_modp_numpy(a, p)


def rank_modp(a, p: int, use_numba: bool | None = None) -> int:
    return len(rref_modp(a, p, use_numba)[1])


def backend() -> str:
    return "numba" if (USE_NUMBA and rref_modp_numba is not None) else "numpy"
