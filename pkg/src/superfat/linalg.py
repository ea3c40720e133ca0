"""Exact dense linear algebra over Q, Q(i) and GF(p).

Matrices over GF(p) are eliminated by the int64 kernels in ``_kernels``;
over Q we use Gauss-Jordan on Fractions with smallest-bit-size pivoting,
and fraction-free Bareiss elimination when only the rank is wanted.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .fields import QQ, QQI, Field, FieldMismatch, ModP, PrimeField, field_of


class DimensionMismatch(ValueError):
    pass


def _bits(x) -> int:
    if isinstance(x, Fraction):
        return x.numerator.bit_length() + x.denominator.bit_length()
    if isinstance(x, int):
        return x.bit_length()
    if hasattr(x, "norm"):
        n = x.norm()
        return n.numerator.bit_length() + n.denominator.bit_length()
    return 0


class Matrix:
    """Immutable dense matrix with entries in a single exact field."""

    __slots__ = ("field", "nrows", "ncols", "data")

    def __init__(self, rows: Sequence[Sequence], field: Field | None = None, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if field is None:
            field = _infer_field(x for r in rows for x in r)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
        converted = []
        for r in rows:
            converted.append(tuple(coerce(field, x) for x in r))
        self.field = field
        self.nrows = len(converted)
        self.ncols = ncols
        self.data = tuple(converted)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        z = field.zero
        return cls([[z] * ncols for _ in range(nrows)], field, ncols)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        z, o = field.zero, field.one
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], field, n)

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def rows(self):
        return [list(r) for r in self.data]

    def transpose(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.data)] if self.nrows else [],
                      self.field, self.nrows)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.data == other.data

    def __hash__(self):
        return hash((self.field, self.data))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field})"

    def apply(self, v: Sequence):
        if len(v) != self.ncols:
            raise DimensionMismatch("vector length does not match column count")
        zero = self.field.zero
        return tuple(sum((a * b for a, b in zip(row, v)), zero) for row in self.data)

    def rref(self):
        """Return ``(R, pivots)``: the reduced row echelon form and its pivot columns."""
        rows, pivots = rref_rows(self.rows(), self.field, self.ncols)
        return Matrix(rows, self.field, self.ncols), pivots

    def rank(self) -> int:
        return rank_rows(self.rows(), self.field, self.ncols)

    def kernel(self) -> list[tuple]:
        return kernel_rows(self.rows(), self.field, self.ncols)


def coerce(field: Field, x):
    """Return ``x`` as an element of ``field``; integers and rationals are embedded."""
    if field.contains(x):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not field elements")
    return field(x)


def _infer_field(entries: Iterable) -> Field:
    found = None
    for x in entries:
        if isinstance(x, int) and not isinstance(x, bool):
            continue
        f = field_of(x)
        if found is None:
            found = f
        elif f != found:
            if {found, f} == {QQ, QQI}:
                found = QQI
                continue
            raise FieldMismatch(f"mixed fields {found} and {f}")
    return found or QQ


# ---------------------------------------------------------------------------
# row-list primitives (rows are lists of field elements)

def _to_int_array(rows, p: int, ncols: int) -> np.ndarray:
    arr = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            arr[i, j] = x.v if isinstance(x, ModP) else int(x) % p
    return arr


def _rref_generic(rows, field: Field, ncols: int):
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best, best_bits = -1, None
        for i in range(r, nrows):
            x = m[i][c]
            if x:
                b = _bits(x)
                if best_bits is None or b < best_bits:
                    best, best_bits = i, b
                    if b <= 2:
                        break
        if best < 0:
            continue
        m[r], m[best] = m[best], m[r]
        inv = field.one / m[r][c]
        prow = [x * inv for x in m[r]]
        m[r] = prow
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j in range(c, ncols):
                        if prow[j]:
                            row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return m, pivots


def rref_rows(rows, field: Field, ncols: int):
    """Reduced row echelon form of a row list; returns ``(rows, pivots)``."""
    if isinstance(field, PrimeField):
        if not rows:
            return [], []
        arr, piv = _kernels.rref_modp(_to_int_array(rows, field.p, ncols), field.p)
        p = field.p
        out = [[ModP(int(x), p) for x in arr[i]] for i in range(arr.shape[0])]
        return out, [int(c) for c in piv]
    return _rref_generic(rows, field, ncols)


def _bareiss_rank(int_rows, ncols: int) -> int:
    m = [list(r) for r in int_rows if any(r)]
    nrows = len(m)
    r, prev = 0, 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        best = None
        for i in range(r, nrows):
            if m[i][c]:
                b = abs(m[i][c]).bit_length()
                if best is None or b < best:
                    piv, best = i, b
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (pv * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = pv
        r += 1
    return r


def rank_rows(rows, field: Field, ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    if isinstance(field, PrimeField):
        return _kernels.rank_modp(_to_int_array(rows, field.p, ncols), field.p)
    if field is QQ:
        int_rows = []
        for r in rows:
            den = lcm(*(Fraction(x).denominator for x in r)) if r else 1
            int_rows.append([int(Fraction(x) * den) for x in r])
        return _bareiss_rank(int_rows, ncols)
    return len(_rref_generic(rows, field, ncols)[1])


def kernel_rows(rows, field: Field, ncols: int) -> list[tuple]:
    """Basis of the right null space, one vector per free column."""
    red, pivots = rref_rows(rows, field, ncols)
    pivset = set(pivots)
    zero, one = field.zero, field.one
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][free]
        basis.append(tuple(v))
    return basis


def rref(m: Matrix):
    return m.rref()


def kernel(m: Matrix) -> list[tuple]:
    return m.kernel()


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """Linear subspace of field^n stored by its canonical (rref) basis."""

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, vectors: Iterable[Sequence], ambient: int, field: Field = QQ):
        rows = []
        for v in vectors:
            v = list(v)
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient}")
            rows.append([coerce(field, x) for x in v])
        red, piv = rref_rows(rows, field, ambient) if rows else ([], [])
        self.field = field
        self.ambient = ambient
        self.basis = tuple(tuple(red[i]) for i in range(len(piv)))

    @classmethod
    def zero(cls, ambient: int, field: Field = QQ) -> "Subspace":
        return cls([], ambient, field)

    @classmethod
    def full(cls, ambient: int, field: Field = QQ) -> "Subspace":
        return cls(Matrix.identity(ambient, field).rows(), ambient, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace"):
        if other.ambient != self.ambient:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        if other.field != self.field:
            raise FieldMismatch("subspaces over different fields")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.basis + other.basis, self.ambient, self.field)

    def perp(self) -> "Subspace":
        """Orthogonal complement for the standard dot product."""
        if not self.basis:
            return Subspace.full(self.ambient, self.field)
        return Subspace(kernel_rows([list(b) for b in self.basis], self.field, self.ambient),
                        self.ambient, self.field)

    def intersect(self, *others: "Subspace") -> "Subspace":
        for o in others:
            self._check(o)
        # (A ∩ B ∩ ...) = (A^⊥ + B^⊥ + ...)^⊥
        rows = list(self.perp().basis)
        for o in others:
            rows.extend(o.perp().basis)
        if not rows:
            return Subspace.full(self.ambient, self.field)
        return Subspace(kernel_rows([list(r) for r in rows], self.field, self.ambient),
                        self.ambient, self.field)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatch("vector length does not match ambient dimension")
        v = [coerce(self.field, x) for x in v]
        if not any(v):
            return True
        return rank_rows([list(b) for b in self.basis] + [v], self.field, self.ambient) == self.dim

    def __contains__(self, v):
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return (self + other).dim == other.dim

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.field == other.field and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field={self.field})"


def subspace_ops(a: Subspace, b: Subspace) -> dict:
    """Sum and intersection of two subspaces plus a membership test closure."""
    a._check(b)
    return {"sum": a + b, "intersection": a & b, "contains": lambda v: a.contains(v) and b.contains(v)}
