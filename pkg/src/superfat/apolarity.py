"""Inverse systems, catalecticants and normal forms of forms near 2-squares.

The pairing is the apolar one: variables act as partial derivatives, so
<x^a, x^b> = a! when a == b and 0 otherwise.  Perp spaces are computed by
plain linear algebra on graded pieces; no Groebner bases are involved.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .grobner import Ideal
from .linalg import Matrix, Subspace, rank_rows
from .polyring import GradedPiece, GradingError, Polynomial, PolyRing


class DegreeMismatch(ValueError):
    pass


class NotDivisible(ValueError):
    pass


class NotOnQuadric(ValueError):
    pass


@dataclass(frozen=True)
class PerpSpace:
    """(I_degree)^perp inside R_degree."""

    piece: GradedPiece
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def basis(self) -> list:
        return [self.piece.poly(v) for v in self.subspace.basis]

    def contains(self, f: Polynomial) -> bool:
        return span_membership(f, self)

    def __contains__(self, f):
        return self.contains(f)


@dataclass(frozen=True)
class Catalecticant:
    """Matrix of the apolar pairing of F against products row_monomial * column_monomial."""

    form: Polynomial
    rows: tuple
    cols: tuple
    matrix: Matrix

    def rank(self) -> int:
        return self.matrix.rank()

    def nonzero_positions(self) -> set:
        return {(i, j) for i in range(self.matrix.nrows) for j in range(self.matrix.ncols) if self.matrix[i, j]}


def _pairing_weights(piece: GradedPiece, convention: str) -> list:
    if convention == "apolar":
        return piece.gram_diagonal()
    if convention == "plain":
        return [1] * piece.dim
    raise ValueError(f"unknown pairing convention {convention!r}")


def perp_space(I: Ideal, degree, convention: str = "apolar") -> PerpSpace:
    """Forms of the given degree annihilated by every element of I."""
    ring = I.ring
    piece = GradedPiece(ring, degree)
    Id = I.piece(degree)
    weights = _pairing_weights(piece, convention)
    rows = [[c * w for c, w in zip(v, weights)] for v in Id.basis]
    if rows:
        from .linalg import kernel_rows

        kern = kernel_rows(rows, ring.field, piece.dim)
    else:
        kern = Subspace.full(piece.dim, ring.field).basis
    return PerpSpace(piece, Subspace(kern, piece.dim, ring.field))


def _form_degree(F: Polynomial):
    if not F or not F.is_homogeneous():
        raise DegreeMismatch("expected a nonzero homogeneous form")
    e = next(iter(F.terms))
    return F.ring.degree_of(e)


def catalecticant(F: Polynomial, split) -> Catalecticant:
    """(split, deg F - split) catalecticant; ``split`` is an int or a bidegree."""
    ring = F.ring
    d = _form_degree(F)
    if isinstance(d, tuple):
        if not isinstance(split, tuple) or not all(0 <= a <= b for a, b in zip(split, d)):
            raise DegreeMismatch(f"split {split!r} does not fit bidegree {d}")
        comp = (d[0] - split[0], d[1] - split[1])
    else:
        if isinstance(split, tuple) or not 0 <= split <= d:
            raise DegreeMismatch(f"split {split!r} does not fit degree {d}")
        comp = d - split
    rows = GradedPiece(ring, split).monomials
    cols = GradedPiece(ring, comp).monomials
    from .polyring import _factorial_of

    zero = ring.field.zero
    data = []
    for u in rows:
        row = []
        for v in cols:
            e = tuple(a + b for a, b in zip(u, v))
            c = F.terms.get(e)
            row.append(c * _factorial_of(e) if c else zero)
        data.append(row)
    return Catalecticant(F, rows, cols, Matrix(data, ring.field, len(cols)))


def span_membership(F: Polynomial, S) -> bool:
    """Exact test F in S, where S is a PerpSpace (or a (piece, Subspace) pair)."""
    if isinstance(S, PerpSpace):
        piece, sub = S.piece, S.subspace
    else:
        piece, sub = S
    try:
        v = piece.vector(F)
    except GradingError as exc:
        raise DegreeMismatch(str(exc)) from None
    return sub.contains(v)


# ---------------------------------------------------------------------------
# normal forms on the second osculating variety

@dataclass(frozen=True)
class Tau2Form:
    """Classification of F = l^(d-2) G by the conic G restricted to l = 0.

    case is "square-free" (restriction = l0*l1, distinct), "double"
    (restriction = l0^2), "tangent" (restriction vanishes) or
    "extension-required" (restriction splits only over an extension).
    """

    case: str
    ell: Polynomial
    factors: tuple
    restriction: Polynomial
    square_ideal: Ideal | None = None
    discriminant: object = None


def _linear_vector(f: Polynomial) -> list:
    ring = f.ring
    v = [ring.field.zero] * ring.nvars
    for e, c in f.terms.items():
        if sum(e) != 1:
            raise ValueError(f"{f} is not a linear form")
        v[e.index(1)] = c
    return v


def _normalize_linear(f: Polynomial) -> Polynomial:
    v = _linear_vector(f)
    lead = next(c for c in v if c)
    return f.scale(f.ring.field.one / lead)


def tau2_normal_form(F: Polynomial, ell: Polynomial, G: Polynomial) -> Tau2Form:
    """Classify a form F = ell^(d-2) * G (ternary, ell linear, G a conic)."""
    ring = F.ring
    if ring.nvars != 3 or ring.bigraded:
        raise ValueError("tau2 normal form is for ternary forms")
    d = _form_degree(F)
    if _form_degree(G) != 2:
        raise ValueError("G must be a conic")
    if F != ell ** (d - 2) * G:
        raise NotDivisible("F is not ell^(d-2) * G")
    field = ring.field
    lv = _linear_vector(ell)
    # eliminate the last variable with a nonzero coefficient in ell
    k = max(i for i, c in enumerate(lv) if c)
    others = [i for i in range(3) if i != k]
    xs = ring.gens
    solved = ring.zero
    for i in others:
        if lv[i]:
            solved = solved - xs[i].scale(lv[i] / lv[k])
    H = G.substitute({ring.variables[k]: solved})
    u, v = xs[others[0]], xs[others[1]]
    eu = tuple(2 if i == others[0] else 0 for i in range(3))
    ev = tuple(2 if i == others[1] else 0 for i in range(3))
    euv = tuple(1 if i in others else 0 for i in range(3))
    alpha, beta, gamma = H.coeff(eu), H.coeff(euv), H.coeff(ev)
    if not H:
        return Tau2Form("tangent", ell, (), H)
    disc = beta * beta - 4 * alpha * gamma
    if not disc:
        l0 = u + v.scale(beta / (2 * alpha)) if alpha else v
        return Tau2Form("double", ell, (_normalize_linear(l0),), H, discriminant=disc)
    if alpha:
        r = field.sqrt(disc)
        if r is None:
            return Tau2Form("extension-required", ell, (), H, discriminant=disc)
        r1 = (-beta + r) / (2 * alpha)
        r2 = (-beta - r) / (2 * alpha)
        l0, l1 = u - v.scale(r1), u - v.scale(r2)
    else:
        l0, l1 = v, u.scale(beta) + v.scale(gamma)
    l0, l1 = _normalize_linear(l0), _normalize_linear(l1)
    # dual forms: derivations along the new coordinates X0 = l0, X1 = l1
    A = Matrix([_linear_vector(l0), _linear_vector(l1), lv], field)
    inv_cols = _inverse(A)
    duals = [ring.linear_form([inv_cols[i][j] for i in range(3)]) for j in range(2)]
    sq = Ideal(ring, [duals[0] ** 2, duals[1] ** 2])
    return Tau2Form("square-free", ell, (l0, l1), H, square_ideal=sq, discriminant=disc)


def _inverse(A: Matrix) -> list:
    n = A.nrows
    field = A.field
    aug = [list(A.data[i]) + [field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    red, piv = Matrix(aug, field).rref()
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [list(red.data[i][n:]) for i in range(n)]


@dataclass(frozen=True)
class QQMonomial:
    """Certificate that a form on the quadric a0*a3 = a1*a2 is l0^(d-2) l1 l2 up to coordinates.

    In the "monomial" case, ``scalar * X0^(d-2) X1 X2`` equals the form for
    the listed substitution; in the "factored" case the form is the product
    of ``factors`` (with multiplicity) directly.
    """

    case: str
    form: Polynomial
    substitution: tuple
    scalar: object
    factors: tuple
    verified: bool
    in_tangent_plane: bool
    independent: bool


def qq_form(a: Sequence, ells: Sequence[Polynomial], d: int) -> Polynomial:
    a0, a1, a2, a3 = a
    l0, l1, l2 = ells
    return l0 ** (d - 2) * (l0 * l0 * a0 + l0 * l1 * a1 + l0 * l2 * a2 + l1 * l2 * a3)


def qq_monomialize(a: Sequence, ells: Sequence[Polynomial], d: int) -> QQMonomial:
    """Write l0^(d-2)(a0 l0^2 + a1 l0 l1 + a2 l0 l2 + a3 l1 l2) as a monomial in new coordinates."""
    if d < 3:
        raise ValueError("d must be at least 3")
    ring = ells[0].ring
    field = ring.field
    a0, a1, a2, a3 = (field(x) if not field.contains(x) else x for x in a)
    if a0 * a3 != a1 * a2:
        raise NotOnQuadric("point is not on the quadric a0*a3 = a1*a2")
    l0, l1, l2 = ells
    form = qq_form((a0, a1, a2, a3), ells, d)
    in_tangent = not a3
    if a0:
        X0 = l0
        X1 = l0.scale(a0) + l1.scale(a1)
        X2 = l0.scale(a0) + l2.scale(a2)
        scalar = field.one / a0
        verified = form.scale(a0) == X0 ** (d - 2) * X1 * X2
        vecs = [_linear_vector(X0), _linear_vector(X1), _linear_vector(X2)]
        independent = rank_rows(vecs, field, ring.nvars) == 3
        return QQMonomial("monomial", form, (X0, X1, X2), scalar, (X0,) * (d - 2) + (X1, X2),
                          verified, in_tangent, independent)
    if not a1:
        factors = (l0,) * (d - 2) + (l2, l0.scale(a2) + l1.scale(a3))
    else:
        factors = (l0,) * (d - 2) + (l1, l0.scale(a1) + l2.scale(a3))
    prod = ring.one
    for f in factors:
        prod = prod * f
    nonzero = [f for f in factors if f]
    independent = len(nonzero) == len(factors) and rank_rows(
        [_linear_vector(f) for f in set(factors[-3:])], field, ring.nvars) == len(set(factors[-3:]))
    return QQMonomial("factored", form, (), field.one, factors, prod == form, in_tangent, independent)
