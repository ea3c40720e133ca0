"""Ideals, Buchberger Groebner bases and the operations built on them.

Buchberger's algorithm here uses the coprime-leading-term and chain
criteria with pairs processed in order of increasing lcm degree.  It is
the performance hot spot of the package for anything beyond desk-scale
ideals.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .linalg import Subspace
from .polyring import GREVLEX, MonomialOrder, Polynomial, PolyRing, elimination_order


class IdealError(ValueError):
    pass


# ---------------------------------------------------------------------------
# term-dict helpers (internal representation: dict exp -> coeff)

def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _lead(terms: dict, key):
    return max(terms, key=key)


def _axpy(target: dict, c, shift, poly: dict):
    """target -= c * x^shift * poly, in place."""
    for e, v in poly.items():
        ne = _add_exp(e, shift)
        nv = target.get(ne)
        if nv is None:
            target[ne] = -c * v
        else:
            nv = nv - c * v
            if nv:
                target[ne] = nv
            else:
                del target[ne]


def _reduce(terms: dict, basis: list, key, one, full: bool = True) -> dict:
    """Normal form of ``terms`` modulo monic ``basis`` entries ``(lead_exp, terms)``."""
    f = dict(terms)
    remainder: dict = {}
    while f:
        e = _lead(f, key)
        c = f[e]
        for le, g in basis:
            if _divides(le, e):
                _axpy(f, c, _sub_exp(e, le), g)
                break
        else:
            if not full:
                f.update(remainder)
                return f
            remainder[e] = c
            del f[e]
    return remainder


def _monic(terms: dict, key, one) -> tuple:
    le = _lead(terms, key)
    lc = terms[le]
    if lc == one:
        return le, dict(terms)
    inv = one / lc
    return le, {e: c * inv for e, c in terms.items()}


def buchberger_terms(polys: list, key, one) -> list:
    """Reduced Groebner basis (list of ``(lead, terms)``, monic) of term dicts."""
    basis: list = []
    for t in polys:
        if t:
            basis.append(_monic(t, key, one))
    if not basis:
        return []
    # inter-reduce the input first so that redundant generators disappear early
    basis = _interreduce(basis, key, one)
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}

    def pair_key(ij):
        i, j = ij
        l = _lcm(basis[i][0], basis[j][0])
        return (sum(l), key(l), j, i)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        li, gi = basis[i]
        lj, gj = basis[j]
        l = _lcm(li, lj)
        if _add_exp(li, lj) == l:  # coprime leading monomials
            continue
        if len(gi) == 1 and len(gj) == 1:
            continue
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k][0], l):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s: dict = {}
        for e, c in gi.items():
            s[_add_exp(e, _sub_exp(l, li))] = c
        _axpy(s, one, _sub_exp(l, lj), gj)
        h = _reduce(s, basis, key, one)
        if h:
            new = _monic(h, key, one)
            n = len(basis)
            basis.append(new)
            pairs.update((k, n) for k in range(n))
    return _interreduce(basis, key, one)


def _interreduce(basis: list, key, one) -> list:
    """Autoreduce: every element is reduced by all the others until nothing changes."""
    current = list(basis)
    changed = True
    while changed:
        changed = False
        for idx in range(len(current)):
            le, g = current[idx]
            others = [b for k, b in enumerate(current) if k != idx and b is not None]
            r = _reduce(g, others, key, one)
            if r == g:
                continue
            changed = True
            current[idx] = _monic(r, key, one) if r else None
        current = [b for b in current if b is not None]
    return sorted(current, key=lambda b: key(b[0]))


# ---------------------------------------------------------------------------
# ideals

@dataclass(frozen=True)
class QuotientInfo:
    """Standard monomials of an ideal and the dimension of the quotient ring."""

    standard_monomials: tuple
    dimension: float  # int, or math.inf
    finite: bool
    truncated: bool = False


class Ideal:
    """Ideal of a PolyRing given by generators, with memoised Groebner bases."""

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        gens = []
        for g in generators:
            g = ring(g)
            if g:
                gens.append(g)
        self.ring = ring
        self.gens = tuple(gens)
        self._gb: dict = {}

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def groebner(self, order: MonomialOrder = GREVLEX) -> list:
        """Reduced, monic Groebner basis for ``order`` (cached)."""
        if order not in self._gb:
            one = self.ring.field.one
            gb = buchberger_terms([g.terms for g in self.gens], order.key, one)
            self._gb[order] = tuple(Polynomial(self.ring, t, check=False) for _, t in gb)
        return list(self._gb[order])

    def _basis_terms(self, order):
        return [(g.leading_exp(order), g.terms) for g in self.groebner(order)]

    def normal_form(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        f = self.ring(f)
        r = _reduce(f.terms, self._basis_terms(order), order.key, self.ring.field.one)
        return Polynomial(self.ring, r, check=False)

    def contains(self, f) -> bool:
        return not self.normal_form(f)

    def __contains__(self, f):
        return self.contains(f)

    def issubset(self, other: "Ideal") -> bool:
        """True when every generator of ``self`` lies in ``other``."""
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __ge__(self, other):
        return other.issubset(self)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash(tuple(self.groebner()))

    def is_zero(self) -> bool:
        return not self.gens

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def leading_exponents(self, order: MonomialOrder = GREVLEX) -> list:
        return [g.leading_exp(order) for g in self.groebner(order)]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, _dedupe(f * g for f in self.gens for g in other.gens))

    def __pow__(self, k: int) -> "Ideal":
        if not isinstance(k, int) or k < 0:
            raise IdealError("ideal powers need a nonnegative integer exponent")
        if k == 0:
            return Ideal(self.ring, [self.ring.one])
        prods = []
        for combo in itertools.combinations_with_replacement(range(len(self.gens)), k):
            p = self.ring.one
            for i in combo:
                p = p * self.gens[i]
            prods.append(p)
        return Ideal(self.ring, _dedupe(prods))

    def intersect(self, *others: "Ideal") -> "Ideal":
        out = self
        for o in others:
            out = ideal_intersection(out, o)
        return out

    # -- graded pieces ----------------------------------------------------
    def piece(self, degree) -> Subspace:
        """Degree piece I_degree of a homogeneous ideal, as a subspace of R_degree."""
        if not self.is_homogeneous():
            raise IdealError("graded pieces need homogeneous generators")
        target = self.ring.piece(degree)
        vectors = []
        for g in self.gens:
            gd = self.ring.degree_of(next(iter(g.terms)))
            if isinstance(degree, tuple):
                comp = (degree[0] - gd[0], degree[1] - gd[1])
                if min(comp) < 0:
                    continue
            else:
                comp = degree - (gd if isinstance(gd, int) else sum(gd))
                if comp < 0:
                    continue
            for m in _monomial_exps(self.ring, comp):
                shifted = {_add_exp(e, m): c for e, c in g.terms.items()}
                vectors.append(target.vector(Polynomial(self.ring, shifted, check=False)))
        return Subspace(vectors, target.dim, self.ring.field)

    def quotient(self, order: MonomialOrder = GREVLEX) -> QuotientInfo:
        return quotient_dimension(self, order)


def _dedupe(polys) -> list:
    seen, out = set(), []
    for p in polys:
        h = frozenset(p.terms.items())
        if p and h not in seen:
            seen.add(h)
            out.append(p)
    return out


def _monomial_exps(ring: PolyRing, degree):
    if isinstance(degree, tuple):
        return ring.piece(degree).monomials
    from .polyring import monomials_of_degree

    return monomials_of_degree(ring.nvars, degree)


# ---------------------------------------------------------------------------
# module-level operations

def buchberger(ideal: Ideal, order: MonomialOrder = GREVLEX) -> list:
    return ideal.groebner(order)


def quotient_dimension(ideal: Ideal, order: MonomialOrder = GREVLEX, max_degree: int | None = None) -> QuotientInfo:
    """Standard monomials and dim k[x]/I; infinite when some variable has no pure power in LT(I)."""
    ring = ideal.ring
    n = ring.nvars
    leads = ideal.leading_exponents(order)
    if any(sum(e) == 0 for e in leads):
        return QuotientInfo((), 0, True)
    bounds = [None] * n
    for e in leads:
        support = [i for i, x in enumerate(e) if x]
        if len(support) == 1:
            i = support[0]
            bounds[i] = e[i] if bounds[i] is None else min(bounds[i], e[i])
    finite = all(b is not None for b in bounds)
    if finite:
        ranges = [range(b) for b in bounds]
        std = tuple(e for e in itertools.product(*ranges) if not any(_divides(l, e) for l in leads))
        std = tuple(sorted(std, key=order.key))
        return QuotientInfo(std, len(std), True)
    # infinite: list standard monomials up to a degree bound
    top = max_degree if max_degree is not None else max((sum(l) for l in leads), default=0) + 1
    from .polyring import monomials_of_degree

    std = tuple(e for d in range(top + 1) for e in monomials_of_degree(n, d)
                if not any(_divides(l, e) for l in leads))
    return QuotientInfo(std, math.inf, False, truncated=True)


def krull_dimension(ideal: Ideal) -> int:
    """Dimension of k[x]/I from the leading-term ideal (-1 for the unit ideal)."""
    leads = ideal.leading_exponents()
    if any(sum(e) == 0 for e in leads):
        return -1
    n = ideal.ring.nvars
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if not any({i for i, x in enumerate(l) if x} <= s for l in leads):
                return size
    return 0


def ideal_intersection(i1: Ideal, i2: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1 - t)*J."""
    if i1.ring != i2.ring:
        raise IdealError("intersection needs ideals in one ring")
    ring = i1.ring
    if i1.is_zero() or i2.is_zero():
        return Ideal(ring, [])
    name = "_t"
    while name in ring.variables:
        name += "_"
    big = ring.extend([name])
    t = big.var(name)
    gens = [t * g.change_ring(big) for g in i1.gens] + [(1 - t) * g.change_ring(big) for g in i2.gens]
    gb = Ideal(big, gens).groebner(elimination_order(1))
    kept = []
    for g in gb:
        if all(e[0] == 0 for e in g.terms):
            kept.append(Polynomial(ring, {e[1:]: c for e, c in g.terms.items()}, check=False))
    return Ideal(ring, kept)


def truncated_intersection(ideals: Sequence[Ideal], degree) -> Subspace:
    """Intersection of the degree pieces of homogeneous ideals, as a subspace of R_degree."""
    if not ideals:
        raise IdealError("need at least one ideal")
    pieces = [I.piece(degree) for I in ideals]
    return pieces[0].intersect(*pieces[1:])


def ideal_contains(big: Ideal, small: Ideal) -> bool:
    """True when ``small`` ⊆ ``big``."""
    return small.issubset(big)


def ideal_equal(i1: Ideal, i2: Ideal) -> bool:
    return i1 == i2


def ideal_sum(*ideals: Ideal) -> Ideal:
    ring = ideals[0].ring
    return Ideal(ring, [g for I in ideals for g in I.gens])


def ideal_product(i1: Ideal, i2: Ideal) -> Ideal:
    return i1 * i2


def ideal_power(ideal: Ideal, k: int) -> Ideal:
    return ideal ** k


def maximal_ideal(ring: PolyRing) -> Ideal:
    """The ideal of the origin, (x1, ..., xn)."""
    return Ideal(ring, ring.gens)


def minimal_generator_degrees(ideal: Ideal) -> list[int]:
    """Degrees of a minimal homogeneous generating set (sorted, with multiplicity)."""
    if not ideal.is_homogeneous():
        raise IdealError("minimal generator degrees need a homogeneous ideal")
    if ideal.ring.bigraded:
        raise IdealError("minimal generator degrees are computed for singly graded rings")
    ring = ideal.ring
    degs = sorted({g.degree() for g in ideal.gens})
    out = []
    for t in degs:
        full = ideal.piece(t)
        lower = Ideal(ring, [g for g in ideal.gens if g.degree() < t])
        below = lower.piece(t) if lower.gens else Subspace.zero(full.ambient, ring.field)
        out.extend([t] * (full.dim - below.dim))
    return out
