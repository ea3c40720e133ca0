"""Multivariate polynomials with total-degree or bidegree grading.

A polynomial is a dict from exponent tuples to nonzero coefficients in the
ring's field.  Rings may be bigraded by splitting the variables into two
blocks, as in ``k[s0, s1; t0, t1]``.

Apolar pairing convention: a monomial x^a acts on x^b as the differential
operator d^a/dx^a, so <x^a, x^a> = a! and distinct monomials are orthogonal.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .fields import QQ, Field
from .linalg import coerce

INFINITY = math.inf


class UnknownVariable(KeyError):
    pass


class GradingError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial orders

def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


class MonomialOrder:
    """Total monomial order given by a sort key (larger key = larger monomial)."""

    def __init__(self, name: str, key, nelim: int = 0):
        self.name = name
        self.key = key
        self.nelim = nelim

    def __repr__(self):
        return f"MonomialOrder({self.name})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


GREVLEX = MonomialOrder("grevlex", _grevlex_key)
LEX = MonomialOrder("lex", tuple)


def elimination_order(k: int) -> MonomialOrder:
    """Block order: grevlex on the first ``k`` variables, ties broken by grevlex on the rest."""
    return MonomialOrder(f"elim({k})", lambda e: (_grevlex_key(e[:k]), _grevlex_key(e[k:])), k)


# ---------------------------------------------------------------------------
# monomial enumeration

@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple:
    """Exponent vectors of total degree d in n variables, descending lex order."""
    if d < 0:
        return ()
    if n == 0:
        return ((),) if d == 0 else ()
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def _factorial_of(e) -> int:
    r = 1
    for x in e:
        r *= math.factorial(x)
    return r


# ---------------------------------------------------------------------------
# rings

class PolyRing:
    """Polynomial ring over an exact field, optionally bigraded."""

    def __init__(self, variables: Sequence[str], field: Field = QQ, blocks: Sequence[int] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        if blocks is not None:
            blocks = tuple(blocks)
            if len(blocks) != 2 or min(blocks) < 1 or sum(blocks) != len(variables):
                raise GradingError("bigraded rings need exactly two nonempty variable blocks")
        self.variables = variables
        self.field = field
        self.blocks = blocks
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}

    @property
    def bigraded(self) -> bool:
        return self.blocks is not None

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.field == other.field and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.variables, self.field, self.blocks))

    def __repr__(self):
        if self.bigraded:
            k = self.blocks[0]
            names = ",".join(self.variables[:k]) + ";" + ",".join(self.variables[k:])
        else:
            names = ",".join(self.variables)
        return f"PolyRing({self.field}[{names}])"

    def index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise UnknownVariable(var)
            return var
        try:
            return self._index[var]
        except KeyError:
            raise UnknownVariable(f"unknown variable {var!r}") from None

    def var(self, name) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field.one}, check=False)

    @property
    def gens(self) -> tuple:
        return tuple(self.var(v) for v in self.variables)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            return x.change_ring(self)
        return self.constant(x)

    def constant(self, c) -> "Polynomial":
        c = coerce(self.field, c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {}, check=False)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, check=False)

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def monomial(self, exp: Sequence[int], coeff=1) -> "Polynomial":
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise ValueError("exponent length does not match variable count")
        return Polynomial(self, {exp: coeff})

    def degree_of(self, exp):
        if self.blocks is None:
            return sum(exp)
        k = self.blocks[0]
        return (sum(exp[:k]), sum(exp[k:]))

    def piece(self, degree) -> "GradedPiece":
        return GradedPiece(self, degree)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.variables, field, self.blocks)

    def extend(self, names: Sequence[str], front: bool = True) -> "PolyRing":
        """Ring with extra (ungraded) variables, placed first by default."""
        names = tuple(names)
        variables = names + self.variables if front else self.variables + names
        return PolyRing(variables, self.field)

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        if len(coeffs) != self.nvars:
            raise ValueError("need one coefficient per variable")
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * self.nvars
            e[i] = 1
            terms[tuple(e)] = c
        return Polynomial(self, terms)


class GradedPiece:
    """Degree-d (or bidegree-(a,b)) piece of a ring with a fixed monomial basis.

    Basis order is descending lexicographic on exponent vectors, e.g.
    x0^2, x0*x1, x0*x2, x1^2, x1*x2, x2^2.
    """

    def __init__(self, ring: PolyRing, degree):
        self.ring = ring
        if ring.bigraded:
            if isinstance(degree, int):
                raise GradingError("bigraded ring needs a bidegree (a, b)")
            a, b = degree
            k = ring.blocks[0]
            self.degree = (a, b)
            self.monomials = tuple(s + t for s in monomials_of_degree(k, a)
                                   for t in monomials_of_degree(ring.nvars - k, b))
        else:
            if not isinstance(degree, int):
                raise GradingError("singly graded ring needs an integer degree")
            self.degree = degree
            self.monomials = monomials_of_degree(ring.nvars, degree) if degree >= 0 else ()
        self.index = {m: i for i, m in enumerate(self.monomials)}

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def __repr__(self):
        return f"GradedPiece({self.ring}, degree={self.degree}, dim={self.dim})"

    def vector(self, f: "Polynomial") -> tuple:
        zero = self.ring.field.zero
        v = [zero] * self.dim
        for e, c in f.terms.items():
            try:
                v[self.index[e]] = c
            except KeyError:
                raise GradingError(f"{f} has a term outside degree {self.degree}") from None
        return tuple(v)

    def poly(self, vec: Sequence) -> "Polynomial":
        return Polynomial(self.ring, {m: c for m, c in zip(self.monomials, vec) if c})

    def basis_polys(self) -> list:
        one = self.ring.field.one
        return [Polynomial(self.ring, {m: one}, check=False) for m in self.monomials]

    def gram_diagonal(self) -> list[int]:
        """Diagonal of the apolar Gram matrix on the monomial basis (a! per monomial)."""
        return [_factorial_of(m) for m in self.monomials]


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping | None = None, check: bool = True):
        self.ring = ring
        if terms is None:
            terms = {}
        if check:
            field = ring.field
            clean: dict = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != ring.nvars:
                    raise ValueError("exponent length does not match variable count")
                c = coerce(field, c)
                clean[e] = clean[e] + c if e in clean else c
            terms = {e: c for e, c in clean.items() if c}
        self.terms = terms

    # -- basic protocol ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"polynomials from different rings: {self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        from .ioparse import format_polynomial

        return format_polynomial(self)

    def copy(self) -> "Polynomial":
        return Polynomial(self.ring, dict(self.terms), check=False)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        terms = dict(self.terms)
        for e, c in o.terms.items():
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        return Polynomial(self.ring, terms, check=False)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = coerce(self.ring.field, c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()}, check=False)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        o = self._coerce(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if e in terms:
                    terms[e] = terms[e] + c1 * c2
                else:
                    terms[e] = c1 * c2
        return Polynomial(self.ring, {e: c for e, c in terms.items() if c}, check=False)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            q, r = self.divmod_exact(c)
            if r:
                raise ArithmeticError("polynomial division is not exact")
            return q
        return self.scale(self.ring.field.one / coerce(self.ring.field, c))

    # -- structure --------------------------------------------------------
    def coeff(self, exp) -> object:
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def degree(self):
        """Total degree (-1 for the zero polynomial)."""
        return max((sum(e) for e in self.terms), default=-1)

    def degrees(self) -> set:
        return {self.ring.degree_of(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def bidegree(self):
        if not self.ring.bigraded:
            raise GradingError("bidegree needs a bigraded ring")
        degs = self.degrees()
        if len(degs) != 1:
            raise GradingError(f"{self} is not bihomogeneous")
        return next(iter(degs))

    def homogeneous_component(self, k) -> "Polynomial":
        """Sum of the terms of total degree ``k`` (or bidegree ``k`` in a bigraded ring)."""
        if isinstance(k, tuple):
            return Polynomial(self.ring, {e: c for e, c in self.terms.items()
                                          if self.ring.degree_of(e) == k}, check=False)
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == k}, check=False)

    def order(self):
        """Order at the origin: least total degree of a term, infinity for 0."""
        return min((sum(e) for e in self.terms), default=INFINITY)

    def tangent_cone(self) -> "Polynomial":
        """Lowest-degree homogeneous component."""
        if not self.terms:
            return self
        return self.homogeneous_component(self.order())

    def leading_exp(self, order: MonomialOrder = GREVLEX):
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_exp(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.one / self.leading_coeff(order))

    def variables_used(self) -> set:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # -- calculus ---------------------------------------------------------
    def derivative(self, var) -> "Polynomial":
        i = self.ring.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = c * e[i]
        return Polynomial(self.ring, {e: c for e, c in terms.items() if c}, check=False)

    def substitute(self, assignments: Mapping, ring: PolyRing | None = None) -> "Polynomial":
        """Replace variables by polynomials or scalars.

        With ``ring`` given, the result lives there and untouched variables are
        matched by name.
        """
        target = ring or self.ring
        same = target == self.ring
        images = {}
        for k, v in assignments.items():
            i = self.ring.index(k)
            images[i] = v if isinstance(v, Polynomial) else target.constant(v)
            if images[i].ring != target:
                raise ValueError("substituted polynomial lives in a different ring")
        if not same:
            for j, name in enumerate(self.ring.variables):
                if j not in images:
                    images[j] = target.var(name)
        cache: dict = {}
        result = target.zero
        for e, c in self.terms.items():
            if same:
                rest = tuple(0 if i in images else x for i, x in enumerate(e))
                term = Polynomial(target, {rest: c}, check=False)
            else:
                term = target.constant(c)
            for i, k in enumerate(e):
                if k and i in images:
                    if (i, k) not in cache:
                        cache[i, k] = images[i] ** k
                    term = term * cache[i, k]
            result = result + term
        return result

    def evaluate(self, point: Sequence):
        """Value at a point given as one field element per variable."""
        field = self.ring.field
        point = [coerce(field, x) for x in point]
        total = field.zero
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def restrict_to_line(self, direction: Sequence) -> "Polynomial":
        """f(a1 t, ..., an t) as a univariate polynomial in t."""
        field = self.ring.field
        a = [coerce(field, x) for x in direction]
        if len(a) != self.ring.nvars:
            raise ValueError("direction length does not match variable count")
        if not any(a):
            raise ValueError("zero direction does not define a line")
        line = PolyRing(("t",), field)
        terms: dict = {}
        for e, c in self.terms.items():
            v = c
            for x, k in zip(a, e):
                if k:
                    v = v * x ** k
            d = (sum(e),)
            terms[d] = terms[d] + v if d in terms else v
        return Polynomial(line, {e: c for e, c in terms.items() if c}, check=False)

    def change_ring(self, ring: PolyRing) -> "Polynomial":
        """Map into a ring with a superset of the variables (matched by name)."""
        idx = [ring.index(v) for v in self.ring.variables]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, k in zip(idx, e):
                ne[i] = k
            terms[tuple(ne)] = c
        return Polynomial(ring, terms)

    def divmod_exact(self, g: "Polynomial"):
        """Multivariate division by one polynomial (grevlex); returns (quotient, remainder)."""
        g = self._coerce(g)
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = g.leading_exp()
        lc = g.terms[lead]
        q = self.ring.zero
        r = self.ring.zero
        p = self
        while p:
            e = p.leading_exp()
            c = p.terms[e]
            if all(a >= b for a, b in zip(e, lead)):
                m = Polynomial(self.ring, {tuple(a - b for a, b in zip(e, lead)): c / lc}, check=False)
                q = q + m
                p = p - m * g
            else:
                t = Polynomial(self.ring, {e: c}, check=False)
                r = r + t
                p = p - t
        return q, r


def apolar_action(g: Polynomial, f: Polynomial) -> Polynomial:
    """g(d/dx) applied to f (variables acting as derivations)."""
    if g.ring != f.ring:
        raise ValueError("apolar action needs both polynomials in one ring")
    terms: dict = {}
    for a, cg in g.terms.items():
        for b, cf in f.terms.items():
            if all(x >= y for x, y in zip(b, a)):
                mult = 1
                for x, y in zip(b, a):
                    mult *= math.perm(x, y)
                e = tuple(x - y for x, y in zip(b, a))
                v = cg * cf * mult
                terms[e] = terms[e] + v if e in terms else v
    return Polynomial(f.ring, {e: c for e, c in terms.items() if c}, check=False)


def apolar_pairing(g: Polynomial, f: Polynomial):
    """Scalar <g, f> for forms of equal degree: the constant term of g(d/dx) f."""
    return apolar_action(g, f).coeff((0,) * f.ring.nvars)


def homogeneous_component(f: Polynomial, k) -> Polynomial:
    return f.homogeneous_component(k)


def order_at_origin(f: Polynomial):
    return f.order()


def restrict_to_line(f: Polynomial, direction: Sequence) -> Polynomial:
    return f.restrict_to_line(direction)


def differentiate(f: Polynomial, var) -> Polynomial:
    return f.derivative(var)


def substitute(f: Polynomial, assignments: Mapping, ring: PolyRing | None = None) -> Polynomial:
    return f.substitute(assignments, ring)


def polys_from(ring: PolyRing, items: Iterable) -> list:
    return [ring(x) for x in items]
