"""Text syntax for rings, polynomials and ideals, and JSON report output.

Grammar (whitespace-insensitive, no implicit multiplication)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*' factor) | ('/' NUMBER))*
    factor := atom ('^' NAT)?
    atom   := NUMBER | VAR | 'i' | '(' expr ')'

``i`` is the imaginary unit and is only accepted over Q(i).
"""
from __future__ import annotations

import dataclasses
import json
import math
import re
from fractions import Fraction
from typing import Any

from .fields import QQI, Field, FieldError, Gaussian, ModP, PrimeField, field_from_tag
from .polyring import Polynomial, PolyRing

SCHEMA_VERSION = 1

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),\[\]]))")


class ParseError(ValueError):
    """Malformed input; carries a 1-based line and column."""

    def __init__(self, message: str, text: str = "", offset: int = 0):
        self.message = message
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"line {self.line}, column {self.column}: {message}")


# ---------------------------------------------------------------------------
# variables and rings

def parse_vars(text: str) -> tuple[tuple[str, ...], tuple[int, int] | None]:
    """``"x,y,z"`` or the bigraded ``"s0,s1;t0,t1"`` -> (names, blocks)."""
    parts = text.split(";")
    if len(parts) > 2:
        raise ParseError("at most two variable blocks", text, text.find(";", text.find(";") + 1))
    blocks, names = [], []
    pos = 0
    for part in parts:
        block = []
        for raw in part.split(","):
            name = raw.strip()
            if not _IDENT.fullmatch(name or "-"):
                raise ParseError(f"bad variable name {raw.strip()!r}", text, pos + len(raw) - len(raw.lstrip()))
            block.append(name)
            pos += len(raw) + 1
        blocks.append(len(block))
        names.extend(block)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name", text, 0)
    return tuple(names), (tuple(blocks) if len(blocks) == 2 else None)


def make_ring(vars_text: str, field: Field | str = "Q") -> PolyRing:
    if isinstance(field, str):
        field = field_from_tag(field)
    names, blocks = parse_vars(vars_text)
    if field == QQI and "i" in names:
        raise ParseError("'i' is reserved for the imaginary unit over Qi", vars_text, vars_text.find("i"))
    return PolyRing(names, field, blocks)


def format_vars(ring: PolyRing) -> str:
    if ring.bigraded:
        k = ring.blocks[0]
        return ",".join(ring.variables[:k]) + ";" + ",".join(ring.variables[k:])
    return ",".join(ring.variables)


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m:
                rest = text[pos:]
                if not rest.strip():
                    break
                bad = pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def expr(self) -> Polynomial:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                t = self.term()
                acc = acc + t if tok[1] == "+" else acc - t
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok == ("end", "", tok[2]) or tok[0] != "op":
                if tok[0] in ("num", "id"):
                    raise self.error("missing operator (implicit multiplication is not supported)", tok)
                return acc
            if tok[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif tok[1] == "/":
                self.take()
                num = self.take()
                if num[0] != "num":
                    raise self.error("division is only allowed by a number", num)
                d = Fraction(num[1])
                if d == 0:
                    raise self.error("division by zero", num)
                acc = acc.scale(self.ring.field(1 / d))
            elif tok[1] == "(":
                raise self.error("missing operator (implicit multiplication is not supported)", tok)
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            ex = self.take()
            if ex[0] != "num" or not ex[1].isdigit():
                raise self.error("malformed exponent (expected a nonnegative integer)", ex)
            return base ** int(ex[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, _ = tok
        ring = self.ring
        if kind == "num":
            try:
                return ring.constant(ring.field(Fraction(val)))
            except (ZeroDivisionError, FieldError) as exc:
                raise self.error(str(exc), tok) from None
        if kind == "id":
            if val in ring.variables:
                return ring.var(val)
            if val == "i":
                if ring.field != QQI:
                    raise self.error(f"literal 'i' is not an element of {ring.field}", tok)
                return ring.constant(QQI.i)
            raise self.error(f"unknown variable {val!r}", tok)
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error(f"unexpected {val or 'end of input'!r}", tok)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    p = _Parser(text, ring)
    if p.peek()[0] == "end":
        raise p.error("empty expression")
    f = p.expr()
    if p.peek()[0] != "end":
        raise p.error(f"unexpected {p.peek()[1]!r}")
    return f


def parse_ideal(text: str, ring: PolyRing):
    """``"[f1, f2, ...]"`` -> Ideal."""
    from .grobner import Ideal

    p = _Parser(text, ring)
    p.expect("[")
    gens = [p.expr()]
    while p.peek()[1] == ",":
        p.take()
        gens.append(p.expr())
    p.expect("]")
    if p.peek()[0] != "end":
        raise p.error(f"unexpected {p.peek()[1]!r} after ideal")
    return Ideal(ring, gens)


def parse_point(text: str, field: Field) -> tuple:
    """Comma-separated coefficients such as ``"1, -2, 3/4"``."""
    ring = PolyRing(("_",), field)
    out = []
    for chunk in text.split(","):
        f = parse_polynomial(chunk, ring)
        if any(sum(e) for e in f.terms):
            raise ParseError(f"expected a number, got {chunk.strip()!r}", text, text.find(chunk))
        out.append(f.coeff((0,)) if f else field.zero)
    return tuple(out)


# ---------------------------------------------------------------------------
# printing

def format_coefficient(c) -> str:
    if isinstance(c, Gaussian):
        if not c.im:
            return format_coefficient(c.re)
        im = "i" if c.im == 1 else "-i" if c.im == -1 else f"{format_coefficient(c.im)}*i"
        if not c.re:
            return im
        sign = "-" if c.im < 0 else "+"
        mag = "i" if abs(c.im) == 1 else f"{format_coefficient(abs(c.im))}*i"
        return f"({format_coefficient(c.re)}{sign}{mag})"
    if isinstance(c, ModP):
        v = c.v if c.v <= c.p // 2 else c.v - c.p
        return str(v)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _negative(c) -> bool:
    if isinstance(c, Gaussian):
        return (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
    if isinstance(c, ModP):
        return c.v > c.p // 2
    return c < 0


def format_monomial(ring: PolyRing, exp) -> str:
    parts = []
    for name, k in zip(ring.variables, exp):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def term_order_key(exp):
    """Descending total degree, then descending lex (the graded-piece order)."""
    return (-sum(exp), tuple(-x for x in exp))


def format_polynomial(f: Polynomial) -> str:
    if not f:
        return "0"
    out = []
    for exp in sorted(f.terms, key=term_order_key):
        c = f.terms[exp]
        neg = _negative(c)
        mag = -c if neg else c
        mono = format_monomial(f.ring, exp)
        if not mono:
            body = format_coefficient(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_coefficient(mag)}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


def format_ideal(ideal) -> str:
    return "[" + ", ".join(format_polynomial(g) for g in ideal.gens) + "]"


# ---------------------------------------------------------------------------
# JSON reports

def jsonable(obj: Any):
    """Convert results to plain JSON values (exact numbers become strings)."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, (Fraction, Gaussian, ModP)):
        return format_coefficient(obj)
    if isinstance(obj, Polynomial):
        return format_polynomial(obj)
    if isinstance(obj, Field):
        return obj.name
    if hasattr(obj, "gens") and hasattr(obj, "groebner"):
        return format_ideal(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(x) for x in obj), key=repr)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "dim") and hasattr(obj, "basis"):
        return {"dim": obj.dim, "basis": jsonable(obj.basis)}
    return repr(obj)


def make_report(command: str, inputs: dict, field: Field | str, seed: int | None,
                result: dict, anchor: str) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "inputs": jsonable(inputs),
        "field": field if isinstance(field, str) else field.name,
        "seed": seed,
        "result": jsonable(result),
        "paper_anchor": anchor,
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)
