"""Shared recursive-descent parser for polynomial and Laurent literals.

A literal such as ``X^3-Z*X^2+2*T^3`` or ``3*u^-1*v^2 + u`` is parsed into a
dict mapping exponent tuples to nonzero ring scalars.  Negative exponents
and ``/`` are only accepted on single-term factors, which is all the series
and surface literals need.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    pass


def _tokens(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
        pos = m.end()
    return out


class _Poly:
    """Sparse polynomial helper over a ring's scalars."""

    def __init__(self, ring, nvars: int):
        self.ring = ring
        self.nvars = nvars

    def _s(self, v):
        # numpy table lookups return numpy ints; keep plain Python scalars
        return int(v) if hasattr(v, "dtype") else v

    def clean(self, p):
        return {k: v for k, v in p.items() if v != self.ring.zero}

    def const(self, c):
        return self.clean({(0,) * self.nvars: c})

    def add(self, a, b):
        out = dict(a)
        for k, v in b.items():
            out[k] = self._s(self.ring.add(out[k], v)) if k in out else v
        return self.clean(out)

    def neg(self, a):
        return {k: self._s(self.ring.neg(v)) for k, v in a.items()}

    def mul(self, a, b):
        out = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                prod = self._s(self.ring.mul(va, vb))
                out[k] = self._s(self.ring.add(out[k], prod)) if k in out else prod
        return self.clean(out)

    def inv_term(self, a):
        if len(a) != 1:
            raise ParseError("only single terms can be inverted")
        (k, v), = a.items()
        return {tuple(-x for x in k): self._s(self.ring.inv(v))}

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv_term(a), -n)
        out = self.const(self.ring.one)
        for _ in range(n):
            out = self.mul(out, a)
        return out


class _Parser:
    def __init__(self, text, ring, variables, allow_negative):
        self.toks = _tokens(text)
        self.i = 0
        self.text = text
        self.vars = list(variables)
        self.allow_negative = allow_negative
        self.P = _Poly(ring, len(self.vars))
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        sign = None
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = self.take()[1]
        p = self.term()
        if sign == "-":
            p = self.P.neg(p)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = self.P.add(p, self.P.neg(q) if op == "-" else q)
        return p

    def term(self):
        p = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            q = self.factor()
            p = self.P.mul(p, self.P.inv_term(q) if op == "/" else q)
        return p

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            return self.P.neg(self.factor())
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"bad exponent in {self.text!r}")
            n = -val if neg else val
            if n < 0 and not self.allow_negative:
                raise ParseError(f"negative exponent not allowed in {self.text!r}")
            base = self.P.pow(base, n)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.P.const(self.ring.from_int(val))
        if kind == "name":
            if val in self.vars:
                k = [0] * len(self.vars)
                k[self.vars.index(val)] = 1
                return {tuple(k): self.ring.one}
            if val in self.ring.constants:
                return self.P.const(self.ring.constants[val])
            raise ParseError(f"unknown symbol {val!r} in {self.text!r}")
        if (kind, val) == ("op", "("):
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_polynomial(text: str, ring, variables, allow_negative: bool = False) -> dict:
    """Parse ``text`` into ``{exponent tuple: nonzero scalar}`` over ``ring``."""
    return _Parser(text, ring, variables, allow_negative).parse()
