"""Sparse multivariate polynomials with ``Fraction`` coefficients.

A polynomial knows only how many variables it has; names live on the chart.
Terms map exponent tuples to nonzero coefficients.

The text grammar used by scenario files::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT ['/' INT] | NAME | '(' expr ')'

e.g. ``3/2*x1^2*p_12 - x2``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Optional, Sequence

Exponent = tuple[int, ...]


class Polynomial:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponent, Fraction]] = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                    clean[tuple(e)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "Polynomial":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        c = Fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1) -> "Polynomial":
        exponent = tuple(exponent)
        return cls._raw(len(exponent), {exponent: Fraction(c)} if c else {})

    # --- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        """Degree of the polynomial; -1 for zero."""
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Polynomial.constant(self.nvars, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # --- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"polynomials over {self.nvars} and {other.nvars} variables")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, i: int) -> "Polynomial":
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return Polynomial._raw(self.nvars, out)

    def __call__(self, *point) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``images[i]`` for variable ``i``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        target = images[0].nvars
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, k: int) -> Polynomial:
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] if k == 1 else power(i, k - 1) * images[i]
            return powers[key]

        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            t = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def radial_integral(self, shift: int) -> "Polynomial":
        """``int_0^1 t^(shift-1) p(t x) dt`` for ``shift >= 1``."""
        return Polynomial._raw(
            self.nvars, {e: c / (sum(e) + shift) for e, c in self.terms.items()})

    def leading(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def exact_divide(self, other: "Polynomial") -> Optional["Polynomial"]:
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q = Polynomial.zero(self.nvars)
        r = self
        le, lc = other.leading()
        while r:
            re_, rc = r.leading()
            if any(a < b for a, b in zip(re_, le)):
                # the lex-leading term of a multiple of `other` is divisible by its own
                return None
            t = Polynomial.monomial(tuple(a - b for a, b in zip(re_, le)), rc / lc)
            q = q + t
            r = r - t * other
        return q

    def monomials(self) -> list[Exponent]:
        return sorted(self.terms)

    # --- text ------------------------------------------------------------

    def to_str(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        pieces = []
        # graded reverse-sorted for readability; deterministic
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(
                name if k == 1 else f"{name}^{k}"
                for name, k in zip(names, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _fmt_fraction(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_fraction(a)}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        names = [f"v{i}" for i in range(self.nvars)]
        return f"Polynomial({self.to_str(names)!r})"


def _fmt_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def monomials_up_to(nvars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of total degree <= ``degree``, graded then lex."""
    out: list[Exponent] = []

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + [k], remaining - k, slots - 1)

    if nvars == 0:
        return [()]
    for d in range(degree + 1):
        start = len(out)
        rec([], d, nvars)
        out[start:] = sorted(out[start:], reverse=True)
    return out


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at column {offset + 1} in {text!r}")
        self.column = offset + 1
        self.text = text


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolynomialSyntaxError(f"unexpected character {ch!r}", text, m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Parse ``text`` as a polynomial in the given coordinate names."""
    index = {name: i for i, name in enumerate(names)}
    nvars = len(names)
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expect_op(ch):
        tok = take()
        if tok[0] != "op" or tok[1] != ch:
            raise PolynomialSyntaxError(f"expected {ch!r}", text, tok[2])

    def expr() -> Polynomial:
        tok = peek()
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            take()
            sign = -1 if tok[1] == "-" else 1
        out = term().scale(sign)
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            t = term()
            out = out + t if op == "+" else out - t
        return out

    def term() -> Polynomial:
        out = factor()
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            out = out * factor()
        return out

    def factor() -> Polynomial:
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            tok = take()
            if tok[0] != "int":
                raise PolynomialSyntaxError("expected a nonnegative integer exponent", text, tok[2])
            base = base ** int(tok[1])
        return base

    def atom() -> Polynomial:
        tok = take()
        kind, val, col = tok
        if kind == "int":
            num = int(val)
            if peek()[0] == "op" and peek()[1] == "/":
                take()
                den = take()
                if den[0] != "int":
                    raise PolynomialSyntaxError("expected an integer denominator", text, den[2])
                if int(den[1]) == 0:
                    raise PolynomialSyntaxError("zero denominator", text, den[2])
                return Polynomial.constant(nvars, Fraction(num, int(den[1])))
            return Polynomial.constant(nvars, num)
        if kind == "name":
            if val not in index:
                raise PolynomialSyntaxError(f"unknown coordinate {val!r}", text, col)
            return Polynomial.variable(nvars, index[val])
        if kind == "op" and val == "(":
            inner = expr()
            expect_op(")")
            return inner
        raise PolynomialSyntaxError("expected a number, coordinate or '('", text, col)

    result = expr()
    tok = peek()
    if tok[0] != "end":
        raise PolynomialSyntaxError(f"unexpected {tok[1]!r}", text, tok[2])
    return result
