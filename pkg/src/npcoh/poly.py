"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial in ``n`` variables is stored as a mapping from exponent tuples
to :class:`fractions.Fraction` coefficients.  Zero coefficients are never
stored, so two polynomials are equal exactly when their term maps are.

Text form follows a small grammar::

    expr     := ["-"] term { ("+" | "-") term }
    term     := factor { "*" factor }
    factor   := rational | variable [ "^" nat ] | "(" expr ")"
    rational := [ "-" ] nat [ "/" nat ]

Whitespace is ignored and there is no implicit multiplication.
"""

from __future__ import annotations

import re
from collections.abc import Mapping, Sequence
from fractions import Fraction
from types import MappingProxyType

from .errors import ParseError, VariableCountError

Monomial = tuple[int, ...]

ALIASES = ("x", "y", "z", "t")


def default_variables(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


def _monomial_key(m: Monomial):
    # graded lex: total exponent first, then lex with x1 most significant
    return (sum(m), m)


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_terms", "_n", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, n: int | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                mono = tuple(int(a) for a in mono)
                if n is None:
                    n = len(mono)
                elif len(mono) != n:
                    raise VariableCountError(
                        f"monomial {mono} does not have {n} exponents"
                    )
                if any(a < 0 for a in mono):
                    raise ValueError(f"negative exponent in {mono}")
                c = Fraction(coeff)
                if c:
                    clean[mono] = clean.get(mono, 0) + c
                    if not clean[mono]:
                        del clean[mono]
        if n is None:
            raise ValueError("the variable count of a polynomial without terms must be given")
        self._terms = clean
        self._n = n
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, n: int) -> "Polynomial":
        # trusted constructor: terms already canonical
        obj = object.__new__(cls)
        obj._terms = terms
        obj._n = n
        obj._hash = None
        return obj

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw({}, n)

    @classmethod
    def constant(cls, value, n: int) -> "Polynomial":
        value = Fraction(value)
        return cls._raw({(0,) * n: value} if value else {}, n)

    @classmethod
    def one(cls, n: int) -> "Polynomial":
        return cls.constant(1, n)

    @classmethod
    def variable(cls, i: int, n: int) -> "Polynomial":
        """The coordinate function ``x_{i+1}`` (``i`` is zero-based)."""
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for {n} variables")
        exps = [0] * n
        exps[i] = 1
        return cls._raw({tuple(exps): Fraction(1)}, n)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff=1) -> "Polynomial":
        return cls({tuple(exponents): coeff}, len(exponents))

    # -- basic accessors -----------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in graded-lex order, largest first."""
        return sorted(self._terms.items(), key=lambda t: _monomial_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self._n)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def support(self) -> list[Monomial]:
        return sorted(self._terms, key=_monomial_key)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._n == other._n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self._n)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._n != self._n:
                raise VariableCountError(
                    f"cannot combine polynomials in {self._n} and {other._n} variables"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self._n)
        raise TypeError(f"cannot combine a Polynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out, self._n)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self._n)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(out, self._n)

    __rmul__ = __mul__

    def scale(self, s) -> "Polynomial":
        s = Fraction(s)
        if not s:
            return Polynomial.zero(self._n)
        return Polynomial._raw({m: c * s for m, c in self._terms.items()}, self._n)

    def __truediv__(self, s):
        if isinstance(s, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(s))
        return NotImplemented

    def __pow__(self, e: int):
        return power(self, e)

    def derivative(self, i: int) -> "Polynomial":
        """Formal partial derivative in ``x_{i+1}`` (zero-based ``i``)."""
        if not 0 <= i < self._n:
            raise IndexError(f"variable index {i} out of range for {self._n} variables")
        out = {}
        for m, c in self._terms.items():
            a = m[i]
            if a:
                mm = list(m)
                mm[i] = a - 1
                out[tuple(mm)] = c * a
        return Polynomial._raw(out, self._n)

    def shift(self, mono: Monomial, coeff=1) -> "Polynomial":
        """Multiply by the single term ``coeff * x^mono``."""
        coeff = Fraction(coeff)
        if not coeff:
            return Polynomial.zero(self._n)
        return Polynomial._raw(
            {tuple(a + b for a, b in zip(m, mono)): c * coeff for m, c in self._terms.items()},
            self._n,
        )

    def content(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        from math import gcd, lcm

        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for x, a in zip(point, m):
                if a:
                    v *= Fraction(x) ** a
            total += v
        return total

    # -- printing ------------------------------------------------------------

    def to_string(self, variables: Sequence[str] | None = None) -> str:
        variables = list(variables) if variables is not None else default_variables(self._n)
        if len(variables) != self._n:
            raise VariableCountError(f"need {self._n} variable names, got {len(variables)}")
        if not self._terms:
            return "0"
        parts = []
        for idx, (m, c) in enumerate(self.sorted_terms()):
            factors = []
            for name, a in zip(variables, m):
                if a == 1:
                    factors.append(name)
                elif a > 1:
                    factors.append(f"{name}^{a}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if idx == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, n={self._n})"


def power(a: Polynomial, e: int) -> Polynomial:
    if e < 0:
        raise ValueError("negative powers are not polynomials")
    result = Polynomial.one(a.n)
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    return p.derivative(i)


# -- parser -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("nat", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, index, n):
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = index
        self.n = n

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, ch):
        kind, val, pos = self.take()
        if kind != "op" or val != ch:
            raise ParseError(f"expected {ch!r}", pos)

    def is_op(self, ch):
        kind, val, _ = self.peek()
        return kind == "op" and val == ch

    def expr(self) -> Polynomial:
        negate = False
        if self.is_op("-"):
            # a leading minus applies to the whole first term
            kind, _, _ = self.tokens[self.i + 1]
            if kind != "nat":
                self.take()
                negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.is_op("+") or self.is_op("-"):
            _, op, _ = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.is_op("*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        kind, val, pos = self.peek()
        if kind == "op" and val == "(":
            self.take()
            inner = self.expr()
            self.expect_op(")")
            if self.is_op("^"):
                self.take()
                return power(inner, self.exponent())
            return inner
        if kind == "nat" or (kind == "op" and val == "-"):
            return Polynomial.constant(self.rational(), self.n)
        if kind == "ident":
            self.take()
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r}", pos)
            i = self.index[val]
            exp = 1
            if self.is_op("^"):
                self.take()
                exp = self.exponent()
            mono = [0] * self.n
            mono[i] = exp
            return Polynomial._raw({tuple(mono): Fraction(1)}, self.n)
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)

    def exponent(self) -> int:
        kind, val, pos = self.take()
        if kind == "op" and val == "-":
            raise ParseError("negative exponent", pos)
        if kind != "nat":
            raise ParseError("expected a natural-number exponent", pos)
        if val == 0:
            raise ParseError("zero exponent", pos)
        return val

    def rational(self) -> Fraction:
        sign = 1
        if self.is_op("-"):
            self.take()
            sign = -1
        kind, num, pos = self.take()
        if kind != "nat":
            raise ParseError("expected a number", pos)
        den = 1
        if self.is_op("/"):
            self.take()
            kind, den, pos = self.take()
            if kind != "nat":
                raise ParseError("expected a denominator", pos)
            if den == 0:
                raise ParseError("zero denominator", pos)
        return Fraction(sign * num, den)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``text`` as a polynomial in the given ordered variables.

    When ``variables`` are the default names ``x1..xn`` with ``n <= 4``, the
    aliases ``x, y, z, t`` are accepted as well.
    """
    variables = list(variables)
    n = len(variables)
    if len(set(variables)) != n:
        raise ValueError("variable names must be distinct")
    index = {name: i for i, name in enumerate(variables)}
    if n <= len(ALIASES) and variables == default_variables(n):
        for i, alias in enumerate(ALIASES[:n]):
            index.setdefault(alias, i)
    parser = _Parser(text, index, n)
    result = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected token {val!r}", pos)
    return result
