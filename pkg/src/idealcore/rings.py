"""Exact multivariate polynomials over the rationals or a prime field.

A polynomial is kept in canonical form at all times: terms strictly
sorted descending under its ring's monomial order, no zero coefficients,
rational coefficients in lowest terms (`fractions.Fraction`) or reduced
residues for a prime field.  Two polynomials are equal exactly when
their canonical term sequences are equal, and that equality is what the
rest of the engine relies on.

Input grammar (also produced by the formatter, so parse(format(f)) == f):

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff ['*' factor ('*' factor)*]
            | coeff factor ('*' factor)*
            | factor ('*' factor)*
    factor := var ('^' posint)?
    coeff  := int | int '/' int          (the fraction form covers
                                          re-parsing monic output)
    var    := [a-zA-Z][a-zA-Z0-9_]*

Whitespace is insignificant.  Coefficients must be representable in the
ring's field (for F_p the denominator must be invertible mod p).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

from .errors import HomogeneityError, ParseError, RingMismatchError
from .orders import DEGREVLEX, MonomialOrder

_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")

# Coefficients drawn for "general" constructions live in [-99, 99]; a
# prime field must keep those draws distinct, hence p > 198.
RANDOM_COEFFICIENT_BOUND = 99


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class RationalField:
    """The field of arbitrary-precision rationals (characteristic zero)."""

    @property
    def char(self) -> int:
        return 0

    def coerce(self, value):
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def invert(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    @property
    def one(self):
        return Fraction(1)

    @property
    def zero(self):
        return Fraction(0)

    def __str__(self) -> str:
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    """F_p, used as an explicitly flagged fast surrogate for QQ.

    p must be prime and larger than twice the random-coefficient bound
    so that seeded integer draws stay injective mod p.
    """

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p <= 2 * RANDOM_COEFFICIENT_BOUND:
            raise ValueError(
                f"prime must exceed {2 * RANDOM_COEFFICIENT_BOUND} to keep "
                f"random coefficient draws faithful")

    @property
    def char(self) -> int:
        return self.p

    def coerce(self, value):
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ValueError(
                    f"denominator {value.denominator} not invertible mod {self.p}")
            return value.numerator * pow(den, self.p - 2, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def invert(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    @property
    def one(self):
        return 1

    @property
    def zero(self):
        return 0

    def __str__(self) -> str:
        return f"F_{self.p}"


CoefficientField = RationalField | PrimeField


@dataclass(frozen=True)
class RingContext:
    """A polynomial ring: named variables, coefficient field, default order."""

    variables: tuple
    field: CoefficientField = dc_field(default_factory=RationalField)
    order: MonomialOrder = DEGREVLEX

    def __post_init__(self):
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        seen = set()
        for name in self.variables:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate variable name {name!r}")
            seen.add(name)
        if self.order.kind == "block" and not (
                1 <= self.order.block < len(self.variables)):
            raise ValueError("block size must leave at least one trailing variable")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value) -> "Polynomial":
        return self.polynomial({(0,) * self.nvars: value})

    def variable(self, index: int) -> "Polynomial":
        exps = [0] * self.nvars
        exps[index] = 1
        return self.polynomial({tuple(exps): 1})

    def monomial(self, exps, coefficient=1) -> "Polynomial":
        return self.polynomial({tuple(exps): coefficient})

    def polynomial(self, mapping) -> "Polynomial":
        """Canonical polynomial from {exponent tuple: coefficient-like}."""
        n = self.nvars
        terms = []
        for exps, value in mapping.items():
            if len(exps) != n:
                raise ValueError(f"exponent tuple {exps} has wrong length")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coeff = self.field.coerce(value)
            if coeff:
                terms.append((tuple(exps), coeff))
        terms.sort(key=lambda t: self.order.key(t[0]), reverse=True)
        return Polynomial(self, tuple(terms))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __str__(self) -> str:
        return f"{self.field}[{','.join(self.variables)}] ({self.order})"


def ring(names, char: int = 0, order: MonomialOrder = DEGREVLEX) -> RingContext:
    """Convenience constructor; `names` is a sequence or comma-separated string."""
    if isinstance(names, str):
        names = tuple(part.strip() for part in names.split(","))
    fld = RationalField() if char == 0 else PrimeField(char)
    return RingContext(tuple(names), fld, order)


class Polynomial:
    """Immutable polynomial in canonical sorted-term form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring_ctx: RingContext, terms: tuple):
        object.__setattr__(self, "ring", ring_ctx)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- structure ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e, _ in self.terms)

    def is_homogeneous(self):
        """(True, common degree) if every term shares one total degree.

        The zero polynomial is vacuously homogeneous with no degree.
        """
        if not self.terms:
            return True, None
        degrees = {sum(e) for e, _ in self.terms}
        if len(degrees) == 1:
            return True, degrees.pop()
        return False, None

    def leading_monomial(self, order: MonomialOrder | None = None):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        order = order or self.ring.order
        if order == self.ring.order:
            return self.terms[0][0]
        return max((e for e, _ in self.terms), key=order.key)

    def leading_coefficient(self, order: MonomialOrder | None = None):
        lm = self.leading_monomial(order)
        for e, c in self.terms:
            if e == lm:
                return c
        raise AssertionError("unreachable")

    def to_dict(self) -> dict:
        return dict(self.terms)

    # -- arithmetic --------------------------------------------------

    def _check_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(
                f"operands live in different rings: {self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        acc = dict(self.terms)
        fld = self.ring.field
        for e, c in other.terms:
            v = fld.add(acc.get(e, fld.zero), c)
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return self.ring.polynomial(acc)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        fld = self.ring.field
        return Polynomial(self.ring,
                          tuple((e, fld.neg(c)) for e, c in self.terms))

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        fld = self.ring.field
        acc: dict = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                key = tuple(x + y for x, y in zip(ea, eb))
                v = fld.add(acc.get(key, fld.zero), fld.mul(ca, cb))
                if v:
                    acc[key] = v
                else:
                    acc.pop(key, None)
        return self.ring.polynomial(acc)

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, value) -> "Polynomial":
        c = self.ring.field.coerce(value)
        if not c:
            return self.ring.zero()
        fld = self.ring.field
        return Polynomial(self.ring,
                          tuple((e, fld.mul(cc, c)) for e, cc in self.terms))

    def derivative(self, index: int) -> "Polynomial":
        """Formal partial derivative with respect to variable `index`."""
        acc = {}
        for e, c in self.terms:
            if e[index]:
                shifted = list(e)
                shifted[index] -= 1
                acc[tuple(shifted)] = self.ring.field.mul(
                    c, self.ring.field.coerce(e[index]))
        return self.ring.polynomial(acc)

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient self / divisor, which must divide exactly."""
        self._check_ring(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        order = self.ring.order
        fld = self.ring.field
        lm_d = divisor.leading_monomial(order)
        lc_d = divisor.leading_coefficient(order)
        inv = fld.invert(lc_d)
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            lt = max(rem, key=order.key)
            if any(a < b for a, b in zip(lt, lm_d)):
                raise ValueError("polynomial is not divisible by the divisor")
            shift = tuple(a - b for a, b in zip(lt, lm_d))
            c = fld.mul(rem[lt], inv)
            quot[shift] = c
            for e, cd in divisor.terms:
                key = tuple(a + b for a, b in zip(e, shift))
                v = fld.sub(rem.get(key, fld.zero), fld.mul(c, cd))
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return self.ring.polynomial(quot)

    # -- identity ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.variables, self.ring.field, self.terms))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)})"


# -- parsing and formatting -----------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<sym>[\^*+/\-])")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


def parse_polynomial(text: str, ring_ctx: RingContext) -> Polynomial:
    """Parse `text` into a canonical polynomial of `ring_ctx`.

    Raises ParseError with a character position on any syntax problem,
    unknown variable, or coefficient not representable in the field.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", 0)
    var_index = {name: i for i, name in enumerate(ring_ctx.variables)}
    n = ring_ctx.nvars
    acc: dict = {}
    i = 0

    def peek(kind):
        return i < len(tokens) and tokens[i][0] == kind

    def peek_sym(value):
        return i < len(tokens) and tokens[i][0] == "sym" and tokens[i][1] == value

    sign = 1
    if peek_sym("+") or peek_sym("-"):
        sign = -1 if tokens[i][1] == "-" else 1
        i += 1

    while True:
        term_pos = tokens[i][2] if i < len(tokens) else len(text)
        coeff = Fraction(1)
        exps = [0] * n
        saw_coeff = False
        saw_factor = False
        if peek("int"):
            coeff = Fraction(int(tokens[i][1]))
            coeff_pos = tokens[i][2]
            saw_coeff = True
            i += 1
            if peek_sym("/"):
                i += 1
                if not peek("int"):
                    raise ParseError("expected integer denominator",
                                     tokens[i][2] if i < len(tokens) else len(text))
                den = int(tokens[i][1])
                if den == 0:
                    raise ParseError("zero denominator", tokens[i][2])
                coeff = coeff / den
                i += 1
            if peek_sym("*"):
                i += 1
                if not peek("name"):
                    raise ParseError("expected a variable after '*'",
                                     tokens[i][2] if i < len(tokens) else len(text))
        while peek("name"):
            name, pos = tokens[i][1], tokens[i][2]
            if name not in var_index:
                raise ParseError(f"unknown variable {name!r}", pos)
            exponent = 1
            i += 1
            if peek_sym("^"):
                i += 1
                if not peek("int"):
                    raise ParseError("expected an integer exponent",
                                     tokens[i][2] if i < len(tokens) else len(text))
                exponent = int(tokens[i][1])
                if exponent < 1:
                    raise ParseError("exponent must be a positive integer",
                                     tokens[i][2])
                i += 1
            exps[var_index[name]] += exponent
            saw_factor = True
            if peek_sym("*"):
                i += 1
                if not peek("name"):
                    raise ParseError("expected a variable after '*'",
                                     tokens[i][2] if i < len(tokens) else len(text))
        if not saw_coeff and not saw_factor:
            raise ParseError("expected a term", term_pos)
        try:
            value = ring_ctx.field.coerce(sign * coeff)
        except ValueError as exc:
            raise ParseError(str(exc), coeff_pos if saw_coeff else term_pos) from exc
        key = tuple(exps)
        prev = acc.get(key, ring_ctx.field.zero)
        acc[key] = ring_ctx.field.add(prev, value)

        if i == len(tokens):
            break
        if peek_sym("+") or peek_sym("-"):
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
            if i == len(tokens):
                raise ParseError("dangling sign", tokens[i - 1][2])
        else:
            raise ParseError("expected '+' or '-' between terms", tokens[i][2])

    return ring_ctx.polynomial(acc)


def format_polynomial(f: Polynomial) -> str:
    """Deterministic rendering: descending terms, coefficients in lowest terms."""
    if not f.terms:
        return "0"
    rational = f.ring.field.char == 0
    names = f.ring.variables
    pieces = []
    for idx, (exps, coeff) in enumerate(f.terms):
        negative = rational and coeff < 0
        mag = -coeff if negative else coeff
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if idx == 0:
            pieces.append("-" + body if negative else body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)
