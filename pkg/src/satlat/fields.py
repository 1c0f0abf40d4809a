"""Exact scalar arithmetic: the rationals and prime fields GF(p).

Rational elements are `fractions.Fraction` values (always reduced, positive
denominator); prime-field elements are ints in [0, p).  All operations go
through the field object so code above this layer never branches on the
coefficient type.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonUnitDenominatorInGF, SpecError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Interface shared by Rationals and PrimeField."""

    name: str

    def of(self, value):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        """a**n for any integer n (negative n inverts first)."""
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def ratio(self, num: int, den: int):
        """The element num/den, refusing non-invertible denominators."""
        raise NotImplementedError

    def render(self, a) -> str:
        raise NotImplementedError

    def is_finite(self) -> bool:
        raise NotImplementedError

    def elements(self):
        raise NotImplementedError


class Rationals(Field):
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def of(self, value):
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def ratio(self, num, den):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return Fraction(num, den)

    def render(self, a):
        return str(a)

    def is_finite(self):
        return False

    def elements(self):
        raise TypeError("the rationals are infinite")

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    """GF(p) with elements the canonical residues 0..p-1."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise SpecError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def of(self, value):
        if isinstance(value, Fraction):
            return self.ratio(value.numerator, value.denominator)
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def ratio(self, num, den):
        if den % self.p == 0:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            raise NonUnitDenominatorInGF(f"denominator {den} is 0 in GF({self.p})")
        return self.mul(num % self.p, self.inv(den))

    def render(self, a):
        return str(a % self.p)

    def is_finite(self):
        return True

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_inv(a, field: Field):
    """Multiplicative inverse in the given field; raises on zero."""
    return field.inv(a)


def parse_field(text: str) -> Field:
    """Parse a field name as used in ring spec files: "QQ" or "GF(p)"."""
    text = text.strip()
    if text == "QQ":
        return QQ
    if text.startswith("GF(") and text.endswith(")"):
        inner = text[3:-1]
        if not inner.isdigit():
            raise SpecError(f"bad prime in field spec {text!r}")
        return GF(int(inner))
    raise SpecError(f"unknown field {text!r} (expected QQ or GF(p))")
