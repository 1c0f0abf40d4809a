"""Multiparameter quantum affine spaces with exact coefficients.

The ring k<x_1..x_n>/(x_j x_i - q_ij x_i x_j, i < j) has PBW basis the
normal monomials x_1^{a_1}...x_n^{a_n}.  Every product of monomials is a
scalar times a monomial, and all scalars flow through
:func:`commutation_scalar` -- there is no ad-hoc rewriting anywhere else.

Monomials are plain exponent tuples.  Polynomials are immutable, carry
their ring, and are kept in canonical form (terms sorted descending in
degree-lexicographic order, no zero coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import SpecError
from .fields import Field

Monomial = tuple  # exponent vectors; the zero vector is the identity monomial


def mono_deg(a: Monomial) -> int:
    return sum(a)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """Componentwise a <= b; in a quantum space this is two-sided divisibility."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def deglex_key(a: Monomial):
    """Sort key for DegLex with x_1 < x_2 < ... < x_n."""
    return (sum(a), tuple(reversed(a)))


class QRing:
    """A multiparameter quantum affine space over an exact field.

    ``q[i][j]`` (0-based, i < j) is the scalar with x_j x_i = q_ij x_i x_j.
    """

    def __init__(self, names: Sequence[str], field: Field, q=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise SpecError("variable names must be distinct")
        self.names = names
        self.n = len(names)
        self.field = field
        table = [[field.one] * self.n for _ in range(self.n)]
        if q:
            for (i, j), value in q.items():
                if not (0 <= i < j < self.n):
                    raise SpecError(f"bad q index ({i}, {j}); need 0 <= i < j < n")
                value = field.of(value)
                if field.is_zero(value):
                    raise SpecError(f"q[{i}][{j}] must be nonzero")
                table[i][j] = value
        self.q = tuple(tuple(row) for row in table)
        self.zero_mono = (0,) * self.n
        self.zero = Poly(self, ())
        self.one = Poly(self, ((self.zero_mono, field.one),))

    def _key(self):
        return (self.names, self.field, self.q)

    def __eq__(self, other):
        return isinstance(other, QRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        rels = ", ".join(
            f"{self.names[j]}{self.names[i]}={self.field.render(self.q[i][j])}"
            f"{self.names[i]}{self.names[j]}"
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.q[i][j] != self.field.one
        )
        kind = "commutative polynomial ring" if not rels else f"quantum space ({rels})"
        return f"QRing({', '.join(self.names)}; {self.field}; {kind})"

    def is_commutative(self) -> bool:
        one = self.field.one
        return all(
            self.q[i][j] == one for i in range(self.n) for j in range(i + 1, self.n)
        )

    # --- element constructors -------------------------------------------------

    def var(self, i: int) -> "Poly":
        exps = tuple(1 if k == i else 0 for k in range(self.n))
        return Poly(self, ((exps, self.field.one),))

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def monomial(self, exps: Iterable[int], coeff=None) -> "Poly":
        exps = tuple(exps)
        if len(exps) != self.n or any(e < 0 for e in exps):
            raise SpecError(f"bad exponent vector {exps}")
        c = self.field.one if coeff is None else self.field.of(coeff)
        if self.field.is_zero(c):
            return self.zero
        return Poly(self, ((exps, c),))

    def scalar(self, value) -> "Poly":
        return self.monomial(self.zero_mono, value)

    def poly(self, terms) -> "Poly":
        """Build a canonical Poly from (exponents, coefficient) pairs."""
        acc = {}
        for exps, coeff in terms:
            exps = tuple(exps)
            c = self.field.of(coeff)
            if exps in acc:
                acc[exps] = self.field.add(acc[exps], c)
            else:
                acc[exps] = c
        return Poly(
            self,
            tuple(
                (m, c)
                for m, c in sorted(acc.items(), key=lambda t: deglex_key(t[0]), reverse=True)
                if not self.field.is_zero(c)
            ),
        )


class Poly:
    """Element of a QRing in canonical normal form.

    ``terms`` is a tuple of (monomial, coefficient) pairs sorted descending
    in DegLex; the empty tuple is zero.  Construction through
    :meth:`QRing.poly` or the arithmetic operators keeps the invariants.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: QRing, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # --- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (
            len(self.terms) == 1 and self.terms[0][0] == self.ring.zero_mono
        )

    def degree(self) -> int:
        """Total degree; zero polynomial has degree -1 by convention."""
        if not self.terms:
            return -1
        return max(mono_deg(m) for m, _ in self.terms)

    def leading_term(self, key=None):
        """(monomial, coeff) maximal w.r.t. key (default: canonical DegLex)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if key is None:
            return self.terms[0]
        return max(self.terms, key=lambda t: key(t[0]))

    def coeff(self, mono: Monomial):
        for m, c in self.terms:
            if m == mono:
                return c
        return self.ring.field.zero

    def monomials(self):
        return [m for m, _ in self.terms]

    def as_dict(self):
        return dict(self.terms)

    def monic(self, key=None) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading_term(key)
        return self.scale(self.ring.field.inv(c))

    def scale(self, c) -> "Poly":
        field = self.ring.field
        c = field.of(c)
        if field.is_zero(c):
            return self.ring.zero
        return Poly(self.ring, tuple((m, field.mul(c, k)) for m, k in self.terms))

    # --- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.poly(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self):
        field = self.ring.field
        return Poly(self.ring, tuple((m, field.neg(c)) for m, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return mul_poly(self, other, self.ring)
        try:
            return self.scale(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __rmul__(self, other):
        # scalar on the left; coefficients are central
        try:
            return self.scale(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in the ring")
        result = self.ring.one
        for _ in range(n):
            result = mul_poly(result, self, self.ring)
        return result

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise SpecError("mixing elements of different rings")
            return other
        try:
            return self.ring.scalar(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    # --- rendering (kept in sync with the input grammar in parser.py) ---------

    def _term_text(self, mono: Monomial, coeff) -> str:
        field = self.ring.field
        factors = [
            self.ring.names[i] if e == 1 else f"{self.ring.names[i]}^{e}"
            for i, e in enumerate(mono)
            if e
        ]
        if not factors:
            return field.render(coeff)
        if coeff == field.one:
            return "*".join(factors)
        return "*".join([field.render(coeff)] + factors)

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        parts = []
        for idx, (m, c) in enumerate(self.terms):
            neg = field.render(c).startswith("-")
            if neg:
                text = self._term_text(m, field.neg(c))
                parts.append(("- " if idx else "-") + text)
            else:
                text = self._term_text(m, c)
                parts.append(("+ " + text) if idx else text)
        return " ".join(parts)

    def __repr__(self):
        return f"<{self}>"


# --- the commutation bicharacter ------------------------------------------------


def commutation_scalar(a: Monomial, b: Monomial, ring: QRing):
    """The scalar L(a, b) with x^a * x^b = L(a, b) * x^(a+b).

    L(a, b) = prod_{i<j} q_ij^(a_j * b_i): moving each letter of x^b left
    past the later letters of x^a costs one q per swap.
    """
    field = ring.field
    result = field.one
    for j, aj in enumerate(a):
        if not aj:
            continue
        for i in range(j):
            if b[i]:
                result = field.mul(result, field.pow(ring.q[i][j], aj * b[i]))
    return result


def mul_poly(f: Poly, g: Poly, ring: QRing) -> Poly:
    """Ring product; every scalar comes from commutation_scalar."""
    if f.ring != ring or g.ring != ring:
        raise SpecError("operands must live in the given ring")
    field = ring.field
    acc = {}
    for ma, ca in f.terms:
        for mb, cb in g.terms:
            m = mono_mul(ma, mb)
            c = field.mul(field.mul(ca, cb), commutation_scalar(ma, mb, ring))
            if m in acc:
                acc[m] = field.add(acc[m], c)
            else:
                acc[m] = c
    return ring.poly(acc.items())


def twist_by_monomial(m: Monomial, f: Poly, ring: QRing) -> Poly:
    """The polynomial f' with x^m * f = f' * x^m.

    Term c*x^a picks up L(m, a) * L(a, m)^-1; used to close right ideals
    under left multiplication without leaving monomial calculus.
    """
    field = ring.field
    terms = []
    for a, c in f.terms:
        scalar = field.mul(
            commutation_scalar(m, a, ring),
            field.inv(commutation_scalar(a, m, ring)),
        )
        terms.append((a, field.mul(c, scalar)))
    return ring.poly(terms)


@dataclass(frozen=True)
class DiagAuto:
    """Diagonal ring automorphism x_i -> scalars[i] * x_i."""

    ring: QRing
    scalars: tuple

    def __post_init__(self):
        field = self.ring.field
        if len(self.scalars) != self.ring.n:
            raise SpecError("need one scalar per variable")
        if any(field.is_zero(s) for s in self.scalars):
            raise SpecError("automorphism scalars must be nonzero")

    def apply(self, f: Poly) -> Poly:
        field = self.ring.field
        terms = []
        for m, c in f.terms:
            s = field.one
            for i, e in enumerate(m):
                if e:
                    s = field.mul(s, field.pow(self.scalars[i], e))
            terms.append((m, field.mul(c, s)))
        return Poly(self.ring, tuple(terms))

    def compose(self, other: "DiagAuto") -> "DiagAuto":
        field = self.ring.field
        return DiagAuto(
            self.ring,
            tuple(field.mul(a, b) for a, b in zip(self.scalars, other.scalars)),
        )

    def inverse(self) -> "DiagAuto":
        field = self.ring.field
        return DiagAuto(self.ring, tuple(field.inv(s) for s in self.scalars))

    def power(self, k: int) -> "DiagAuto":
        field = self.ring.field
        return DiagAuto(self.ring, tuple(field.pow(s, k) for s in self.scalars))

    def is_identity(self) -> bool:
        return all(s == self.ring.field.one for s in self.scalars)


def identity_automorphism(ring: QRing) -> DiagAuto:
    return DiagAuto(ring, (ring.field.one,) * ring.n)


def monomial_automorphism(a: Monomial, ring: QRing) -> DiagAuto:
    """The automorphism psi with x^a * r = psi(r) * x^a."""
    field = ring.field
    scalars = []
    for i in range(ring.n):
        e = tuple(1 if k == i else 0 for k in range(ring.n))
        s = field.mul(
            commutation_scalar(a, e, ring),
            field.inv(commutation_scalar(e, a, ring)),
        )
        scalars.append(s)
    return DiagAuto(ring, tuple(scalars))


def apply_automorphism(psi: DiagAuto, f: Poly) -> Poly:
    return psi.apply(f)


def is_central(f: Poly, ring: QRing) -> bool:
    """f commutes with every variable (hence with everything)."""
    for i in range(ring.n):
        xi = ring.var(i)
        if mul_poly(f, xi, ring) != mul_poly(xi, f, ring):
            return False
    return True


def is_normal_monomial(f: Poly) -> bool:
    """Nonzero monomials are exactly the obviously-normal elements here."""
    return len(f.terms) == 1


# --- the opposite ring ------------------------------------------------------------


def opposite_ring(ring: QRing) -> QRing:
    """Same quantum space with q_ij inverted."""
    field = ring.field
    q = {
        (i, j): field.inv(ring.q[i][j])
        for i in range(ring.n)
        for j in range(i + 1, ring.n)
    }
    return QRing(ring.names, field, q)


def opposite_map(f: Poly, target: QRing | None = None) -> Poly:
    """Anti-isomorphism onto the opposite ring: T(f*g) = T(g)*T(f).

    Monomial support is preserved; each term c*x^a is rescaled by
    prod_{i<j} q_ij^(-a_i*a_j), which is what makes T multiplicative in
    reversed order (the identity map on monomials is not).  The same map
    applied from the opposite ring inverts T.
    """
    ring = f.ring
    field = ring.field
    if target is None:
        target = opposite_ring(ring)
    terms = []
    for a, c in f.terms:
        t = field.one
        for i in range(ring.n):
            if not a[i]:
                continue
            for j in range(i + 1, ring.n):
                if a[j]:
                    t = field.mul(t, field.pow(ring.q[i][j], -a[i] * a[j]))
        terms.append((a, field.mul(c, t)))
    return target.poly(terms)
