"""Ideal calculus on handles: sum, product, power, intersection, colons,
membership, equality with certificates, comaximality.

A handle owns its generators and a cached reduced Groebner basis.  Every
handle carries an exactness certificate: ``Exact`` means the basis decides
membership outright; ``UpToDegree(D)`` means the handle's ideal agrees
with the intended ideal in all degrees <= D and is contained in it, so
degree-bounded queries are still certified and nothing is silently
approximated.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    DegreeBoundTooLow,
    ExactnessRequired,
    NotAMonomial,
    SideMismatch,
)
from .gb import (
    RightGB,
    adjoin_central_variable,
    buchberger_right,
    buchberger_two_sided,
    left_generators,
    truncate_ideal,
)
from .linalg import Echelon, kernel_of_columns
from .ring import (
    DiagAuto,
    Poly,
    QRing,
    commutation_scalar,
    deglex_key,
    mono_div,
    mono_divides,
    monomial_automorphism,
    mul_poly,
)


class Side(enum.Enum):
    RIGHT = "right"
    TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class Exactness:
    """Exact, or certified only up to a total degree."""

    degree: int | None = None  # None = exact

    @property
    def is_exact(self) -> bool:
        return self.degree is None

    def covers(self, degree: int) -> bool:
        return self.is_exact or degree <= self.degree

    def combine(self, other: "Exactness") -> "Exactness":
        if self.is_exact:
            return other
        if other.is_exact:
            return self
        return Exactness(min(self.degree, other.degree))

    def as_json(self):
        return "exact" if self.is_exact else {"upToDegree": self.degree}

    def __str__(self):
        return "exact" if self.is_exact else f"up to degree {self.degree}"


EXACT = Exactness()


def up_to_degree(d: int) -> Exactness:
    return Exactness(d)


class IdealHandle:
    """A right or two-sided ideal with cached reduced GB and a certificate."""

    def __init__(self, ring: QRing, side: Side, gens, exactness: Exactness = EXACT):
        self.ring = ring
        self.side = side
        self.gens = tuple(g for g in gens if not g.is_zero())
        self.exactness = exactness

    @cached_property
    def gb(self) -> RightGB:
        if self.side is Side.TWO_SIDED:
            return buchberger_two_sided(self.gens, ring=self.ring)
        return buchberger_right(self.gens, ring=self.ring)

    @property
    def basis(self):
        return self.gb.basis

    def is_zero_ideal(self) -> bool:
        return self.gb.is_zero_ideal()

    def is_unit_ideal(self) -> bool:
        return self.gb.is_unit_ideal()

    def is_proper(self) -> bool:
        return not self.is_unit_ideal()

    def contains(self, f: Poly) -> bool:
        return membership(f, self)

    def with_side(self, side: Side) -> "IdealHandle":
        return IdealHandle(self.ring, side, self.gens, self.exactness)

    def key(self):
        """Canonical identity of the underlying computed ideal."""
        return (self.ring, tuple((g.terms) for g in self.basis))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.gens[:6])
        if len(self.gens) > 6:
            gens += ", ..."
        return f"<{self.side.value} ideal ({gens}) [{self.exactness}]>"


def right_ideal(ring: QRing, gens, exactness: Exactness = EXACT) -> IdealHandle:
    return IdealHandle(ring, Side.RIGHT, gens, exactness)


def two_sided_ideal(ring: QRing, gens, exactness: Exactness = EXACT) -> IdealHandle:
    return IdealHandle(ring, Side.TWO_SIDED, gens, exactness)


def unit_ideal(ring: QRing) -> IdealHandle:
    return two_sided_ideal(ring, [ring.one])


def zero_ideal(ring: QRing) -> IdealHandle:
    return two_sided_ideal(ring, [])


def _check_same_ring(a: IdealHandle, b: IdealHandle):
    if a.ring != b.ring:
        raise SideMismatch("ideals live in different rings")


def _require_exact(*handles: IdealHandle):
    for h in handles:
        if not h.exactness.is_exact:
            raise ExactnessRequired(
                "this operation would not carry a sound certificate on truncated inputs"
            )


# --- arithmetic -------------------------------------------------------------------


def sum_ideals(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    """Ideal generated by the union; two-sided only when both inputs are."""
    _check_same_ring(a, b)
    _require_exact(a, b)
    side = Side.TWO_SIDED if (a.side is Side.TWO_SIDED and b.side is Side.TWO_SIDED) else Side.RIGHT
    return IdealHandle(a.ring, side, a.gens + b.gens)


def product(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    """The product ideal A*B for two-sided A.

    Generated by (left generators of A) * (right generators of B); the
    result absorbs left multiplication through A and right multiplication
    through B, hence is two-sided.
    """
    _check_same_ring(a, b)
    if a.side is not Side.TWO_SIDED:
        raise SideMismatch("the left factor of a product must be two-sided")
    _require_exact(a, b)
    lgens = left_generators(a.gb)
    gens = [mul_poly(g, k, a.ring) for g in lgens for k in b.gb.basis]
    return IdealHandle(a.ring, Side.TWO_SIDED, gens)


def power(a: IdealHandle, n: int) -> IdealHandle:
    """A^n with A^0 = R."""
    if n < 0:
        raise ValueError("negative ideal powers are undefined")
    if a.side is not Side.TWO_SIDED:
        raise SideMismatch("powers are defined for two-sided ideals")
    _require_exact(a)
    result = unit_ideal(a.ring)
    for _ in range(n):
        result = product(a, result)
    return result


def intersect(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    """Exact intersection via the central elimination variable.

    The right ideal t*A + (1-t)*B of the extension ring, eliminated by the
    block order, has its t-free basis elements generating A intersect B:
    substituting t=1 shows membership in A and t=0 membership in B.
    """
    _check_same_ring(a, b)
    _require_exact(a, b)
    ext = adjoin_central_variable(a.ring)
    t = ext.t()
    one_minus_t = ext.ring.one - t
    gens = [mul_poly(t, ext.embed(g), ext.ring) for g in a.gb.basis]
    gens += [mul_poly(one_minus_t, ext.embed(g), ext.ring) for g in b.gb.basis]
    gb = buchberger_right(gens, order=ext.order, ring=ext.ring)
    result_gens = [ext.project(g) for g in gb.basis if ext.is_t_free(g)]
    side = Side.TWO_SIDED if (a.side is Side.TWO_SIDED and b.side is Side.TWO_SIDED) else Side.RIGHT
    return IdealHandle(a.ring, side, result_gens)


def _left_divide_by_monomial(m, g: Poly) -> Poly:
    """The w with g = x^m * w; every monomial of g must be divisible by x^m."""
    ring = g.ring
    field = ring.field
    terms = []
    for a, c in g.terms:
        if not mono_divides(m, a):
            raise NotAMonomial(f"{g} is not left-divisible by the monomial")
        rest = mono_div(a, m)
        terms.append((rest, field.div(c, commutation_scalar(m, rest, ring))))
    return ring.poly(terms)


def colon_normal(k: IdealHandle, h: Poly) -> IdealHandle:
    """Exact colon {z : z*h in K} by a nonzero monomial h.

    Normal monomials satisfy z*h = h*psi^{-1}(z), so the colon is
    psi(h^{-1} * (K intersect hR)) computed exactly.
    """
    if h.is_zero() or len(h.terms) != 1:
        raise NotAMonomial("colon_normal needs a nonzero monomial")
    _require_exact(k)
    (m, coeff) = h.terms[0]
    if sum(m) == 0:
        return k  # dividing by a unit
    ring = k.ring
    h_ideal = right_ideal(ring, [ring.monomial(m)])
    inter = intersect(k, h_ideal)
    psi = monomial_automorphism(m, ring)
    gens = [psi.apply(_left_divide_by_monomial(m, g)) for g in inter.gb.basis]
    return IdealHandle(ring, k.side, gens)


def colon_truncated(k: IdealHandle, i: IdealHandle, degree: int) -> IdealHandle:
    """The colon {z : z*I <= K} solved degree-by-degree as a linear system.

    Unknowns are the monomials of degree <= degree; for each right
    generator h of I the map z -> NF(z*h) against K's basis must vanish.
    The kernel generates an ideal whose slice at ``degree`` equals the true
    colon's slice (and which is contained in the true colon), certified as
    UpToDegree(degree).
    """
    _check_same_ring(k, i)
    if i.side is not Side.TWO_SIDED:
        raise SideMismatch("colon divisor must be two-sided")
    _require_exact(i)
    hs = list(i.gb.basis)
    if not hs:  # colon by the zero ideal: every z qualifies
        return IdealHandle(k.ring, k.side, [k.ring.one], EXACT)
    if i.is_unit_ideal():
        return k
    maxdeg = max(h.degree() for h in hs)
    if not k.exactness.covers(degree + maxdeg):
        raise DegreeBoundTooLow(
            f"K is certified only {k.exactness}; need degree {degree + maxdeg}"
        )
    from .gb import monomials_up_to_degree

    ring = k.ring
    columns = monomials_up_to_degree(ring, degree)
    images = []
    for m in columns:
        xm = ring.monomial(m)
        row = {}
        for gi, h in enumerate(hs):
            nf = k.gb.normal_form(mul_poly(xm, h, ring))
            for mono, c in nf.terms:
                row[(gi, mono)] = c
        images.append(row)
    key = lambda label: (label[0], deglex_key(label[1]))
    kernel = kernel_of_columns(columns, images, ring.field, key)
    gens = [ring.poly(vec.items()) for vec in kernel]
    return IdealHandle(ring, k.side, gens, up_to_degree(degree))


def membership(f: Poly, k: IdealHandle) -> bool:
    """NF-based membership, exact within the handle's certificate."""
    if not k.exactness.covers(max(f.degree(), 0)):
        raise DegreeBoundTooLow(
            f"membership at degree {f.degree()} exceeds certificate ({k.exactness})"
        )
    return k.gb.contains(f)


@dataclass(frozen=True)
class EqualityVerdict:
    equal: bool
    exactness: Exactness
    witness: Poly | None = None
    witness_in: str | None = None  # "a" or "b"

    def as_json(self):
        out = {"equal": self.equal, "exactness": self.exactness.as_json()}
        if self.witness is not None:
            out["witness"] = str(self.witness)
            out["witnessIn"] = self.witness_in
        return out


def _min_witness(candidates):
    """Order-minimal witness for reproducibility."""
    return min(candidates, key=lambda t: (deglex_key(t[0].leading_term()[0]), str(t[0])))


def equal(a: IdealHandle, b: IdealHandle) -> EqualityVerdict:
    """Compare two handles; inequality carries a re-checkable witness."""
    _check_same_ring(a, b)
    if a.side is not b.side:
        raise SideMismatch("comparing ideals of different sides")
    return equal_as_sets(a, b)


def equal_as_sets(a: IdealHandle, b: IdealHandle) -> EqualityVerdict:
    """Underlying-ideal comparison regardless of side marks.

    Both kinds of completed basis right-generate the ideal they represent
    (a two-sided completion is in particular a right GB), so comparing the
    reduced bases or their degree slices compares the ideals as sets.  Used
    where a chain legitimately mixes a right term with two-sided ones.
    """
    _check_same_ring(a, b)
    if a.exactness.is_exact and b.exactness.is_exact:
        if a.gb.basis == b.gb.basis:
            return EqualityVerdict(True, EXACT)
        candidates = [(g, "a") for g in a.gb.basis if not b.gb.contains(g)]
        candidates += [(g, "b") for g in b.gb.basis if not a.gb.contains(g)]
        witness, side = _min_witness(candidates)
        return EqualityVerdict(False, EXACT, witness, side)
    bound = min(
        d for d in (a.exactness.degree, b.exactness.degree) if d is not None
    )
    slice_a = truncate_ideal(a.gb, bound)
    slice_b = truncate_ideal(b.gb, bound)
    ech_a = Echelon(a.ring.field, deglex_key)
    for f in slice_a:
        ech_a.insert(dict(f.terms))
    ech_b = Echelon(a.ring.field, deglex_key)
    for f in slice_b:
        ech_b.insert(dict(f.terms))
    candidates = [(f, "a") for f in slice_a if not ech_b.contains(dict(f.terms))]
    candidates += [(f, "b") for f in slice_b if not ech_a.contains(dict(f.terms))]
    if not candidates:
        return EqualityVerdict(True, up_to_degree(bound))
    witness, side = _min_witness(candidates)
    return EqualityVerdict(False, up_to_degree(bound), witness, side)


def is_comaximal(a: IdealHandle, b: IdealHandle) -> bool:
    """1 in A + B."""
    _check_same_ring(a, b)
    _require_exact(a, b)
    return sum_ideals(a.with_side(Side.TWO_SIDED), b.with_side(Side.TWO_SIDED)).is_unit_ideal()


def apply_automorphism_to_ideal(psi: DiagAuto, k: IdealHandle) -> IdealHandle:
    """Image ideal psi(K); diagonal automorphisms preserve sides."""
    return IdealHandle(k.ring, k.side, [psi.apply(g) for g in k.gens], k.exactness)
