"""Groebner machinery for right and two-sided ideals in a quantum affine space.

Monomials multiply to scalar multiples of monomials, so leading-monomial
divisibility is componentwise on exponents and one-sided Buchberger
completion works exactly as in the commutative case, with commutation
scalars threaded through every reduction step.

Two-sided ideals are handled by interleaving right completion with
left-multiplication closure: once the right ideal generated by the basis
is stable under left multiplication by every variable, it equals the
two-sided ideal generated by the source generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import SpecError
from .linalg import Echelon
from .ring import (
    Monomial,
    Poly,
    QRing,
    commutation_scalar,
    deglex_key,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    mul_poly,
    opposite_map,
    opposite_ring,
)


class MonomialOrder:
    """Total multiplicative monomial order exposed through a sort key."""

    name = "order"

    def key(self, mono: Monomial):
        raise NotImplementedError

    def is_degree_compatible(self) -> bool:
        raise NotImplementedError


class DegLex(MonomialOrder):
    """Degree first, then lexicographic with x_1 < x_2 < ... < x_n."""

    name = "deglex"

    def key(self, mono: Monomial):
        return deglex_key(mono)

    def is_degree_compatible(self):
        return True

    def __eq__(self, other):
        return isinstance(other, DegLex)

    def __hash__(self):
        return hash("deglex")


class BlockElim(MonomialOrder):
    """Eliminated variable first, DegLex inside the remaining block."""

    name = "blockelim"

    def __init__(self, elim_index: int):
        self.elim_index = elim_index

    def key(self, mono: Monomial):
        rest = mono[: self.elim_index] + mono[self.elim_index + 1 :]
        return (mono[self.elim_index], sum(rest), tuple(reversed(rest)))

    def is_degree_compatible(self):
        return False

    def __eq__(self, other):
        return isinstance(other, BlockElim) and other.elim_index == self.elim_index

    def __hash__(self):
        return hash(("blockelim", self.elim_index))


DEGLEX = DegLex()


def leading_monomial(f: Poly, order: MonomialOrder) -> Monomial:
    return f.leading_term(order.key)[0]


def normal_form_right(f: Poly, basis: Sequence[Poly], order: MonomialOrder = DEGLEX) -> Poly:
    """Right-division remainder of f by the basis.

    Every reduction step subtracts g * x^c * scalar, so f - result lies in
    the right ideal generated by the basis; no remainder monomial is
    divisible by any basis leading monomial (full tail reduction).
    """
    ring = f.ring
    field = ring.field
    if not basis:
        return f
    lms = [(leading_monomial(g, order), g) for g in basis if not g.is_zero()]
    remainder = {}
    work = dict(f.terms)
    while work:
        mono = max(work, key=order.key)
        coeff = work[mono]
        if field.is_zero(coeff):
            del work[mono]
            continue
        hit = None
        for lm, g in lms:
            if mono_divides(lm, mono):
                hit = (lm, g)
                break
        if hit is None:
            remainder[mono] = coeff
            del work[mono]
            continue
        lm, g = hit
        c = mono_div(mono, lm)
        # g * x^c has leading term L(lm, c) * lc(g) * x^mono, cancelling work[mono]
        lam = commutation_scalar(lm, c, ring)
        lc = g.leading_term(order.key)[1]
        factor = field.div(coeff, field.mul(lam, lc))
        for m2, c2 in g.terms:
            prod_m = mono_mul(m2, c)
            prod_c = field.mul(c2, commutation_scalar(m2, c, ring))
            v = field.sub(work.get(prod_m, field.zero), field.mul(factor, prod_c))
            if field.is_zero(v):
                work.pop(prod_m, None)
            else:
                work[prod_m] = v
    return ring.poly(remainder.items())


@dataclass(frozen=True)
class RightGB:
    """Completed (and reduced) right Groebner basis."""

    ring: QRing
    order: MonomialOrder
    basis: tuple
    gens: tuple
    reduced: bool = True

    def normal_form(self, f: Poly) -> Poly:
        return normal_form_right(f, self.basis, self.order)

    def contains(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    def is_zero_ideal(self) -> bool:
        return not self.basis

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.basis)

    def leading_monomials(self):
        return [leading_monomial(g, self.order) for g in self.basis]


@dataclass(frozen=True)
class TwoSidedGB(RightGB):
    """Right GB whose right ideal is certified stable under left multiplication."""

    left_stable: bool = True


def _interreduce(basis, order: MonomialOrder):
    """Fully interreduced monic basis generating the same right ideal.

    Safe on arbitrary inputs (not just completed bases): elements are
    reduced against each other until stable, so nothing is discarded on
    leading-monomial evidence alone.  On a completed GB this yields the
    canonical reduced basis.
    """
    work = [g.monic(order.key) for g in basis if g is not None and not g.is_zero()]
    changed = True
    while changed:
        changed = False
        work.sort(key=lambda g: order.key(leading_monomial(g, order)))
        for i in range(len(work)):
            others = work[:i] + work[i + 1 :]
            r = normal_form_right(work[i], others, order)
            if r.is_zero():
                work.pop(i)
                changed = True
                break
            r = r.monic(order.key)
            if r != work[i]:
                work[i] = r
                changed = True
                break
    work.sort(key=lambda g: order.key(leading_monomial(g, order)))
    return tuple(work)


def _spoly(g1: Poly, g2: Poly, order: MonomialOrder) -> Poly:
    ring = g1.ring
    field = ring.field
    a = leading_monomial(g1, order)
    b = leading_monomial(g2, order)
    c = mono_lcm(a, b)
    ca, cb = mono_div(c, a), mono_div(c, b)
    lam_a = field.mul(commutation_scalar(a, ca, ring), g1.leading_term(order.key)[1])
    lam_b = field.mul(commutation_scalar(b, cb, ring), g2.leading_term(order.key)[1])
    xa = ring.monomial(ca)
    xb = ring.monomial(cb)
    return mul_poly(g1, xa, ring).scale(field.inv(lam_a)) - mul_poly(
        g2, xb, ring
    ).scale(field.inv(lam_b))


def buchberger_right(
    gens: Sequence[Poly], order: MonomialOrder = DEGLEX, ring: QRing | None = None
) -> RightGB:
    """Completed reduced right Groebner basis of the right ideal sum(g*R).

    Deterministic: the pair queue is ordered by lcm degree then the lcm's
    order key, so identical inputs give byte-identical bases.  Termination
    is Dickson's lemma on leading exponents.
    """
    gens = [g for g in gens if g is not None]
    if ring is None:
        if not gens:
            raise SpecError("need a ring for an empty generating set")
        ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise SpecError("generators must live in one ring")
    basis = [g.monic(order.key) for g in gens if not g.is_zero()]
    basis = list(_interreduce(basis, order))

    def pair_key(i, j):
        lcm = mono_lcm(
            leading_monomial(basis[i], order), leading_monomial(basis[j], order)
        )
        return (mono_deg(lcm), order.key(lcm), i, j)

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    while pairs:
        i, j = min(pairs, key=lambda p: pair_key(*p))
        pairs.remove((i, j))
        s = _spoly(basis[i], basis[j], order)
        r = normal_form_right(s, basis, order)
        if r.is_zero():
            continue
        r = r.monic(order.key)
        basis.append(r)
        k = len(basis) - 1
        pairs.update((i2, k) for i2 in range(k))
    reduced = _interreduce(basis, order)
    return RightGB(ring=ring, order=order, basis=reduced, gens=tuple(gens))


def buchberger_two_sided(
    gens: Sequence[Poly], ring: QRing | None = None, order: MonomialOrder = DEGLEX
) -> TwoSidedGB:
    """Two-sided completion: right-complete, then adjoin x_i*g until left-stable.

    Each adjunction strictly enlarges the right ideal, so the loop
    terminates by the ascending chain condition (the ring is noetherian).
    The resulting basis right-generates the two-sided ideal generated by
    the source generators.
    """
    gens = [g for g in gens if g is not None]
    if ring is None:
        if not gens:
            raise SpecError("need a ring for an empty generating set")
        ring = gens[0].ring
    current = list(gens)
    while True:
        rgb = buchberger_right(current, order, ring)
        new = []
        for g in rgb.basis:
            for i in range(ring.n):
                prod = mul_poly(ring.var(i), g, ring)
                r = rgb.normal_form(prod)
                if not r.is_zero():
                    new.append(r)
        if not new:
            return TwoSidedGB(
                ring=ring,
                order=order,
                basis=rgb.basis,
                gens=tuple(gens),
                left_stable=True,
            )
        current = list(rgb.basis) + new


def verify_two_sided(gb: TwoSidedGB) -> bool:
    """Re-check the closure certificate: NF(x_i*g) = 0 and NF(g*x_i) = 0."""
    ring = gb.ring
    for g in gb.basis:
        for i in range(ring.n):
            if not gb.contains(mul_poly(ring.var(i), g, ring)):
                return False
            if not gb.contains(mul_poly(g, ring.var(i), ring)):
                return False
    return True


def left_generators(gb: TwoSidedGB) -> list:
    """A set that left-generates the two-sided ideal (I = sum R*g_i).

    Mirrors the computation through the opposite ring: the twisted
    anti-isomorphism sends I to a two-sided ideal of the opposite space,
    whose right basis pulls back to left generators of I.
    """
    ring = gb.ring
    op = opposite_ring(ring)
    images = [opposite_map(g, op) for g in gb.basis]
    op_gb = buchberger_two_sided(images, op)
    return [opposite_map(h, ring) for h in op_gb.basis]


def truncate_ideal(gb: RightGB, degree: int):
    """Canonical spanning set of (ideal) intersect R_{<= degree}.

    Exactness rests on the degree-compatible order: any ideal member of
    degree <= D reduces to zero through multiples g * x^c of degree <= D,
    so the listed products span the full degree-D slice.
    """
    if not gb.order.is_degree_compatible():
        raise SpecError("truncation requires a degree-compatible order")
    ring = gb.ring
    ech = Echelon(ring.field, deglex_key)
    for g in gb.basis:
        gdeg = g.degree()
        if gdeg > degree:
            continue
        for c in _monomials_up_to(ring.n, degree - gdeg):
            prod = mul_poly(g, ring.monomial(c), ring)
            ech.insert(dict(prod.terms))
    return [ring.poly(row.items()) for row in ech.basis()]


def _monomials_up_to(n: int, degree: int):
    """All exponent tuples of total degree <= degree, deterministic order."""
    if degree < 0:
        return
    stack = [((), degree)]
    while stack:
        prefix, rem = stack.pop()
        if len(prefix) == n:
            yield prefix
            continue
        for e in range(rem, -1, -1):
            stack.append((prefix + (e,), rem - e))


def monomials_up_to_degree(ring: QRing, degree: int):
    """Monomial exponent tuples of degree <= degree, sorted descending in DegLex."""
    monos = list(_monomials_up_to(ring.n, degree))
    monos.sort(key=deglex_key, reverse=True)
    return monos


@dataclass(frozen=True)
class CentralExtension:
    """A quantum space with one extra central variable t, ordered to eliminate it."""

    base: QRing
    ring: QRing
    order: BlockElim
    t_index: int

    def embed(self, f: Poly) -> Poly:
        return self.ring.poly(((m + (0,), c) for m, c in f.terms))

    def t(self) -> Poly:
        return self.ring.var(self.t_index)

    def is_t_free(self, f: Poly) -> bool:
        return all(m[self.t_index] == 0 for m, _ in f.terms)

    def project(self, f: Poly) -> Poly:
        """Drop the t coordinate of a t-free polynomial."""
        if not self.is_t_free(f):
            raise SpecError("polynomial still involves the central variable")
        return self.base.poly(((m[: self.t_index], c) for m, c in f.terms))

    def substitute_t(self, f: Poly, value) -> Poly:
        """Ring homomorphism t -> value (value a scalar); t is central."""
        field = self.base.field
        value = field.of(value)
        acc = []
        for m, c in f.terms:
            k = m[self.t_index]
            coeff = field.mul(c, field.pow(value, k)) if k else c
            acc.append((m[: self.t_index], coeff))
        return self.base.poly(acc)


def adjoin_central_variable(ring: QRing) -> CentralExtension:
    """Extend by a central variable t with an elimination order (t largest)."""
    t_name = "t"
    while t_name in ring.names:
        t_name += "_"
    names = ring.names + (t_name,)
    q = {}
    for i in range(ring.n):
        for j in range(i + 1, ring.n):
            q[(i, j)] = ring.q[i][j]
        # q[(i, n)] = 1: t is central
    ext = QRing(names, ring.field, q)
    return CentralExtension(base=ring, ring=ext, order=BlockElim(ring.n), t_index=ring.n)
