"""Independent oracles the test suite checks the engine against.

These deliberately avoid the code paths they verify: multiplication is
checked against letter-by-letter word rewriting, Groebner membership
against plain linear algebra on generator*monomial spans, and the
commutative instances against sympy's groebner/reduced.
"""

from __future__ import annotations

import itertools

from satlat.ring import QRing, Poly


# --- word rewriting ---------------------------------------------------------------


def _sort_word(word, ring):
    """Bubble-sort a letter sequence, collecting one q_ij per transposition."""
    field = ring.field
    w = list(word)
    scalar = field.one
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] > w[k + 1]:
                i, j = w[k + 1], w[k]
                scalar = field.mul(scalar, ring.q[i][j])
                w[k], w[k + 1] = w[k + 1], w[k]
                changed = True
    return scalar, tuple(w)


def _poly_to_words(f: Poly):
    out = []
    for mono, coeff in f.terms:
        word = []
        for i, e in enumerate(mono):
            word.extend([i] * e)
        out.append((tuple(word), coeff))
    return out


def _word_to_mono(word, n):
    mono = [0] * n
    for letter in word:
        mono[letter] += 1
    return tuple(mono)


def rewriting_mul(f: Poly, g: Poly) -> Poly:
    """Multiply two polynomials by concatenating words and rewriting."""
    ring = f.ring
    field = ring.field
    acc = []
    for wa, ca in _poly_to_words(f):
        for wb, cb in _poly_to_words(g):
            scalar, word = _sort_word(wa + wb, ring)
            acc.append((_word_to_mono(word, ring.n), field.mul(field.mul(ca, cb), scalar)))
    return ring.poly(acc)


def rewriting_product_of_words(letters, ring: QRing) -> Poly:
    """Normal form of a plain word (list of variable indices)."""
    scalar, word = _sort_word(tuple(letters), ring)
    return ring.monomial(_word_to_mono(word, ring.n), scalar)


# --- linear-algebra membership ----------------------------------------------------


def _monomials_up_to(n, degree):
    for total in range(degree + 1):
        for c in itertools.product(range(total + 1), repeat=n):
            if sum(c) == total:
                yield c


def linear_membership(gens, f: Poly, working_degree: int) -> bool:
    """Membership of f in the right ideal, via the span of g * x^c products.

    Sound for "yes" at any working degree; complete once the degree is
    large enough to cover some cofactor representation.
    """
    ring = f.ring
    field = ring.field
    from satlat.linalg import Echelon
    from satlat.ring import deglex_key, mul_poly

    ech = Echelon(field, deglex_key)
    for g in gens:
        if g.is_zero():
            continue
        gdeg = g.degree()
        for c in _monomials_up_to(ring.n, max(working_degree - gdeg, -1)):
            prod = mul_poly(g, ring.monomial(c), ring)
            if prod.degree() <= working_degree:
                ech.insert(dict(prod.terms))
    return ech.contains(dict(f.terms))


# --- sympy bridge for commutative instances ---------------------------------------


def sympy_ring(ring: QRing):
    import sympy

    assert ring.is_commutative()
    return sympy.symbols(" ".join(ring.names), seq=True)


def poly_to_sympy(f: Poly, syms):
    import sympy

    expr = sympy.Integer(0)
    for mono, coeff in f.terms:
        term = sympy.Rational(coeff) if not isinstance(coeff, int) else sympy.Integer(coeff)
        for s, e in zip(syms, mono):
            term *= s**e
        expr += term
    return sympy.expand(expr)


def sympy_to_poly(expr, ring: QRing, syms):
    import sympy

    poly = sympy.Poly(expr, *syms)
    acc = []
    for mono, coeff in poly.terms():
        acc.append((tuple(int(e) for e in mono), ring.field.of(sympy.Rational(coeff))))
    return ring.poly(acc)


def sympy_membership(gens, f: Poly) -> bool:
    """Exact commutative ideal membership via sympy's groebner + reduced."""
    import sympy

    ring = f.ring
    syms = sympy_ring(ring)
    basis = [poly_to_sympy(g, syms) for g in gens if not g.is_zero()]
    if not basis:
        return f.is_zero()
    gb = sympy.groebner(basis, *syms, order="grevlex")
    return gb.reduce(poly_to_sympy(f, syms))[1] == 0


def sympy_ideal_equal(gens_a, gens_b, ring: QRing) -> bool:
    """Two-way containment via sympy membership (commutative instances)."""
    return all(sympy_membership(gens_b, f) for f in gens_a) and all(
        sympy_membership(gens_a, f) for f in gens_b
    )
